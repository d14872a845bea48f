import numpy as np

from scipy import ndimage

from bd.labelgen import SemanticClass

BLOB_RADIUS_RANGE = (3, 8)
STREAK_LENGTH_RANGE = (20, 60)
STREAK_WIDTH_RANGE = (2, 4)
BLOB_EDGE_PX = 2
# Share of the blob rim covered by its edge arc.
BLOB_EDGE_ARC_RANGE = (0.0, 0.25)


def merge_contacts(
    labels: np.ndarray,
    rng: np.random.Generator,
    merge_probability: float,
    contact_distance_px: int,
) -> np.ndarray:
    """
    Relabels edge shared between touching berries (EDGE pixels farther than
    `contact_distance_px` from any background) as BERRY, one decision per
    8-connected contact region.
    """
    background = (labels == SemanticClass.BACKGROUND).astype(np.uint8)
    size = 2 * contact_distance_px + 1
    # Outside of the patch counts as background so cut berries keep their edge.
    near_background = ndimage.maximum_filter(
        background, size=size, mode="constant", cval=1
    )
    contact = (labels == SemanticClass.EDGE) & (near_background == 0)

    regions, n = ndimage.label(contact, structure=np.ones((3, 3), dtype=bool))
    draws = rng.random(n)
    if n == 0 or merge_probability <= 0.0:
        return labels

    merged = np.flatnonzero(draws < merge_probability) + 1
    labels = labels.copy()
    labels[np.isin(regions, merged)] = SemanticClass.BERRY
    return labels


def flip_pixels(
    labels: np.ndarray, rng: np.random.Generator, flip_probability: float
) -> np.ndarray:
    """Each pixel is resampled uniformly from the two other classes."""
    flip = rng.random(labels.shape) < flip_probability
    shift = rng.integers(1, 3, size=labels.shape, dtype=np.uint8)
    labels = labels.copy()
    labels[flip] = (labels[flip] + shift[flip]) % 3
    return labels


def stamp_blob(
    labels: np.ndarray,
    center: tuple[float, float],
    radius: int,
    arc_start: float,
    arc_fraction: float,
) -> np.ndarray:
    """
    Paints a BERRY disc over the BACKGROUND pixels of `labels`. Its rim
    (`BLOB_EDGE_PX` wide) is EDGE along an arc of `arc_fraction` of the full
    turn starting at `arc_start` radians, so the edge never closes around
    the blob the way it does around a labeled berry.
    """
    height, width = labels.shape
    yy, xx = np.ogrid[:height, :width]
    cx, cy = center
    dx, dy = xx - cx, yy - cy
    d2 = dx**2 + dy**2

    disc = (d2 <= radius**2) & (labels == SemanticClass.BACKGROUND)
    rim = d2 > (radius - BLOB_EDGE_PX) ** 2
    on_arc = np.mod(np.arctan2(dy, dx) - arc_start, 2 * np.pi) < (
        2 * np.pi * arc_fraction
    )

    labels = labels.copy()
    labels[disc] = SemanticClass.BERRY
    labels[disc & rim & on_arc] = SemanticClass.EDGE
    return labels


def stamp_blobs(
    labels: np.ndarray, rng: np.random.Generator, false_blob_rate: float
) -> np.ndarray:
    """Poisson-many false berries on the background, see `stamp_blob`."""
    height, width = labels.shape

    for _ in range(rng.poisson(false_blob_rate)):
        radius = int(rng.integers(BLOB_RADIUS_RANGE[0], BLOB_RADIUS_RANGE[1] + 1))
        center = (float(rng.integers(0, width)), float(rng.integers(0, height)))
        arc_start = rng.uniform(0.0, 2 * np.pi)
        arc_fraction = rng.uniform(*BLOB_EDGE_ARC_RANGE)
        labels = stamp_blob(labels, center, radius, arc_start, arc_fraction)

    return labels


def stamp_streaks(
    labels: np.ndarray, rng: np.random.Generator, false_streak_rate: float
) -> np.ndarray:
    """Poisson-many thin BERRY bars without an edge, like leaf borders."""
    height, width = labels.shape
    yy, xx = np.ogrid[:height, :width]
    labels = labels.copy()

    for _ in range(rng.poisson(false_streak_rate)):
        length = rng.integers(STREAK_LENGTH_RANGE[0], STREAK_LENGTH_RANGE[1] + 1)
        thickness = rng.integers(STREAK_WIDTH_RANGE[0], STREAK_WIDTH_RANGE[1] + 1)
        theta = rng.uniform(0.0, np.pi)
        cx, cy = rng.uniform(0, width), rng.uniform(0, height)

        dx, dy = xx - cx, yy - cy
        along = dx * np.cos(theta) + dy * np.sin(theta)
        across = -dx * np.sin(theta) + dy * np.cos(theta)
        bar = (np.abs(along) <= length / 2) & (np.abs(across) < thickness / 2)
        labels[bar] = SemanticClass.BERRY

    return labels


def corrupt_patch(
    labels: np.ndarray,
    rng: np.random.Generator,
    flip_probability: float = 0.0,
    false_blob_rate: float = 0.0,
    false_streak_rate: float = 0.0,
    merge_probability: float = 0.0,
    contact_distance_px: int = 2,
) -> np.ndarray:
    """
    Applies, in order, contact merging, per-pixel flips, false blobs and
    false streaks to a patch of class labels. With every rate at zero the
    patch is returned unchanged.
    """
    labels = merge_contacts(labels, rng, merge_probability, contact_distance_px)
    labels = flip_pixels(labels, rng, flip_probability)
    labels = stamp_blobs(labels, rng, false_blob_rate)
    labels = stamp_streaks(labels, rng, false_streak_rate)
    return labels
