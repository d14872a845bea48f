import logging
import math
import numpy as np

from scipy import ndimage
from typing_extensions import NamedTuple

from bd.annotation import DotAnnotations, InstanceMask, relabel_raster_order
from bd.errors import SceneGenerationError

from .models import Scene, SceneConfig
from .render import render_image

logger = logging.getLogger(__name__)

# Berries placed apart keep at least one background pixel between them.
APART_GAP_PX = 2
TOUCH_DISTANCE_RANGE = (0.6, 1.0)


class Disc(NamedTuple):
    x: int
    y: int
    r: int


def _inside(x: int, y: int, r: int, cfg: SceneConfig) -> bool:
    # Whole disc inside the image.
    return r <= x < cfg.image_w - r and r <= y < cfg.image_h - r


def _apart(x: int, y: int, r: int, discs: list[Disc]) -> bool:
    return all(
        (x - d.x) ** 2 + (y - d.y) ** 2 >= (r + d.r + APART_GAP_PX) ** 2
        for d in discs
    )


def _place_touching(
    rng: np.random.Generator, cfg: SceneConfig, r: int, neighbors: list[Disc]
) -> Disc | None:
    low, high = TOUCH_DISTANCE_RANGE
    for _ in range(cfg.max_retries):
        anchor = neighbors[int(rng.integers(len(neighbors)))]
        distance = rng.uniform(low * (r + anchor.r), high * (r + anchor.r))
        angle = rng.uniform(0.0, 2.0 * math.pi)
        x = anchor.x + int(round(distance * math.cos(angle)))
        y = anchor.y + int(round(distance * math.sin(angle)))
        if _inside(x, y, r, cfg):
            return Disc(x, y, r)
    return None


def _place_apart(
    rng: np.random.Generator,
    cfg: SceneConfig,
    r: int,
    center: tuple[float, float],
    discs: list[Disc],
) -> Disc:
    for _ in range(cfg.max_retries):
        x = int(round(rng.normal(center[0], cfg.cluster_spread_px)))
        y = int(round(rng.normal(center[1], cfg.cluster_spread_px)))
        if _inside(x, y, r, cfg) and _apart(x, y, r, discs):
            return Disc(x, y, r)

    # Crowded cluster, anywhere in the image will do.
    if 2 * r + 1 > min(cfg.image_w, cfg.image_h):
        raise SceneGenerationError(
            f"A berry of radius {r} px does not fit a "
            f"{cfg.image_w}x{cfg.image_h} image"
        )
    for _ in range(cfg.max_retries):
        x = int(rng.integers(r, cfg.image_w - r))
        y = int(rng.integers(r, cfg.image_h - r))
        if _apart(x, y, r, discs):
            return Disc(x, y, r)

    raise SceneGenerationError(
        f"Could not place a berry of radius {r} px at least {APART_GAP_PX} px "
        f"away from the {len(discs)} berries already in the "
        f"{cfg.image_w}x{cfg.image_h} image (seed {cfg.seed}, "
        f"{2 * cfg.max_retries} attempts)"
    )


def place_discs(cfg: SceneConfig, rng: np.random.Generator) -> list[Disc]:
    """Disc centers and radii in painting order, later discs occlude earlier."""
    discs: list[Disc] = []
    for _ in range(cfg.n_clusters):
        center = (rng.uniform(0, cfg.image_w), rng.uniform(0, cfg.image_h))
        low, high = cfg.berries_per_cluster
        n_berries = int(rng.integers(low, high + 1))
        cluster: list[Disc] = []

        for _ in range(n_berries):
            r = int(rng.integers(cfg.radius_px[0], cfg.radius_px[1] + 1))
            touching = rng.random() < cfg.touch_probability

            disc = None
            if touching and cluster:
                disc = _place_touching(rng, cfg, r, cluster)
            if disc is None:
                disc = _place_apart(rng, cfg, r, center, discs)

            cluster.append(disc)
            discs.append(disc)
    return discs


def rasterize(discs: list[Disc], width: int, height: int) -> np.ndarray:
    """Paints disc k (1-based) over everything painted before it."""
    ids = np.zeros((height, width), dtype=np.int64)
    for k, disc in enumerate(discs, start=1):
        y0, y1 = max(disc.y - disc.r, 0), min(disc.y + disc.r + 1, height)
        x0, x1 = max(disc.x - disc.r, 0), min(disc.x + disc.r + 1, width)
        yy, xx = np.ogrid[y0:y1, x0:x1]
        inside = (yy - disc.y) ** 2 + (xx - disc.x) ** 2 <= disc.r**2
        ids[y0:y1, x0:x1][inside] = k
    return ids


def keep_visible(ids: np.ndarray, min_visible_px: int) -> np.ndarray:
    """
    Keeps the largest 4-connected piece of every instance and drops
    instances left with fewer than `min_visible_px` pixels. Surviving
    instances are renumbered in raster order.
    """
    ids = ids.copy()
    for k, window in enumerate(ndimage.find_objects(ids), start=1):
        if window is None:
            continue
        crop = ids[window] == k
        pieces, n = ndimage.label(crop)
        sizes = np.bincount(pieces.ravel(), minlength=n + 1)
        sizes[0] = 0
        largest = int(np.argmax(sizes))
        drop = crop & (pieces != largest)
        if sizes[largest] < min_visible_px:
            drop = crop
        ids[window][drop] = 0
    return relabel_raster_order(ids)


def dot_for(crop: np.ndarray) -> tuple[int, int]:
    """
    (x, y) of the rounded centroid of `crop`, or of its pixel farthest from
    the outside when the centroid is not part of it.
    """
    rows, cols = np.nonzero(crop)
    row = int(math.floor(rows.mean() + 0.5))
    col = int(math.floor(cols.mean() + 0.5))
    if crop[row, col]:
        return col, row

    depth = ndimage.distance_transform_edt(np.pad(crop, 1))[1:-1, 1:-1]
    row, col = np.unravel_index(int(np.argmax(depth)), depth.shape)
    return int(col), int(row)


def place_dots(ids: np.ndarray) -> DotAnnotations:
    markers = []
    for k, window in enumerate(ndimage.find_objects(ids), start=1):
        if window is None:
            continue
        x, y = dot_for(ids[window] == k)
        markers.append((x + window[1].start, y + window[0].start))
    return DotAnnotations(markers=markers)


def generate_scene(cfg: SceneConfig) -> Scene:
    """
    Places clustered disc berries, resolves occlusion by painting order and
    marks every visible berry with one dot. Same seed, same scene.
    """
    rng = np.random.default_rng(cfg.seed)
    discs = place_discs(cfg, rng)
    ids = rasterize(discs, cfg.image_w, cfg.image_h)
    ids = keep_visible(ids, cfg.min_visible_px)

    instances = InstanceMask(ids=ids)
    dots = place_dots(ids)
    logger.debug(
        "Scene seed %d: %d discs placed, %d visible berries",
        cfg.seed,
        len(discs),
        len(dots),
    )
    return Scene(
        config=cfg, instances=instances, dots=dots, image=render_image(instances)
    )
