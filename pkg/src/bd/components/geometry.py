import numpy as np

from scipy import ndimage
from skimage.measure import moments_central

from bd.labelgen import ClassMask, SemanticClass

from .models import BerryComponent

EIGHT_NEIGHBORHOOD = np.ones((3, 3), dtype=bool)


def _region(
    coords: np.ndarray, pad: int = 0, shape: tuple[int, int] | None = None
) -> tuple[np.ndarray, int, int]:
    rows, cols = coords[:, 0], coords[:, 1]
    top, left = int(rows.min()) - pad, int(cols.min()) - pad
    bottom, right = int(rows.max()) + pad + 1, int(cols.max()) + pad + 1
    if shape is not None:
        top, left = max(top, 0), max(left, 0)
        bottom, right = min(bottom, shape[0]), min(right, shape[1])

    region = np.zeros((bottom - top, right - left), dtype=bool)
    region[rows - top, cols - left] = True
    return region, top, left


def axes_from_coords(coords: np.ndarray) -> tuple[float, float]:
    """
    Semi-axes of the ellipse with the same second central moments as the
    pixel set, each pixel a unit point mass at its center.
    """
    region, _, _ = _region(coords)
    mu = moments_central(region.astype(np.float64), order=2)
    area = mu[0, 0]

    # Closed form eigenvalues of the normalized inertia tensor.
    mean = (mu[2, 0] + mu[0, 2]) / (2.0 * area)
    spread = np.sqrt(4.0 * mu[1, 1] ** 2 + (mu[2, 0] - mu[0, 2]) ** 2) / (2.0 * area)
    major = max(mean + spread, 0.0)
    # Product of the eigenvalues keeps collinear sets at exactly zero.
    det = (mu[2, 0] * mu[0, 2] - mu[1, 1] ** 2) / area**2
    if spread == 0.0:
        minor = major
    elif major > 0.0:
        minor = min(max(det / major, 0.0), major)
    else:
        minor = 0.0
    return 2.0 * float(np.sqrt(major)), 2.0 * float(np.sqrt(minor))


def compute_axes(comp: BerryComponent) -> tuple[float, float]:
    """(major, minor) semi-axes, both 0 for a single pixel."""
    return axes_from_coords(comp.coords)


def edge_surround_from_coords(coords: np.ndarray, labels: np.ndarray) -> float:
    region, top, left = _region(coords, pad=1, shape=labels.shape)
    ring = ndimage.binary_dilation(region, structure=EIGHT_NEIGHBORHOOD) & ~region

    n_ring = int(ring.sum())
    if n_ring == 0:
        return 0.0

    window = labels[top : top + region.shape[0], left : left + region.shape[1]]
    return int((window[ring] == SemanticClass.EDGE).sum()) / n_ring


def edge_surround(comp: BerryComponent, mask: ClassMask) -> float:
    """
    Share of the component's outer 8-neighbour ring (clipped at the image
    border) labeled EDGE; 0 when the ring is empty.
    """
    return edge_surround_from_coords(comp.coords, mask.labels)
