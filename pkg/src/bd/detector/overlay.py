import imageio.v3 as iio
import numpy as np

from pathlib import Path
from skimage.draw import rectangle_perimeter

from bd.annotation import DotAnnotations
from bd.components import BerryComponent, component_label_map
from bd.labelgen import ClassMask, SemanticClass

KEPT_COLOR = (0, 200, 0)
REJECTED_COLOR = (0, 0, 0)
MISSED_COLOR = (255, 255, 0)
MISSED_BOX_HALF_PX = 4

# Gray levels of the mask preview used when no scene image exists.
PREVIEW_LEVELS = {
    SemanticClass.BACKGROUND: 0,
    SemanticClass.BERRY: 170,
    SemanticClass.EDGE: 85,
}


def load_grayscale(path: Path) -> np.ndarray:
    image = iio.imread(path)
    if image.ndim == 3:
        image = image[:, :, :3].mean(axis=2)
    return np.rint(image).astype(np.uint8)


def mask_preview(mask: ClassMask) -> np.ndarray:
    lut = np.zeros(len(SemanticClass), dtype=np.uint8)
    for semantic_class, level in PREVIEW_LEVELS.items():
        lut[semantic_class] = level
    return lut[mask.labels]


def render_overlay(
    base: np.ndarray,
    kept: list[BerryComponent],
    rejected: list[BerryComponent],
    dots: DotAnnotations | None = None,
) -> np.ndarray:
    """
    RGB overlay on a grayscale base: kept components green, rejected
    components black, markers missed by every kept component boxed yellow.
    """
    overlay = np.repeat(base[:, :, np.newaxis], 3, axis=2).astype(np.uint8)

    for comp in rejected:
        overlay[comp.rows, comp.cols] = REJECTED_COLOR
    for comp in kept:
        overlay[comp.rows, comp.cols] = KEPT_COLOR

    if dots is None or len(dots) == 0:
        return overlay

    label_map = component_label_map(kept, base.shape)
    for x, y in dots.markers:
        if label_map[y, x] > 0:
            continue
        rr, cc = rectangle_perimeter(
            (y - MISSED_BOX_HALF_PX, x - MISSED_BOX_HALF_PX),
            (y + MISSED_BOX_HALF_PX, x + MISSED_BOX_HALF_PX),
            shape=base.shape,
            clip=True,
        )
        overlay[rr, cc] = MISSED_COLOR
    return overlay
