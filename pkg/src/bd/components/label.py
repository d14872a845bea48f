import logging
import numpy as np

from scipy import ndimage

from bd.annotation import relabel_raster_order
from bd.labelgen import ClassMask, SemanticClass

from .geometry import axes_from_coords, edge_surround_from_coords
from .models import BerryComponent, ComponentConfig

logger = logging.getLogger(__name__)

FOUR_CONNECTIVITY = ndimage.generate_binary_structure(2, 1)


def measure_component(
    component_id: int, coords: np.ndarray, mask: ClassMask
) -> BerryComponent:
    """Builds a component with its area, centroid, axes and edge surround."""
    major, minor = axes_from_coords(coords)
    return BerryComponent(
        id=component_id,
        coords=coords,
        area_px=len(coords),
        centroid=(float(coords[:, 1].mean()), float(coords[:, 0].mean())),
        major_semi_axis_px=major,
        minor_semi_axis_px=minor,
        edge_surround_fraction=edge_surround_from_coords(coords, mask.labels),
    )


def label_components(mask: ClassMask, cfg: ComponentConfig) -> list[BerryComponent]:
    """
    Maximal 4-connected BERRY regions with at least `min_component_px`
    pixels; EDGE and BACKGROUND pixels never belong to a component.
    Ids are dense in raster order of each region's first pixel.
    """
    berry = mask.labels == SemanticClass.BERRY
    labeled, n = ndimage.label(berry, structure=FOUR_CONNECTIVITY)
    if n == 0:
        return []

    areas = np.bincount(labeled.ravel())
    keep = areas >= cfg.min_component_px
    keep[0] = False
    logger.debug(
        "%d berry regions, %d below %d px discarded",
        n,
        n - int(keep.sum()),
        cfg.min_component_px,
    )

    labeled = relabel_raster_order(np.where(keep[labeled], labeled, 0))

    components = []
    for index, window in enumerate(ndimage.find_objects(labeled), start=1):
        if window is None:
            continue
        rows, cols = np.nonzero(labeled[window] == index)
        coords = np.stack([rows + window[0].start, cols + window[1].start], axis=1)
        components.append(measure_component(index, coords, mask))

    return components


def component_label_map(
    comps: list[BerryComponent], shape: tuple[int, int]
) -> np.ndarray:
    """Raster holding each component's id on its pixels, 0 elsewhere."""
    labels = np.zeros(shape, dtype=np.int64)
    for comp in comps:
        labels[comp.rows, comp.cols] = comp.id
    return labels
