import numpy as np

from bd.annotation import DotAnnotations
from bd.components import BerryComponent, component_label_map

from .models import DetectionReport


def _shape_covering(
    comps: list[BerryComponent], dots: DotAnnotations
) -> tuple[int, int]:
    height, width = 1, 1
    for comp in comps:
        height = max(height, int(comp.rows.max()) + 1)
        width = max(width, int(comp.cols.max()) + 1)
    for x, y in dots.markers:
        height, width = max(height, y + 1), max(width, x + 1)
    return height, width


def marker_hits(
    label_map: np.ndarray, dots: DotAnnotations, tolerance_px: int = 0
) -> np.ndarray:
    """
    Component id hit by each marker (0 for none). With a tolerance, a
    marker that misses every component takes the lowest component id within
    that chessboard distance.
    """
    markers = dots.as_array()
    if len(markers) == 0:
        return np.zeros(0, dtype=np.int64)

    xs, ys = markers[:, 0], markers[:, 1]
    hits = label_map[ys, xs].copy()
    if tolerance_px <= 0:
        return hits

    height, width = label_map.shape
    for index in np.flatnonzero(hits == 0):
        x, y = xs[index], ys[index]
        window = label_map[
            max(y - tolerance_px, 0) : min(y + tolerance_px + 1, height),
            max(x - tolerance_px, 0) : min(x + tolerance_px + 1, width),
        ]
        nearby = window[window > 0]
        if nearby.size:
            hits[index] = nearby.min()
    return hits


def detection_eval(
    comps: list[BerryComponent],
    dots: DotAnnotations,
    shape: tuple[int, int] | None = None,
    tolerance_px: int = 0,
) -> DetectionReport:
    """
    A marker is detected when its pixel belongs to a component; a component
    without markers is misclassified and one holding two or more markers is
    undersegmented. Markers on EDGE pixels are therefore not detected unless
    a tolerance is given.
    """
    if shape is None:
        shape = _shape_covering(comps, dots)

    label_map = component_label_map(comps, shape)
    hits = marker_hits(label_map, dots, tolerance_px)

    max_id = max((comp.id for comp in comps), default=0)
    per_component = np.bincount(hits[hits > 0], minlength=max_id + 1)
    counts = per_component[[comp.id for comp in comps]] if comps else np.zeros(0)

    return DetectionReport.from_counts(
        n_markers=len(dots),
        n_detected=int((hits > 0).sum()),
        n_components=len(comps),
        n_misclassified=int((counts == 0).sum()),
        undersegmented_components=int((counts >= 2).sum()),
    )
