import numpy as np

from bd.annotation import DotAnnotations
from bd.components import BerryComponent
from bd.tiling import PatchGrid


def patch_count_pairs(
    comps: list[BerryComponent], dots: DotAnnotations, grid: PatchGrid
) -> list[tuple[tuple[int, int], int, int]]:
    """
    (placement, manual, detected) per patch of `grid`. Markers count where
    they lie; components are anchored at their rounded centroid.
    """
    markers = dots.as_array()
    anchors = np.array(
        [(round(c.centroid[0]), round(c.centroid[1])) for c in comps],
        dtype=np.int64,
    ).reshape(-1, 2)

    def inside(points: np.ndarray, x0: int, y0: int) -> int:
        if len(points) == 0:
            return 0
        xs, ys = points[:, 0], points[:, 1]
        return int(
            np.count_nonzero(
                (xs >= x0)
                & (xs < x0 + grid.patch_w)
                & (ys >= y0)
                & (ys < y0 + grid.patch_h)
            )
        )

    return [
        ((x0, y0), inside(markers, x0, y0), inside(anchors, x0, y0))
        for x0, y0 in grid.placements
    ]
