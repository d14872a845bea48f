import logging
import numpy as np

from scipy import ndimage

from bd.errors import MalformedAnnotationError

from .models import BERRY_PALETTE, RGB, ColorAnnotationImage, InstanceMask
from .relabel import relabel_raster_order

logger = logging.getLogger(__name__)

FOUR_CONNECTIVITY = ndimage.generate_binary_structure(2, 1)


def _color_match(rgb: np.ndarray, color: RGB) -> np.ndarray:
    return np.all(rgb == np.asarray(color, dtype=np.uint8), axis=-1)


def instances_from_color_annotation(img: ColorAnnotationImage) -> InstanceMask:
    """
    Every maximal 4-connected region of one berry color becomes an instance.
    Touching regions of the same color are one instance; annotators are
    expected never to paint neighbouring berries with the same color.
    """
    shape = img.rgb.shape[:2]
    provisional = np.zeros(shape, dtype=np.int64)
    matched = _color_match(img.rgb, img.background)

    offset = 0
    for color in img.palette:
        region = _color_match(img.rgb, color)
        labeled, n = ndimage.label(region, structure=FOUR_CONNECTIVITY)
        provisional[region] = labeled[region] + offset
        matched |= region
        offset += n

    if not matched.all():
        row, col = np.argwhere(~matched)[0]
        color = tuple(int(c) for c in img.rgb[row, col])
        raise MalformedAnnotationError(
            f"Pixel (x={col}, y={row}) has color {color} which is not in the palette"
        )

    ids = relabel_raster_order(provisional)
    logger.debug("Recovered %d instances from color annotation", int(ids.max()))
    return InstanceMask(ids=ids)


def _adjacency(ids: np.ndarray) -> dict[int, set[int]]:
    graph: dict[int, set[int]] = {int(i): set() for i in np.unique(ids) if i != 0}
    pairs = [
        (ids[:, :-1], ids[:, 1:]),
        (ids[:-1, :], ids[1:, :]),
    ]
    for a, b in pairs:
        touching = (a != b) & (a != 0) & (b != 0)
        for u, v in set(zip(a[touching].tolist(), b[touching].tolist())):
            graph[u].add(v)
            graph[v].add(u)
    return graph


def _connected_groups(graph: dict[int, set[int]]) -> list[list[int]]:
    groups, seen = [], set()
    for start in sorted(graph):
        if start in seen:
            continue
        group, stack = [], [start]
        seen.add(start)
        while stack:
            vertex = stack.pop()
            group.append(vertex)
            for u in graph[vertex] - seen:
                seen.add(u)
                stack.append(u)
        groups.append(group)
    return groups


def _four_coloring(graph: dict[int, set[int]]) -> dict[int, int]:
    coloring: dict[int, int] = {}

    def next_vertex(group: list[int]) -> int:
        # Most saturated first, then highest degree, then lowest id.
        return min(
            (v for v in group if v not in coloring),
            key=lambda v: (
                -len({coloring[u] for u in graph[v] if u in coloring}),
                -len(graph[v]),
                v,
            ),
        )

    def search(group: list[int], remaining: int) -> bool:
        if remaining == 0:
            return True
        vertex = next_vertex(group)
        used = {coloring[u] for u in graph[vertex] if u in coloring}
        for color in range(4):
            if color in used:
                continue
            coloring[vertex] = color
            if search(group, remaining - 1):
                return True
            del coloring[vertex]
        return False

    # Touching clusters are colored independently to keep recursion shallow.
    for group in _connected_groups(graph):
        if not search(group, len(group)):
            raise MalformedAnnotationError(
                "Instance adjacency graph is not 4-colorable"
            )
    return coloring


def render_color_annotation(
    inst: InstanceMask,
    palette: list[RGB] = BERRY_PALETTE,
    background: RGB = (0, 0, 0),
) -> ColorAnnotationImage:
    """
    Paints an instance mask in the annotators' four color format, no two
    4-adjacent instances share a color.
    """
    coloring = _four_coloring(_adjacency(inst.ids))

    lut = np.zeros((int(inst.ids.max(initial=0)) + 1, 3), dtype=np.uint8)
    lut[0] = background
    for instance_id, color in coloring.items():
        lut[instance_id] = palette[color]

    return ColorAnnotationImage(
        rgb=lut[inst.ids], palette=palette, background=background
    )
