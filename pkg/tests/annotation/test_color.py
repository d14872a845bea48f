import numpy as np
import pytest

from bd.annotation import (
    BERRY_PALETTE,
    ColorAnnotationImage,
    InstanceMask,
    instances_from_color_annotation,
    relabel_raster_order,
    render_color_annotation,
)
from bd.errors import MalformedAnnotationError

RED, GREEN, BLUE, YELLOW = BERRY_PALETTE


def paint(shape, regions):
    rgb = np.zeros((*shape, 3), dtype=np.uint8)
    for (rows, cols), color in regions:
        rgb[rows, cols] = color
    return ColorAnnotationImage(rgb=rgb)


class TestInstancesFromColorAnnotation:
    """Color annotation ingestion."""

    def test_separate_regions_of_one_color_are_distinct(self):
        img = paint(
            (10, 10),
            [
                ((slice(1, 4), slice(1, 4)), RED),
                ((slice(6, 9), slice(6, 9)), RED),
            ],
        )
        inst = instances_from_color_annotation(img)
        assert inst.n_instances == 2
        assert inst.ids[2, 2] == 1
        assert inst.ids[7, 7] == 2

    def test_touching_regions_of_different_colors(self):
        img = paint(
            (6, 8),
            [
                ((slice(1, 5), slice(1, 4)), RED),
                ((slice(1, 5), slice(4, 7)), GREEN),
            ],
        )
        inst = instances_from_color_annotation(img)
        assert inst.n_instances == 2
        assert inst.pixel_counts() == {1: 12, 2: 12}

    def test_ids_follow_raster_order(self):
        # Blue starts earlier in raster order than red.
        img = paint(
            (8, 8),
            [
                ((slice(4, 7), slice(0, 3)), RED),
                ((slice(0, 2), slice(5, 8)), BLUE),
            ],
        )
        inst = instances_from_color_annotation(img)
        assert inst.ids[0, 5] == 1
        assert inst.ids[4, 0] == 2

    def test_diagonal_contact_does_not_merge(self):
        img = paint(
            (4, 4),
            [
                ((slice(0, 2), slice(0, 2)), YELLOW),
                ((slice(2, 4), slice(2, 4)), YELLOW),
            ],
        )
        assert instances_from_color_annotation(img).n_instances == 2

    def test_unknown_color_names_the_pixel(self):
        img = paint(
            (5, 5),
            [
                ((slice(1, 3), slice(1, 3)), RED),
                ((slice(3, 4), slice(4, 5)), (12, 34, 56)),
            ],
        )
        with pytest.raises(MalformedAnnotationError, match=r"x=4, y=3"):
            instances_from_color_annotation(img)

    def test_empty_annotation(self):
        inst = instances_from_color_annotation(paint((5, 5), []))
        assert inst.n_instances == 0


class TestRenderColorAnnotation:
    """Four color rendering and its round trip."""

    def test_neighbours_never_share_a_color(self, touching_berries):
        img = render_color_annotation(touching_berries)
        first = tuple(img.rgb[24, 14])
        second = tuple(img.rgb[24, 44])
        assert first in BERRY_PALETTE
        assert second in BERRY_PALETTE
        assert first != second

    def test_round_trip_reproduces_the_partition(self, make_discs):
        # Zigzag chain of overlapping discs.
        discs = [(10 + 12 * i, 16 + (i % 2) * 8, 8) for i in range(6)]
        inst = InstanceMask(ids=relabel_raster_order(make_discs((40, 90), discs)))
        recovered = instances_from_color_annotation(render_color_annotation(inst))
        assert np.array_equal(recovered.ids, inst.ids)

    def test_background_stays_background(self, two_berries):
        img = render_color_annotation(two_berries)
        assert tuple(img.rgb[0, 0]) == (0, 0, 0)
