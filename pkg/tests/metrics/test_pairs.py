import numpy as np

from bd.annotation import DotAnnotations
from bd.components import ComponentConfig, label_components
from bd.labelgen import ClassMask, SemanticClass
from bd.metrics import patch_count_pairs
from bd.tiling import plan_grid


def test_patch_count_pairs():
    labels = np.zeros((20, 40), dtype=np.uint8)
    labels[5:10, 2:7] = SemanticClass.BERRY  # centroid (4, 7)
    labels[5:10, 30:35] = SemanticClass.BERRY  # centroid (32, 7)
    comps = label_components(ClassMask(labels=labels), ComponentConfig())
    dots = DotAnnotations(markers=[(4, 7), (15, 3), (33, 8)])

    grid = plan_grid(40, 20, 20, 20, 0.0)
    assert patch_count_pairs(comps, dots, grid) == [
        ((0, 0), 2, 1),
        ((20, 0), 1, 1),
    ]


def test_overlapping_patches_count_twice():
    labels = np.zeros((20, 40), dtype=np.uint8)
    labels[5:10, 18:23] = SemanticClass.BERRY  # centroid (20, 7)
    comps = label_components(ClassMask(labels=labels), ComponentConfig())
    dots = DotAnnotations(markers=[(20, 7)])

    grid = plan_grid(40, 20, 30, 20, 0.5)
    pairs = patch_count_pairs(comps, dots, grid)
    assert [p[0] for p in pairs] == [(0, 0), (10, 0)]
    assert all(manual == detected == 1 for _, manual, detected in pairs)


def test_no_components():
    grid = plan_grid(10, 10, 10, 10, 0.0)
    assert patch_count_pairs([], DotAnnotations(), grid) == [((0, 0), 0, 0)]
