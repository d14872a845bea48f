import numpy as np
import pytest

from bd.components import ComponentConfig, edge_surround, label_components
from bd.components.geometry import axes_from_coords
from bd.labelgen import ClassMask, LabelGenConfig, SemanticClass, generate_labels


def coords_of(mask: np.ndarray) -> np.ndarray:
    return np.argwhere(mask)


class TestAxes:
    """Moment based semi-axes."""

    def test_disc_axes_match_radius(self):
        yy, xx = np.ogrid[:61, :61]
        disc = (xx - 30) ** 2 + (yy - 30) ** 2 <= 20**2
        major, minor = axes_from_coords(coords_of(disc))
        assert major == pytest.approx(20.0, abs=0.3)
        assert minor == pytest.approx(20.0, abs=0.3)

    def test_line_has_zero_minor_axis(self):
        line = np.zeros((5, 20), dtype=bool)
        line[2, 3:13] = True
        major, minor = axes_from_coords(coords_of(line))
        assert major == pytest.approx(2.0 * np.sqrt(99.0 / 12.0))
        assert minor == 0.0

    def test_diagonal_line_has_zero_minor_axis(self):
        major, minor = axes_from_coords(np.array([[i, i] for i in range(8)]))
        assert major > 0.0
        assert minor == pytest.approx(0.0, abs=1e-9)

    def test_single_pixel(self):
        assert axes_from_coords(np.array([[3, 4]])) == (0.0, 0.0)

    def test_rectangle_ratio(self):
        rect = np.zeros((20, 40), dtype=bool)
        rect[5:10, 5:35] = True
        major, minor = axes_from_coords(coords_of(rect))
        # Semi-axes of a w x h block: 2 * sqrt((n^2 - 1) / 12).
        assert major == pytest.approx(2.0 * np.sqrt((30**2 - 1) / 12.0))
        assert minor == pytest.approx(2.0 * np.sqrt((5**2 - 1) / 12.0))

    def test_minor_never_exceeds_major(self, rng):
        for _ in range(50):
            coords = rng.integers(0, 15, size=(int(rng.integers(2, 40)), 2))
            major, minor = axes_from_coords(np.unique(coords, axis=0))
            assert 0.0 <= minor <= major


class TestEdgeSurround:
    def test_berry_core_is_fully_surrounded(self, two_berries):
        mask = generate_labels(two_berries, LabelGenConfig())
        for comp in label_components(mask, ComponentConfig()):
            assert edge_surround(comp, mask) == 1.0

    def test_bare_berry_blob(self):
        labels = np.zeros((20, 20), dtype=np.uint8)
        labels[5:10, 5:10] = SemanticClass.BERRY
        mask = ClassMask(labels=labels)
        (comp,) = label_components(mask, ComponentConfig())
        assert edge_surround(comp, mask) == 0.0

    def test_partial_ring(self):
        labels = np.zeros((20, 20), dtype=np.uint8)
        labels[5:10, 5:10] = SemanticClass.BERRY
        # Left column of the 7x7 ring.
        labels[4:11, 4] = SemanticClass.EDGE
        mask = ClassMask(labels=labels)
        (comp,) = label_components(mask, ComponentConfig())
        assert edge_surround(comp, mask) == pytest.approx(7 / 24)

    def test_ring_clipped_at_border(self):
        labels = np.full((6, 6), SemanticClass.EDGE, dtype=np.uint8)
        labels[0:5, 0:5] = SemanticClass.BERRY
        mask = ClassMask(labels=labels)
        (comp,) = label_components(mask, ComponentConfig())
        # Only the in-image part of the ring counts: 5 + 5 + 1 pixels.
        assert edge_surround(comp, mask) == 1.0
