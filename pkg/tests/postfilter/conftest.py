import numpy as np
import pytest

from bd.components import BerryComponent


@pytest.fixture
def make_component():
    """Component with hand-picked geometry, pixels laid out along one row."""

    def make(
        area_px: int = 100,
        major: float = 6.0,
        minor: float = 5.0,
        edge: float = 1.0,
        component_id: int = 1,
    ) -> BerryComponent:
        coords = np.stack([np.zeros(area_px), np.arange(area_px)], axis=1)
        return BerryComponent(
            id=component_id,
            coords=coords,
            area_px=area_px,
            centroid=(float(area_px - 1) / 2.0, 0.0),
            major_semi_axis_px=major,
            minor_semi_axis_px=minor,
            edge_surround_fraction=edge,
        )

    return make
