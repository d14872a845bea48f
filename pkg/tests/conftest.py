import numpy as np
import pytest

from bd.annotation import InstanceMask
from bd.synth import SceneConfig


def paint_discs(
    shape: tuple[int, int], discs: list[tuple[int, int, int]]
) -> np.ndarray:
    """Instance ids 1..N for (x, y, r) discs painted in order."""
    ids = np.zeros(shape, dtype=np.int64)
    yy, xx = np.ogrid[: shape[0], : shape[1]]
    for k, (x, y, r) in enumerate(discs, start=1):
        ids[(xx - x) ** 2 + (yy - y) ** 2 <= r**2] = k
    return ids


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def make_discs():
    """Factory painting (x, y, r) discs into an instance id raster."""
    return paint_discs


@pytest.fixture
def two_berries() -> InstanceMask:
    """Two separated discs of radius 8 on a 64x48 canvas."""
    return InstanceMask(ids=paint_discs((48, 64), [(16, 20, 8), (44, 24, 8)]))


@pytest.fixture
def touching_berries() -> InstanceMask:
    """Two radius 10 discs overlapping, the second painted over the first."""
    return InstanceMask(ids=paint_discs((48, 64), [(22, 24, 10), (38, 24, 10)]))


@pytest.fixture
def loose_scene_config() -> SceneConfig:
    """Scene without touching berries, every berry is a full disc."""
    return SceneConfig(
        image_w=256,
        image_h=192,
        n_clusters=2,
        berries_per_cluster=(3, 8),
        radius_px=(6, 12),
        cluster_spread_px=30.0,
        touch_probability=0.0,
        seed=0,
    )
