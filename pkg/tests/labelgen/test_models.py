import numpy as np
import pytest

from pydantic import ValidationError

from bd.errors import DimensionMismatchError
from bd.labelgen import ClassMask, LabelGenConfig, SemanticClass, colorize


def test_class_mask_rejects_unknown_values():
    with pytest.raises(ValidationError):
        ClassMask(labels=np.array([[0, 3]]))


def test_class_mask_counts():
    mask = ClassMask(labels=np.array([[0, 1, 1], [2, 2, 2]]))
    assert mask.class_counts() == {
        SemanticClass.BACKGROUND: 1,
        SemanticClass.BERRY: 2,
        SemanticClass.EDGE: 3,
    }


def test_require_shape():
    a = ClassMask(labels=np.zeros((3, 4)))
    b = ClassMask(labels=np.zeros((4, 3)))
    with pytest.raises(DimensionMismatchError):
        a.require_shape(b)


def test_class_mask_png_round_trip(tmp_path):
    mask = ClassMask(labels=np.array([[0, 1], [2, 1]]))
    loaded = ClassMask.load(mask.save(tmp_path / "mask.png"))
    assert np.array_equal(loaded.labels, mask.labels)


def test_colorize():
    rgb = colorize(ClassMask(labels=np.array([[0, 1, 2]])))
    assert rgb.tolist() == [[[0, 0, 0], [0, 255, 0], [255, 0, 0]]]


def test_label_gen_config_round_trip(tmp_path):
    cfg = LabelGenConfig(edge_thickness_px=3)
    assert LabelGenConfig.load(cfg.save(tmp_path / "labelgen.json")) == cfg


def test_label_gen_config_rejects_zero_thickness():
    with pytest.raises(ValidationError):
        LabelGenConfig(edge_thickness_px=0)
