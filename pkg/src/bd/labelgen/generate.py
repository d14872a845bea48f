import numpy as np

from scipy import ndimage

from bd.annotation import InstanceMask
from bd.errors import UnknownInstanceError

from .models import ClassMask, LabelGenConfig, SemanticClass


def _label_ids(ids: np.ndarray, thickness: int) -> np.ndarray:
    # A pixel keeps its berry core label only when its whole
    # (2t+1)x(2t+1) chessboard window belongs to its own instance.
    # Pixels outside the image count as "not this instance".
    size = 2 * thickness + 1
    low = ndimage.minimum_filter(ids, size=size, mode="constant", cval=0)
    high = ndimage.maximum_filter(ids, size=size, mode="constant", cval=0)

    footprint = ids != 0
    labels = np.full(ids.shape, SemanticClass.BACKGROUND, dtype=np.uint8)
    labels[footprint] = SemanticClass.EDGE
    labels[footprint & (low == ids) & (high == ids)] = SemanticClass.BERRY
    return labels


def generate_labels(inst: InstanceMask, cfg: LabelGenConfig) -> ClassMask:
    """
    Converts berry instances into the three class label mask.

    Instance pixels within `edge_thickness_px` (chessboard distance) of any
    pixel not belonging to the same instance become EDGE, the remaining
    instance pixels BERRY and id 0 BACKGROUND. Touching berries therefore get
    an edge on both sides of their contact.
    """
    return ClassMask(labels=_label_ids(inst.ids, cfg.edge_thickness_px))


def berry_core_exists(
    inst: InstanceMask, cfg: LabelGenConfig, instance_id: int
) -> bool:
    """True when instance `instance_id` keeps at least one BERRY pixel."""
    rows, cols = np.nonzero(inst.ids == instance_id)
    if instance_id == 0 or len(rows) == 0:
        raise UnknownInstanceError(f"Instance {instance_id} not in mask")

    t = cfg.edge_thickness_px
    top, bottom = max(rows.min() - t, 0), min(rows.max() + t + 1, inst.height)
    left, right = max(cols.min() - t, 0), min(cols.max() + t + 1, inst.width)
    crop = inst.ids[top:bottom, left:right]

    # Cropping is exact: windows never reach past the padded bounding box,
    # and the image border is treated as outside on both.
    labels = _label_ids(crop, t)
    return bool(np.any((crop == instance_id) & (labels == SemanticClass.BERRY)))
