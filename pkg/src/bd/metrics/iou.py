import numpy as np

from bd.labelgen import ClassMask

from .models import IoUReport

N_CLASSES = 3


def confusion_matrix(pred: ClassMask, truth: ClassMask) -> np.ndarray:
    """3x3 pixel counts indexed [truth, pred]."""
    truth.require_shape(pred)
    index = truth.labels.astype(np.int64) * N_CLASSES + pred.labels
    counts = np.bincount(index.ravel(), minlength=N_CLASSES * N_CLASSES)
    return counts.reshape(N_CLASSES, N_CLASSES)


class IoUAccumulator:
    """Micro aggregation: pools intersections and unions over images."""

    def __init__(self):
        self.confusion = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
        self.n_images = 0

    def add(self, pred: ClassMask, truth: ClassMask) -> "IoUAccumulator":
        return self.add_confusion(confusion_matrix(pred, truth))

    def add_confusion(self, confusion: np.ndarray) -> "IoUAccumulator":
        self.confusion += confusion
        self.n_images += 1
        return self

    def report(self) -> IoUReport:
        return IoUReport.from_confusion(self.confusion)


def iou(pred: ClassMask, truth: ClassMask) -> IoUReport:
    """
    Per-class |pred=c and truth=c| / |pred=c or truth=c|, a class absent
    from both masks scores 1.0.
    """
    return IoUAccumulator().add(pred, truth).report()
