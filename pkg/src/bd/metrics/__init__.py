from .models import (
    AblationDetectionRow,
    CountPair,
    CountRegression,
    DetectionReport,
    DetectionRow,
    EvalReport,
    EvaluationConfig,
    IoUReport,
)
from .iou import IoUAccumulator, confusion_matrix, iou
from .detection import detection_eval, marker_hits
from .regression import count_regression
from .pairs import patch_count_pairs
from .report import (
    ALL_GROUPS,
    DEFAULT_GROUP,
    ImageEvaluation,
    build_report,
    evaluate_image,
    load_report,
    save_plot_data,
    save_report,
)

__all__ = [
    "ALL_GROUPS",
    "DEFAULT_GROUP",
    "AblationDetectionRow",
    "CountPair",
    "CountRegression",
    "DetectionReport",
    "DetectionRow",
    "EvalReport",
    "EvaluationConfig",
    "ImageEvaluation",
    "IoUAccumulator",
    "IoUReport",
    "build_report",
    "confusion_matrix",
    "count_regression",
    "detection_eval",
    "evaluate_image",
    "iou",
    "load_report",
    "marker_hits",
    "patch_count_pairs",
    "save_plot_data",
    "save_report",
]
