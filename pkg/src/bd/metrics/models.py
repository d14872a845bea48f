from __future__ import annotations

import numpy as np

from pydantic import BaseModel, Field, model_validator
from typing_extensions import Literal, TypeAlias

CountUnit: TypeAlias = Literal["image", "patch"]
Stage: TypeAlias = Literal["pre_filter", "post_filter"]
Scope: TypeAlias = Literal["image", "group", "overall"]


class IoUReport(BaseModel):
    """Per-class intersection over union and their unweighted mean."""

    iou_background: float = Field(ge=0.0, le=1.0)
    iou_berry: float = Field(ge=0.0, le=1.0)
    iou_edge: float = Field(ge=0.0, le=1.0)
    iou_average: float = Field(ge=0.0, le=1.0)

    @classmethod
    def from_confusion(cls, confusion: np.ndarray) -> IoUReport:
        """`confusion[truth, pred]` pixel counts, 3x3."""
        intersection = np.diag(confusion).astype(np.float64)
        union = confusion.sum(axis=0) + confusion.sum(axis=1) - intersection
        # A class absent from both masks counts as a perfect match.
        values = np.divide(
            intersection, union, out=np.ones(3, dtype=np.float64), where=union > 0
        )
        return cls(
            iou_background=float(values[0]),
            iou_berry=float(values[1]),
            iou_edge=float(values[2]),
            iou_average=float(values.mean()),
        )


class DetectionReport(BaseModel):
    """
    Marker based detection counts. Percentages are None when their
    denominator is zero.
    """

    n_markers: int = Field(ge=0)
    n_detected: int = Field(ge=0)
    n_components: int = Field(ge=0)
    n_misclassified: int = Field(ge=0)
    undersegmented_components: int = Field(ge=0)
    correct_detection_pct: float | None = None
    misclassified_pct: float | None = None

    @model_validator(mode="after")
    def validate_counts(self) -> DetectionReport:
        if self.n_detected > self.n_markers:
            raise ValueError("n_detected exceeds n_markers")
        if self.n_misclassified > self.n_components:
            raise ValueError("n_misclassified exceeds n_components")
        return self

    @classmethod
    def from_counts(
        cls,
        n_markers: int,
        n_detected: int,
        n_components: int,
        n_misclassified: int,
        undersegmented_components: int,
    ) -> DetectionReport:
        return cls(
            n_markers=n_markers,
            n_detected=n_detected,
            n_components=n_components,
            n_misclassified=n_misclassified,
            undersegmented_components=undersegmented_components,
            correct_detection_pct=(
                100.0 * n_detected / n_markers if n_markers else None
            ),
            misclassified_pct=(
                100.0 * n_misclassified / n_components if n_components else None
            ),
        )

    @classmethod
    def combine(cls, reports: list[DetectionReport]) -> DetectionReport:
        """Pools counts over several images before computing percentages."""
        return cls.from_counts(
            n_markers=sum(r.n_markers for r in reports),
            n_detected=sum(r.n_detected for r in reports),
            n_components=sum(r.n_components for r in reports),
            n_misclassified=sum(r.n_misclassified for r in reports),
            undersegmented_components=sum(
                r.undersegmented_components for r in reports
            ),
        )


class CountRegression(BaseModel):
    """Least squares line detected = slope * manual + intercept."""

    pairs: list[tuple[int, int]]
    slope: float
    intercept: float
    r_squared: float = Field(le=1.0)


class DetectionRow(BaseModel):
    scope: Scope
    name: str
    group: str
    stage: Stage
    report: DetectionReport


class AblationDetectionRow(BaseModel):
    group: str
    filters: str
    report: DetectionReport


class CountPair(BaseModel):
    image_id: str
    group: str
    placement: tuple[int, int] | None = None
    manual: int
    detected: int


class EvalReport(BaseModel):
    """
    Evaluation of a set of images: detection rows per image, per group
    and overall (before and after filtering), filter ablation, count pairs
    with their fitted line and pooled IoU when reference masks exist.
    """

    count_unit: CountUnit = "image"
    rows: list[DetectionRow] = []
    ablation: list[AblationDetectionRow] = []
    pairs: list[CountPair] = []
    regression: CountRegression | None = None
    regression_by_group: dict[str, CountRegression | None] = {}
    iou: IoUReport | None = None

    def row(self, scope: Scope, name: str, stage: Stage) -> DetectionReport:
        for row in self.rows:
            if row.scope == scope and row.name == name and row.stage == stage:
                return row.report
        raise KeyError(f"No {scope} row '{name}' for {stage}")


class EvaluationConfig(BaseModel):
    """
    `marker_tolerance_px` > 0 also accepts markers within that chessboard
    distance of a component. Counts are paired per image or per patch.
    """

    marker_tolerance_px: int = Field(default=0, ge=0)
    count_unit: CountUnit = "image"
