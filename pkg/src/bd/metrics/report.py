import csv
import json

from collections import Counter
from pathlib import Path
from pydantic import BaseModel

from bd.annotation import DotAnnotations
from bd.components import ComponentConfig, label_components
from bd.errors import UndefinedFitError
from bd.labelgen import ClassMask
from bd.postfilter import ABLATION_FILTER_SETS, FilterConfig, apply_filters
from bd.postfilter.ablation import filter_set_name
from bd.tiling import PatchGrid

from .detection import detection_eval
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
from .pairs import patch_count_pairs
from .regression import count_regression

ALL_GROUPS = "all"
DEFAULT_GROUP = "default"


class ImageEvaluation(BaseModel):
    image_id: str
    group: str
    pre_filter: DetectionReport
    post_filter: DetectionReport
    ablation: dict[str, DetectionReport]
    pairs: list[CountPair]


def evaluate_image(
    image_id: str,
    mask: ClassMask,
    dots: DotAnnotations,
    component_cfg: ComponentConfig,
    filter_cfg: FilterConfig,
    evaluation_cfg: EvaluationConfig,
    group: str = DEFAULT_GROUP,
    count_grid: PatchGrid | None = None,
) -> ImageEvaluation:
    """Detection reports before and after filtering plus count pairs."""
    dots.validate_bounds(mask.width, mask.height)
    tolerance = evaluation_cfg.marker_tolerance_px

    comps = label_components(mask, component_cfg)
    kept = apply_filters(comps, filter_cfg).kept

    ablation = {}
    for names in ABLATION_FILTER_SETS:
        subset = apply_filters(comps, filter_cfg.with_filters(names)).kept
        ablation[filter_set_name(names)] = detection_eval(
            subset, dots, mask.shape, tolerance
        )

    if evaluation_cfg.count_unit == "patch":
        if count_grid is None:
            raise ValueError("Patch count pairs need a count grid")
        pairs = [
            CountPair(
                image_id=image_id,
                group=group,
                placement=placement,
                manual=manual,
                detected=detected,
            )
            for placement, manual, detected in patch_count_pairs(
                kept, dots, count_grid
            )
        ]
    else:
        pairs = [
            CountPair(
                image_id=image_id, group=group, manual=len(dots), detected=len(kept)
            )
        ]

    return ImageEvaluation(
        image_id=image_id,
        group=group,
        pre_filter=detection_eval(comps, dots, mask.shape, tolerance),
        post_filter=detection_eval(kept, dots, mask.shape, tolerance),
        ablation=ablation,
        pairs=pairs,
    )


def _fit(pairs: list[CountPair]) -> CountRegression | None:
    try:
        return count_regression([(p.manual, p.detected) for p in pairs])
    except UndefinedFitError:
        return None


def build_report(
    evaluations: list[ImageEvaluation],
    count_unit: str = "image",
    iou: IoUReport | None = None,
) -> EvalReport:
    """Aggregates image evaluations per group and overall (pooled counts)."""
    evaluations = sorted(evaluations, key=lambda e: e.image_id)
    groups = sorted({e.group for e in evaluations})
    if ALL_GROUPS in groups:
        raise ValueError(f'Group name "{ALL_GROUPS}" is reserved for the overall scope')
    scopes = [(ALL_GROUPS, evaluations)] + [
        (g, [e for e in evaluations if e.group == g]) for g in groups
    ]

    rows: list[DetectionRow] = []
    for e in evaluations:
        for stage in ("pre_filter", "post_filter"):
            rows.append(
                DetectionRow(
                    scope="image",
                    name=e.image_id,
                    group=e.group,
                    stage=stage,
                    report=getattr(e, stage),
                )
            )

    for name, members in scopes:
        scope = "overall" if name == ALL_GROUPS else "group"
        for stage in ("pre_filter", "post_filter"):
            rows.append(
                DetectionRow(
                    scope=scope,
                    name=name,
                    group=name,
                    stage=stage,
                    report=DetectionReport.combine(
                        [getattr(e, stage) for e in members]
                    ),
                )
            )

    ablation = [
        AblationDetectionRow(
            group=name,
            filters=filter_set_name(names),
            report=DetectionReport.combine(
                [e.ablation[filter_set_name(names)] for e in members]
            ),
        )
        for name, members in scopes
        for names in ABLATION_FILTER_SETS
    ]

    pairs = [pair for e in evaluations for pair in e.pairs]

    return EvalReport(
        count_unit=count_unit,
        rows=rows,
        ablation=ablation,
        pairs=pairs,
        regression=_fit(pairs),
        regression_by_group={
            g: _fit([p for p in pairs if p.group == g]) for g in groups
        },
        iou=iou,
    )


REPORT_COLUMNS = [
    "scope",
    "name",
    "group",
    "stage",
    "n_markers",
    "n_detected",
    "n_components",
    "n_misclassified",
    "undersegmented_components",
    "correct_detection_pct",
    "misclassified_pct",
]


ABLATION_COLUMNS = [
    "group",
    "filters",
    "correct_detection_pct",
    "misclassified_pct",
    "n_components",
]


def _pct(value: float | None) -> str:
    return "" if value is None else f"{value:.4f}"


def save_report(report: EvalReport, out_path: Path) -> Path:
    """
    Writes eval.json, its JSON schema, the flat eval.csv and the
    per filter set ablation.csv into `out_path`.
    """
    out_path.mkdir(parents=True, exist_ok=True)
    _ = (out_path / "eval.json").write_text(report.model_dump_json(indent=2))
    _ = (out_path / "eval.schema.json").write_text(
        json.dumps(EvalReport.model_json_schema(), indent=2)
    )

    with open(out_path / "eval.csv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in report.rows:
            r = row.report
            writer.writerow(
                [
                    row.scope,
                    row.name,
                    row.group,
                    row.stage,
                    r.n_markers,
                    r.n_detected,
                    r.n_components,
                    r.n_misclassified,
                    r.undersegmented_components,
                    _pct(r.correct_detection_pct),
                    _pct(r.misclassified_pct),
                ]
            )

    with open(out_path / "ablation.csv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ABLATION_COLUMNS)
        for row in report.ablation:
            writer.writerow(
                [
                    row.group,
                    row.filters,
                    _pct(row.report.correct_detection_pct),
                    _pct(row.report.misclassified_pct),
                    row.report.n_components,
                ]
            )

    return out_path / "eval.json"


def load_report(path: Path) -> EvalReport:
    return EvalReport.model_validate_json(path.read_text())


def save_plot_data(report: EvalReport, out_path: Path) -> tuple[Path, Path]:
    """
    pairs.csv holds one (manual, detected) row per image or patch,
    fit.csv the fitted line per group and overall. Nothing is drawn.
    """
    out_path.mkdir(parents=True, exist_ok=True)
    pairs_path = out_path / "pairs.csv"
    fit_path = out_path / "fit.csv"

    with open(pairs_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["image_id", "group", "x0", "y0", "manual", "detected"])
        for pair in report.pairs:
            x0, y0 = pair.placement if pair.placement is not None else ("", "")
            writer.writerow(
                [pair.image_id, pair.group, x0, y0, pair.manual, pair.detected]
            )

    fits = {ALL_GROUPS: report.regression, **report.regression_by_group}
    n_pairs = Counter(pair.group for pair in report.pairs)
    n_pairs[ALL_GROUPS] = len(report.pairs)
    with open(fit_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["group", "n_pairs", "slope", "intercept", "r_squared"])
        for group, fit in fits.items():
            if fit is None:
                writer.writerow([group, n_pairs[group], "", "", ""])
                continue
            writer.writerow(
                [
                    group,
                    len(fit.pairs),
                    f"{fit.slope:.9f}",
                    f"{fit.intercept:.9f}",
                    f"{fit.r_squared:.9f}",
                ]
            )

    return pairs_path, fit_path
