import json
import numpy as np
import typer

from pathlib import Path
from typing_extensions import Annotated

from bd.config import PipelineConfig
from bd.metrics.models import EvalReport
from bd.metrics.report import ImageEvaluation

MASK_SUFFIX = "_mask.png"


def detected_image_ids(detections_path: Path) -> list[str]:
    return sorted(
        path.name[: -len(MASK_SUFFIX)]
        for path in detections_path.glob(f"*{MASK_SUFFIX}")
    )


def resolve_groups(
    image_ids: list[str], config: PipelineConfig, groups_path: Path | None = None
) -> dict[str, str]:
    """
    Group per image: explicit mapping first (config, then `groups_path`),
    then the group recorded in a synthetic scene sidecar. `all` names the
    overall scope and is rejected as a group.
    """
    from bd.metrics.report import ALL_GROUPS, DEFAULT_GROUP
    from bd.synth import SceneSidecar

    groups = dict(config.groups)
    if groups_path is not None:
        groups.update(json.loads(groups_path.read_text()))

    resolved = {}
    for image_id in image_ids:
        group = groups.get(image_id)
        sidecar = config.paths.scenes / f"{image_id}.json"
        if group is None and sidecar.is_file():
            group = SceneSidecar.model_validate_json(sidecar.read_text()).group
        if group == ALL_GROUPS:
            raise ValueError(
                f"Image {image_id}: group name \"{ALL_GROUPS}\" is reserved for the "
                "overall scope"
            )
        resolved[image_id] = group or DEFAULT_GROUP
    return resolved


def evaluate_file(
    image_id: str,
    config: PipelineConfig,
    detections_path: Path,
    group: str,
) -> tuple[ImageEvaluation, np.ndarray | None]:
    """
    Evaluation of one stitched mask against its dots, plus the pixel
    confusion against the reference class mask when one exists.
    """
    from bd.annotation import load_dots
    from bd.labelgen import ClassMask
    from bd.metrics import confusion_matrix, evaluate_image

    mask = ClassMask.load(detections_path / f"{image_id}{MASK_SUFFIX}")
    dots = load_dots(config.paths.dots / f"{image_id}.csv", mask.width, mask.height)
    count_grid = None
    if config.evaluation.count_unit == "patch":
        count_grid = config.grid.plan(mask.width, mask.height)

    evaluation = evaluate_image(
        image_id,
        mask,
        dots,
        config.components,
        config.filters,
        config.evaluation,
        group=group,
        count_grid=count_grid,
    )

    reference_path = config.paths.labels / f"{image_id}.png"
    confusion = None
    if reference_path.is_file():
        confusion = confusion_matrix(mask, ClassMask.load(reference_path))
    return evaluation, confusion


def register_eval(app: typer.Typer):
    from bd.cli.options import ConfigOption, NumProc, RootOption, VerboseOption

    @app.command(name="eval", rich_help_panel="Pipeline Commands")
    def evaluate(
        detections_path: Annotated[
            Path | None,
            typer.Option(
                "--detections",
                help="Detect output folder, defaults to <root>/detections.",
            ),
        ] = None,
        output_path: Annotated[
            Path | None,
            typer.Option(
                "--output", help="Report folder, defaults to <root>/reports."
            ),
        ] = None,
        groups_path: Annotated[
            Path | None,
            typer.Option(
                "--groups", help="JSON object mapping image ids to groups."
            ),
        ] = None,
        count_unit: Annotated[
            str | None,
            typer.Option(
                "--count-unit", help="Pair counts per \"image\" or per \"patch\"."
            ),
        ] = None,
        tolerance: Annotated[
            int | None,
            typer.Option("--tolerance", help="Marker tolerance in pixels."),
        ] = None,
        config_path: ConfigOption = None,
        root: RootOption = None,
        num_proc: NumProc = None,
        verbose: VerboseOption = False,
    ) -> None:
        """
        Compares detected berries with the dot annotations and writes the
        evaluation report (JSON, CSV and schema).
        """
        from functools import partial
        from rich import print as rprint

        from bd.cli.utils import (
            TaskFailure,
            fail,
            load_config,
            report_failures,
            run_tasks,
            setup_logging,
        )
        from bd.metrics import IoUAccumulator, build_report, save_report
        from bd.metrics.report import ALL_GROUPS

        setup_logging(verbose)

        try:
            config = load_config(
                config_path,
                root,
                **{
                    "evaluation.count_unit": count_unit,
                    "evaluation.marker_tolerance_px": tolerance,
                    "num_proc": num_proc,
                },
            )
            detections_path = detections_path or config.paths.detections
            output_path = output_path or config.paths.reports
            if not detections_path.is_dir():
                raise FileNotFoundError(
                    f"Detections folder not found: {detections_path}"
                )
            image_ids = detected_image_ids(detections_path)
            groups = resolve_groups(image_ids, config, groups_path)
        except Exception as e:
            fail("Unable to start evaluation", e)

        if not image_ids:
            rprint(
                f"⚠️  [yellow]No stitched masks found in {detections_path}[/yellow]"
            )
            return

        task = partial(
            _evaluate_id,
            config=config,
            detections_path=detections_path,
            groups=groups,
        )
        results = run_tasks(task, image_ids, config.num_proc, "Evaluating images")
        report_failures(results)

        evaluations = []
        accumulator = IoUAccumulator()
        for _, result in results:
            if isinstance(result, TaskFailure):
                continue
            evaluation, confusion = result
            evaluations.append(evaluation)
            if confusion is not None:
                accumulator.add_confusion(confusion)

        try:
            report = build_report(
                evaluations,
                count_unit=config.evaluation.count_unit,
                iou=accumulator.report() if accumulator.n_images else None,
            )
            save_report(report, output_path)
            config.save(output_path / "config.json")
        except Exception as e:
            fail("Unable to write evaluation report", e)

        overall = report.row("overall", ALL_GROUPS, "post_filter")
        rprint(
            f"✅ Evaluated {len(evaluations)} images: "
            f"detection {_pct(overall.correct_detection_pct)}, "
            f"misclassified {_pct(overall.misclassified_pct)}, "
            f"R² {_r_squared(report)}, report in {output_path}"
        )

    return evaluate


def _evaluate_id(
    image_id: str,
    config: PipelineConfig,
    detections_path: Path,
    groups: dict[str, str],
) -> tuple[ImageEvaluation, np.ndarray | None]:
    return evaluate_file(image_id, config, detections_path, groups[image_id])


def _pct(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.1f}%"


def _r_squared(report: EvalReport) -> str:
    if report.regression is None:
        return "n/a"
    return f"{report.regression.r_squared:.4f}"
