import typer

from pathlib import Path
from typing_extensions import Annotated

from bd.labelgen.models import LabelGenConfig


def labelgen_file(
    path: Path,
    out_path: Path,
    config: LabelGenConfig,
    from_instances: bool,
    preview_path: Path | None = None,
) -> Path:
    """
    Writes the class mask of one annotation (or instance mask) PNG and,
    with `preview_path`, its color preview.
    """
    import imageio.v3 as iio

    from bd.annotation import (
        ColorAnnotationImage,
        InstanceMask,
        instances_from_color_annotation,
    )
    from bd.labelgen import colorize, generate_labels

    if from_instances:
        instances = InstanceMask.load(path)
    else:
        instances = instances_from_color_annotation(ColorAnnotationImage.load(path))
    mask = generate_labels(instances, config)
    if preview_path is not None:
        iio.imwrite(preview_path / path.name, colorize(mask))
    return mask.save(out_path / path.name)


def register_labelgen(app: typer.Typer):
    from bd.cli.options import ConfigOption, NumProc, RootOption, VerboseOption

    @app.command(name="labelgen", rich_help_panel="Pipeline Commands")
    def labelgen(
        input_path: Annotated[
            Path | None,
            typer.Option(
                "--input", help="Annotation folder, defaults to <root>/annotations."
            ),
        ] = None,
        output_path: Annotated[
            Path | None,
            typer.Option(
                "--output", help="Class mask folder, defaults to <root>/labels."
            ),
        ] = None,
        edge_thickness: Annotated[
            int | None,
            typer.Option("--edge-thickness", help="Edge band width in pixels."),
        ] = None,
        from_instances: Annotated[
            bool,
            typer.Option(
                "--from-instances",
                help="Read 16-bit instance masks instead of color annotations.",
            ),
        ] = False,
        preview_path: Annotated[
            Path | None,
            typer.Option("--preview", help="Folder for color previews of the masks."),
        ] = None,
        config_path: ConfigOption = None,
        root: RootOption = None,
        num_proc: NumProc = None,
        verbose: VerboseOption = False,
    ) -> None:
        """
        Converts berry annotations into berry / edge / background class masks.
        """
        from functools import partial
        from rich import print as rprint

        from bd.cli.utils import (
            fail,
            load_config,
            report_failures,
            run_tasks,
            setup_logging,
        )

        setup_logging(verbose)

        try:
            config = load_config(
                config_path,
                root,
                **{"labelgen.edge_thickness_px": edge_thickness, "num_proc": num_proc},
            )
            if input_path is None:
                paths_config = config.paths
                input_path = (
                    paths_config.instances
                    if from_instances
                    else paths_config.annotations
                )
            if output_path is None:
                output_path = config.paths.labels
            if not input_path.is_dir():
                raise FileNotFoundError(f"Annotation folder not found: {input_path}")
            paths = sorted(input_path.glob("*.png"))
        except Exception as e:
            fail("Unable to start label generation", e)

        if not paths:
            rprint(f"⚠️  [yellow]No annotation PNGs found in {input_path}[/yellow]")
            return

        output_path.mkdir(parents=True, exist_ok=True)
        if preview_path is not None:
            preview_path.mkdir(parents=True, exist_ok=True)
        config.save(output_path / "config.json")

        task = partial(
            labelgen_file,
            out_path=output_path,
            config=config.labelgen,
            from_instances=from_instances,
            preview_path=preview_path,
        )
        results = run_tasks(task, paths, config.num_proc, "Generating labels")
        report_failures(results)
        rprint(f"✅ Wrote {len(paths)} class masks to {output_path}")

    return labelgen
