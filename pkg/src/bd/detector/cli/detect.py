import typer

from pathlib import Path
from typing_extensions import Annotated

from bd.classify import BackendKind


def register_detect(app: typer.Typer):
    from bd.cli.options import ConfigOption, NumProc, RootOption, VerboseOption

    @app.command(name="detect", rich_help_panel="Pipeline Commands")
    def detect(
        image_ids: Annotated[
            list[str] | None,
            typer.Argument(help="Image ids to process, all by default."),
        ] = None,
        masks_path: Annotated[
            Path | None,
            typer.Option(
                "--masks",
                help="Backend mask folder, defaults to <root>/labels.",
            ),
        ] = None,
        output_path: Annotated[
            Path | None,
            typer.Option(
                "--output", help="Output folder, defaults to <root>/detections."
            ),
        ] = None,
        backend: Annotated[
            BackendKind | None,
            typer.Option("--backend", help="Patch classifier backend."),
        ] = None,
        seed: Annotated[
            int | None, typer.Option("--seed", help="Noisy oracle seed.")
        ] = None,
        flip_probability: Annotated[
            float | None,
            typer.Option("--flip-probability", help="Noisy oracle pixel flips."),
        ] = None,
        false_blob_rate: Annotated[
            float | None,
            typer.Option("--false-blob-rate", help="Noisy oracle blobs per patch."),
        ] = None,
        overlap: Annotated[
            float | None, typer.Option("--overlap", help="Patch overlap fraction.")
        ] = None,
        config_path: ConfigOption = None,
        root: RootOption = None,
        num_proc: NumProc = None,
        verbose: VerboseOption = False,
    ) -> None:
        """
        Tiles, classifies, stitches and post-filters whole images, writing
        stitched masks, component tables and overlays.
        """
        from rich import print as rprint

        from bd.cli.utils import fail, load_config, setup_logging
        from bd.detector import Detector

        setup_logging(verbose)

        try:
            config = load_config(
                config_path,
                root,
                **{
                    "backend.kind": backend,
                    "backend.directory": masks_path,
                    "backend.seed": seed,
                    "backend.flip_probability": flip_probability,
                    "backend.false_blob_rate": false_blob_rate,
                    "grid.overlap": overlap,
                    "num_proc": num_proc,
                },
            )
            if config.backend.directory is None:
                config = config.override(**{"backend.directory": config.paths.labels})

            detector = Detector(
                grid=config.grid,
                components=config.components,
                filters=config.filters,
                backend=config.backend,
                out_path=output_path or config.paths.detections,
                images_path=config.paths.images,
                dots_path=config.paths.dots,
            )
            summaries = detector.run(image_ids or None, num_proc=config.num_proc)
            config.save(detector.out_path / "config.json")
            _ = detector.save()
        except Exception as e:
            fail("Unable to detect berries", e)

        if not summaries:
            rprint("⚠️  [yellow]No images to process[/yellow]")
            return

        kept = sum(s.n_kept for s in summaries)
        rejected = sum(s.n_rejected for s in summaries)
        rprint(
            f"✅ Detected {kept} berries in {len(summaries)} images "
            f"({rejected} components rejected), outputs in {detector.out_path}"
        )

    return detect
