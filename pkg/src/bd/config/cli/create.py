import typer

from pathlib import Path
from rich import print as rprint
from typing_extensions import Annotated


def register_config_create(app: typer.Typer):
    from bd.cli.options import VerboseOption

    @app.command(name="create")
    def config_create(
        path: Annotated[Path, typer.Argument(help="Config file to write.")] = Path(
            "config.json"
        ),
        root: Annotated[
            Path | None, typer.Option("--root", help="Data directory.")
        ] = None,
        force: Annotated[
            bool, typer.Option("--force", help="Overwrite an existing file.")
        ] = False,
        verbose: VerboseOption = False,
    ) -> None:
        """Write a pipeline config file with default settings."""
        from bd.cli.utils import EXIT_CONFIG, fail
        from bd.config import PipelineConfig

        if path.exists() and not force:
            rprint(
                f"⚠️  [yellow]{path} already exists, use --force to replace it[/yellow]"
            )
            raise typer.Exit(code=EXIT_CONFIG)

        try:
            config = PipelineConfig().override(**{"paths.root": root})
            config.save(path)
            rprint(f"✅ Wrote config to {path}")
        except Exception as e:
            fail("Unable to create config file", e)

    return config_create
