import typer

from pathlib import Path
from typing_extensions import Annotated


def register_plot_data(app: typer.Typer):
    from bd.cli.options import ConfigOption, RootOption, VerboseOption

    @app.command(name="plot-data", rich_help_panel="Pipeline Commands")
    def plot_data(
        report_path: Annotated[
            Path | None,
            typer.Argument(help="eval.json, defaults to <root>/reports/eval.json."),
        ] = None,
        output_path: Annotated[
            Path | None,
            typer.Option("--output", help="Folder for pairs.csv and fit.csv."),
        ] = None,
        config_path: ConfigOption = None,
        root: RootOption = None,
        verbose: VerboseOption = False,
    ) -> None:
        """
        Writes the (manual, detected) count pairs and their fitted lines as
        CSV for external plotting.
        """
        from rich import print as rprint

        from bd.cli.utils import fail, load_config, setup_logging
        from bd.metrics import load_report, save_plot_data

        setup_logging(verbose)

        try:
            config = load_config(config_path, root)
            report_path = report_path or config.paths.reports / "eval.json"
            report = load_report(report_path)
            output_path = output_path or report_path.parent
            pairs_path, fit_path = save_plot_data(report, output_path)
            config.save(output_path / "config.json")
        except Exception as e:
            fail("Unable to write plot data", e)

        rprint(
            f"✅ Wrote {len(report.pairs)} count pairs to {pairs_path} and {fit_path}"
        )

    return plot_data
