import importlib.metadata
import typer

from rich import print as rprint

PACKAGE = "berry-detection"

# Libraries whose versions change pipeline numerics.
NUMERIC_PACKAGES = ("numpy", "scipy", "scikit-image")


def _installed(name: str) -> str:
    try:
        return importlib.metadata.version(name)
    except importlib.metadata.PackageNotFoundError:
        return "not installed"


def register_version(app: typer.Typer):
    @app.command()
    def version(
        deps: bool = typer.Option(
            False, "--deps", help="Also list numpy, scipy and scikit-image versions."
        ),
    ) -> None:
        """Show the installed version of `berry-detection` package."""
        try:
            installed = importlib.metadata.version(PACKAGE)
        except importlib.metadata.PackageNotFoundError:
            rprint(
                f"⚠️  [yellow]{PACKAGE} version unknown (package not installed)[/yellow]"
            )
            raise typer.Exit()

        rprint(f"✅ {PACKAGE} version {installed}")
        if deps:
            for name in NUMERIC_PACKAGES:
                rprint(f"   {name} {_installed(name)}")

    return version
