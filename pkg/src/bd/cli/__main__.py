import sys
import typer

from rich import print as rprint

from bd.errors import BerryDetectionError

app = typer.Typer(
    name="berry-detection",
    help="Berry Detection: count single grape berries from segmentation masks.",
    add_completion=False,
    no_args_is_help=True,
)


def _rich_exception_handler(exc_type, exc_value, exc_traceback):
    """Print pipeline errors without a traceback."""
    if exc_type is KeyboardInterrupt:
        rprint("\n ⚠️  [yellow]Operation cancelled by user[/yellow]")
        sys.exit(1)
    elif issubclass(exc_type, BerryDetectionError):
        rprint(f"⚠️  [yellow]{exc_type.__name__}: {exc_value}[/yellow]")
        sys.exit(1)
    else:
        sys.__excepthook__(exc_type, exc_value, exc_traceback)


sys.excepthook = _rich_exception_handler
