import typer

app = typer.Typer(
    name="config",
    help="Create configuration files used by the pipeline commands.",
    add_completion=False,
    no_args_is_help=True,
)
