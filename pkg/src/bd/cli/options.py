import typer

from pathlib import Path
from typing_extensions import Annotated

VerboseOption = Annotated[
    bool | None, typer.Option("--verbose", "-v", help="Enable verbose logging")
]

NumProc = Annotated[
    int | None,
    typer.Option(
        "--num-proc",
        help="Enable multiprocessing by specifying number of processes to use.",
    ),
]

ConfigOption = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Pipeline config file (JSON)."),
]

RootOption = Annotated[
    Path | None,
    typer.Option("--root", help="Data directory, overrides paths.root."),
]
