import logging
import typer

from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from pydantic import BaseModel, ValidationError
from rich import print as rprint
from rich.logging import RichHandler
from tqdm.rich import tqdm
from typing import Any, Callable, NoReturn

from bd.config import PipelineConfig
from bd.errors import (
    AnnotationValidationError,
    ConfigError,
    DimensionMismatchError,
    MalformedAnnotationError,
    SceneGenerationError,
    UndefinedFitError,
    UnknownImageError,
    UnknownInstanceError,
)

logger = logging.getLogger(__name__)

EXIT_UNEXPECTED = 1
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_VALIDATION = 5

VALIDATION_ERRORS = (
    AnnotationValidationError,
    DimensionMismatchError,
    MalformedAnnotationError,
    UndefinedFitError,
    UnknownImageError,
    UnknownInstanceError,
    ValidationError,
    ValueError,
)


def exit_code(exc: BaseException) -> int:
    """Most specific documented exit code for `exc`."""
    if isinstance(exc, (ConfigError, SceneGenerationError)):
        return EXIT_CONFIG
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, VALIDATION_ERRORS):
        return EXIT_VALIDATION
    return EXIT_UNEXPECTED


def setup_logging(verbose: bool | None) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(show_path=False)],
        force=True,
    )


def fail(message: str, exc: BaseException) -> NoReturn:
    logger.debug("%s", message, exc_info=exc)
    rprint(f"⚠️  [yellow]{message}: {exc}[/yellow]")
    raise typer.Exit(code=exit_code(exc))


def load_config(
    config_path: Path | None, root: Path | None = None, **overrides: Any
) -> PipelineConfig:
    """
    Config file (defaults when None) with `paths.root` and dotted key
    overrides applied. Invalid values raise ConfigError.
    """
    try:
        config = (
            PipelineConfig.load(config_path)
            if config_path is not None
            else PipelineConfig()
        )
        return config.override(**{"paths.root": root}, **overrides)
    except (ValidationError, ValueError) as e:
        raise ConfigError(f"Invalid config: {e}") from e


class TaskFailure(BaseModel):
    """Picklable record of a failed batch item."""

    item: str
    message: str
    exit_code: int


def _attempt(fn: Callable[[Any], Any], item: Any) -> Any:
    try:
        return fn(item)
    except Exception as e:
        logger.debug("Failed on %s", item, exc_info=e)
        return TaskFailure(item=str(item), message=str(e), exit_code=exit_code(e))


def run_tasks(
    fn: Callable[[Any], Any], items: list, num_proc: int, desc: str
) -> list[tuple[Any, Any]]:
    """
    (item, result) in the order of `items`, failures come back as
    TaskFailure instead of raising. `fn` must be picklable when
    `num_proc` > 1.
    """
    results = {}
    if num_proc <= 1:
        for index, item in enumerate(tqdm(items, desc=desc)):
            results[index] = _attempt(fn, item)
    else:
        with ProcessPoolExecutor(max_workers=num_proc) as executor:
            futures = {
                executor.submit(_attempt, fn, item): index
                for index, item in enumerate(items)
            }
            for future in tqdm(as_completed(futures), total=len(futures), desc=desc):
                results[futures[future]] = future.result()
    return [(item, results[index]) for index, item in enumerate(items)]


def report_failures(results: list[tuple[Any, Any]]) -> None:
    """Prints every failure and exits with the code of the first one."""
    failures = [r for _, r in results if isinstance(r, TaskFailure)]
    for failure in failures:
        rprint(f"⚠️  [yellow]{failure.item}: {failure.message}[/yellow]")
    if failures:
        raise typer.Exit(code=failures[0].exit_code)
