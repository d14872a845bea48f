import csv

from pathlib import Path

from bd.errors import AnnotationValidationError

from .models import DotAnnotations


def load_dots(
    path: Path, width: int | None = None, height: int | None = None
) -> DotAnnotations:
    """
    Reads "x,y" marker lines (zero-based column, row, no header).
    Bounds are checked when image dimensions are supplied.
    """
    markers: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    with open(path, "r", encoding="utf-8", newline="") as f:
        for line_number, row in enumerate(csv.reader(f), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                x, y = (int(cell) for cell in row)
            except ValueError:
                raise AnnotationValidationError(
                    f"{path}:{line_number}: expected 'x,y' integers, got {row}"
                )
            marker = (x, y)
            if marker in seen:
                raise AnnotationValidationError(
                    f"{path}:{line_number}: duplicate marker {marker}"
                )
            if x < 0 or y < 0:
                raise AnnotationValidationError(
                    f"{path}:{line_number}: negative marker {marker}"
                )
            seen.add(marker)
            markers.append(marker)

    dots = DotAnnotations(markers=markers)
    if width is not None and height is not None:
        dots.validate_bounds(width, height)
    return dots


def save_dots(dots: DotAnnotations, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerows(dots.markers)
    return path
