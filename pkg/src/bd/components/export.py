import csv

from pathlib import Path

from .models import BerryComponent

COMPONENT_COLUMNS = [
    "id",
    "area_px",
    "centroid_x",
    "centroid_y",
    "major_semi_axis",
    "minor_semi_axis",
    "edge_surround_fraction",
]


def component_row(comp: BerryComponent) -> list:
    return [
        comp.id,
        comp.area_px,
        f"{comp.centroid[0]:.6f}",
        f"{comp.centroid[1]:.6f}",
        f"{comp.major_semi_axis_px:.6f}",
        f"{comp.minor_semi_axis_px:.6f}",
        f"{comp.edge_surround_fraction:.6f}",
    ]


def save_components_csv(
    comps: list[BerryComponent],
    path: Path,
    extra_columns: dict[str, list[str]] | None = None,
) -> Path:
    """
    One row per component with a stable column order. `extra_columns`
    appends named per-component columns (e.g. reject reasons).
    """
    extra_columns = extra_columns or {}
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([*COMPONENT_COLUMNS, *extra_columns])
        for index, comp in enumerate(comps):
            extras = [values[index] for values in extra_columns.values()]
            writer.writerow([*component_row(comp), *extras])

    return path
