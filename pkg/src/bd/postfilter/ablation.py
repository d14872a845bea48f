import csv

from pathlib import Path
from pydantic import BaseModel

from bd.components import BerryComponent

from .filters import apply_filters
from .models import FilterConfig, FilterName

# Cumulative rows first, then the single filters not covered by them.
ABLATION_FILTER_SETS: list[tuple[FilterName, ...]] = [
    (),
    ("axis",),
    ("axis", "area"),
    ("axis", "area", "edge"),
    ("area",),
    ("edge",),
]


def filter_set_name(names: tuple[FilterName, ...]) -> str:
    return "+".join(names) if names else "none"


class AblationRow(BaseModel):
    filters: str
    kept: int
    rejected: int


def ablation(comps: list[BerryComponent], cfg: FilterConfig) -> list[AblationRow]:
    """Kept/rejected counts for each filter set, thresholds taken from `cfg`."""
    rows = []
    for names in ABLATION_FILTER_SETS:
        result = apply_filters(comps, cfg.with_filters(names))
        rows.append(
            AblationRow(
                filters=filter_set_name(names),
                kept=len(result.kept),
                rejected=len(result.rejected),
            )
        )
    return rows


def save_ablation_csv(rows: list[AblationRow], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["filters", "kept", "rejected"])
        for row in rows:
            writer.writerow([row.filters, row.kept, row.rejected])
    return path
