from .models import GridConfig, PatchGrid, PatchStack
from .grid import plan_grid
from .stitch import extract, stitch_majority

__all__ = [
    "GridConfig",
    "PatchGrid",
    "PatchStack",
    "extract",
    "plan_grid",
    "stitch_majority",
]
