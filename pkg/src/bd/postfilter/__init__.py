from .models import (
    AxisMode,
    FilterConfig,
    FilterName,
    FilterResult,
    RejectedComponent,
)
from .filters import (
    apply_filters,
    area_filter,
    axis_filter,
    circle_area,
    edge_filter,
)
from .ablation import ABLATION_FILTER_SETS, AblationRow, ablation, save_ablation_csv

__all__ = [
    "ABLATION_FILTER_SETS",
    "AblationRow",
    "AxisMode",
    "FilterConfig",
    "FilterName",
    "FilterResult",
    "RejectedComponent",
    "ablation",
    "apply_filters",
    "area_filter",
    "axis_filter",
    "circle_area",
    "edge_filter",
    "save_ablation_csv",
]
