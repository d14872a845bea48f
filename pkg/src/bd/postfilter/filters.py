import math

from bd.components import BerryComponent

from .models import AxisMode, FilterConfig, FilterName, FilterResult, RejectedComponent


def axis_filter(comp: BerryComponent, cfg: FilterConfig) -> bool:
    """minor / major >= axis_ratio_min, degenerate components are rejected."""
    if comp.major_semi_axis_px <= 0.0:
        return False
    return comp.minor_semi_axis_px / comp.major_semi_axis_px >= cfg.axis_ratio_min


def circle_area(comp: BerryComponent, cfg: FilterConfig) -> float:
    """Area of the circle whose radius is the mean of the two axes."""
    radius = (comp.minor_semi_axis_px + comp.major_semi_axis_px) / 2.0
    if cfg.axis_mode == AxisMode.FULL:
        radius *= 2.0
    return math.pi * radius**2


def area_filter(comp: BerryComponent, cfg: FilterConfig) -> bool:
    return comp.area_px >= cfg.area_ratio_min * circle_area(comp, cfg)


def edge_filter(comp: BerryComponent, cfg: FilterConfig) -> bool:
    return comp.edge_surround_fraction >= cfg.edge_surround_min


FILTERS = {
    "axis": axis_filter,
    "area": area_filter,
    "edge": edge_filter,
}


def failed_filters(comp: BerryComponent, cfg: FilterConfig) -> list[FilterName]:
    return [name for name in cfg.enabled_filters if not FILTERS[name](comp, cfg)]


def apply_filters(comps: list[BerryComponent], cfg: FilterConfig) -> FilterResult:
    """
    Keeps components passing every enabled filter, rejected components
    carry the names of all filters they failed.
    """
    result = FilterResult()
    for comp in comps:
        reasons = failed_filters(comp, cfg)
        if reasons:
            result.rejected.append(RejectedComponent(component=comp, reasons=reasons))
        else:
            result.kept.append(comp)
    return result
