from .models import BerryComponent, ComponentConfig
from .geometry import compute_axes, edge_surround
from .label import component_label_map, label_components, measure_component
from .export import COMPONENT_COLUMNS, save_components_csv

__all__ = [
    "BerryComponent",
    "COMPONENT_COLUMNS",
    "ComponentConfig",
    "component_label_map",
    "compute_axes",
    "edge_surround",
    "label_components",
    "measure_component",
    "save_components_csv",
]
