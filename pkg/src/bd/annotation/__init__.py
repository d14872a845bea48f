from .models import (
    BACKGROUND_COLOR,
    BERRY_PALETTE,
    ColorAnnotationImage,
    DotAnnotations,
    InstanceMask,
)
from .color import instances_from_color_annotation, render_color_annotation
from .dots import load_dots, save_dots
from .relabel import relabel_raster_order

__all__ = [
    "BACKGROUND_COLOR",
    "BERRY_PALETTE",
    "ColorAnnotationImage",
    "DotAnnotations",
    "InstanceMask",
    "instances_from_color_annotation",
    "load_dots",
    "relabel_raster_order",
    "render_color_annotation",
    "save_dots",
]
