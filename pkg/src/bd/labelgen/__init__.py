from .models import ClassMask, LabelGenConfig, SemanticClass, colorize
from .generate import berry_core_exists, generate_labels

__all__ = [
    "ClassMask",
    "LabelGenConfig",
    "SemanticClass",
    "berry_core_exists",
    "colorize",
    "generate_labels",
]
