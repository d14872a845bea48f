from .models import Scene, SceneConfig, SceneSidecar
from .augment import (
    AugmentMode,
    augment,
    augment_scene,
    hflip_dots,
    hflip_mask,
    random_augment,
)
from .generate import generate_scene
from .render import render_image

__all__ = [
    "AugmentMode",
    "Scene",
    "SceneConfig",
    "SceneSidecar",
    "augment",
    "augment_scene",
    "generate_scene",
    "hflip_dots",
    "hflip_mask",
    "random_augment",
    "render_image",
]
