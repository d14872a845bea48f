import pytest

from bd.labelgen import LabelGenConfig, generate_labels
from bd.synth import generate_scene


@pytest.fixture
def scene_root(tmp_path, loose_scene_config):
    """Two loose scenes with reference class masks under `labels/`."""
    root = tmp_path / "data"
    scenes = {}
    for seed in (0, 1):
        scene = generate_scene(loose_scene_config.model_copy(update={"seed": seed}))
        name = f"scene_{seed:04d}"
        scene.save(root, name)
        generate_labels(scene.instances, LabelGenConfig()).save(
            root / "labels" / f"{name}.png"
        )
        scenes[name] = scene
    return root, scenes
