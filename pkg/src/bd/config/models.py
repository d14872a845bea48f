import json

from pathlib import Path
from pydantic import BaseModel, Field

from bd.classify import BackendConfig
from bd.components import ComponentConfig
from bd.labelgen import LabelGenConfig
from bd.metrics import EvaluationConfig
from bd.postfilter import FilterConfig
from bd.synth import SceneConfig
from bd.tiling import GridConfig


class PathsConfig(BaseModel):
    """
    Data layout below `root`, one folder per artifact kind. Synthetic
    scenes are written straight into `root`.
    """

    root: Path = Path("data")

    @property
    def images(self) -> Path:
        return self.root / "images"

    @property
    def annotations(self) -> Path:
        return self.root / "annotations"

    @property
    def instances(self) -> Path:
        return self.root / "instances"

    @property
    def dots(self) -> Path:
        return self.root / "dots"

    @property
    def scenes(self) -> Path:
        return self.root / "scenes"

    @property
    def labels(self) -> Path:
        return self.root / "labels"

    @property
    def detections(self) -> Path:
        return self.root / "detections"

    @property
    def reports(self) -> Path:
        return self.root / "reports"


class SynthConfig(BaseModel):
    """`n_scenes` scenes with seeds `scene.seed`, `scene.seed + 1`, ..."""

    scene: SceneConfig = Field(default_factory=lambda: SceneConfig(seed=0))
    n_scenes: int = Field(default=10, ge=0)
    prefix: str = "scene"
    group: str | None = None
    augment: bool = False

    def scene_config(self, index: int) -> SceneConfig:
        return self.scene.model_copy(update={"seed": self.scene.seed + index})

    def scene_name(self, index: int) -> str:
        return f"{self.prefix}_{self.scene.seed + index:04d}"


class PipelineConfig(BaseModel):
    """
    Every setting of a labelgen, detect, eval or synth run. Defaults follow
    a 512x384 grid with 50% overlap, 2 px edges, 25 px minimum components
    and 0.3/0.3/0.4 filter thresholds.
    """

    labelgen: LabelGenConfig = Field(default_factory=LabelGenConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    components: ComponentConfig = Field(default_factory=ComponentConfig)
    filters: FilterConfig = Field(default_factory=FilterConfig)
    backend: BackendConfig = Field(default_factory=BackendConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)
    paths: PathsConfig = Field(default_factory=PathsConfig)
    groups: dict[str, str] = Field(
        default_factory=dict,
        description="Group label (e.g. VSP, SMPH) per image id.",
    )
    num_proc: int = Field(default=1, ge=1)

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        _ = path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: Path) -> "PipelineConfig":
        with path.open("r") as f:
            return cls(**json.load(f))

    def override(self, **updates) -> "PipelineConfig":
        """
        Copy with dotted keys (`"grid.overlap"`) replaced, None values are
        skipped. The result is validated again.
        """
        data = self.model_dump()
        for key, value in updates.items():
            if value is None:
                continue
            *parents, name = key.split(".")
            node = data
            for parent in parents:
                node = node[parent]
            node[name] = value
        return PipelineConfig.model_validate(data)
