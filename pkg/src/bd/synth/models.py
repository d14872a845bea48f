import imageio.v3 as iio
import json
import numpy as np

from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import ClassVar

from bd.annotation import (
    DotAnnotations,
    InstanceMask,
    render_color_annotation,
    save_dots,
)

SCENE_FOLDERS = ("images", "annotations", "instances", "dots", "scenes")


class SceneConfig(BaseModel):
    """
    Synthetic vineyard-like scene. Berries are discs grouped into clusters,
    `touch_probability` is the chance that a berry is placed tangent to or
    overlapping a berry already in its cluster (compact bunches near 1,
    loose bunches near 0).
    """

    image_w: int = Field(default=512, ge=1)
    image_h: int = Field(default=384, ge=1)
    n_clusters: int = Field(default=3, ge=0)
    berries_per_cluster: tuple[int, int] = (5, 15)
    radius_px: tuple[int, int] = (6, 12)
    cluster_spread_px: float = Field(default=30.0, gt=0.0)
    touch_probability: float = Field(default=0.3, ge=0.0, le=1.0)
    seed: int = Field(ge=0)

    min_visible_px: int = Field(
        default=25,
        ge=1,
        description="Instances occluded below this many pixels are removed.",
    )
    max_retries: int = Field(default=200, ge=1)

    @field_validator("berries_per_cluster", "radius_px")
    @classmethod
    def validate_range(cls, v: tuple[int, int]) -> tuple[int, int]:
        low, high = v
        if low > high:
            raise ValueError(f"Empty range {v}")
        if low < 0:
            raise ValueError(f"Range {v} must be non-negative")
        return v

    @model_validator(mode="after")
    def validate_radius(self) -> "SceneConfig":
        if self.radius_px[0] < 2:
            raise ValueError(
                f"Berry radius must be at least 2 px, got {self.radius_px}"
            )
        return self

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        _ = path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: Path) -> "SceneConfig":
        with path.open("r") as f:
            return cls(**json.load(f))


class SceneSidecar(BaseModel):
    name: str
    n_berries: int
    flipped: bool = False
    group: str | None = None
    config: SceneConfig


class Scene(BaseModel):
    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    config: SceneConfig
    instances: InstanceMask
    dots: DotAnnotations
    image: np.ndarray
    flipped: bool = False

    @field_validator("image", mode="before")
    @classmethod
    def validate_image(cls, v) -> np.ndarray:
        image = np.asarray(v)
        if image.ndim != 2:
            raise ValueError(f"Scene image must be grayscale, got {image.shape}")
        return image.astype(np.uint8)

    @model_validator(mode="after")
    def validate_counts(self) -> "Scene":
        if self.instances.n_instances != len(self.dots):
            raise ValueError(
                f"{self.instances.n_instances} instances but {len(self.dots)} dots"
            )
        if self.image.shape != self.instances.ids.shape:
            raise ValueError("Scene image and instance mask differ in size")
        return self

    @property
    def n_berries(self) -> int:
        return len(self.dots)

    def save(self, directory: Path, name: str, group: str | None = None) -> Path:
        """
        Writes `<folder>/<name>.*` into the images, annotations (four color),
        instances, dots and scenes folders of `directory`. Returns the
        sidecar path.
        """
        for folder in SCENE_FOLDERS:
            (directory / folder).mkdir(parents=True, exist_ok=True)

        iio.imwrite(directory / "images" / f"{name}.png", self.image)
        render_color_annotation(self.instances).save(
            directory / "annotations" / f"{name}.png"
        )
        self.instances.save(directory / "instances" / f"{name}.png")
        save_dots(self.dots, directory / "dots" / f"{name}.csv")

        sidecar = SceneSidecar(
            name=name,
            n_berries=self.n_berries,
            flipped=self.flipped,
            group=group,
            config=self.config,
        )
        path = directory / "scenes" / f"{name}.json"
        _ = path.write_text(sidecar.model_dump_json(indent=2))
        return path
