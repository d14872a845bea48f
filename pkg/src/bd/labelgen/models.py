import imageio.v3 as iio
import json
import numpy as np

from enum import IntEnum
from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing_extensions import ClassVar

from bd.errors import DimensionMismatchError


class SemanticClass(IntEnum):
    BACKGROUND = 0
    BERRY = 1
    EDGE = 2


# Preview colors only, never parsed back.
CLASS_COLORS = np.array(
    [
        (0, 0, 0),  # background
        (0, 255, 0),  # berry
        (255, 0, 0),  # edge
    ],
    dtype=np.uint8,
)


class ClassMask(BaseModel):
    """
    Per-pixel semantic label in {background, berry, edge}.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    labels: np.ndarray

    @field_validator("labels", mode="before")
    @classmethod
    def validate_labels(cls, v) -> np.ndarray:
        labels = np.asarray(v)
        if labels.ndim != 2:
            raise ValueError(f"Class mask must be 2D, got shape {labels.shape}")
        if labels.size and (labels.min() < 0 or labels.max() > SemanticClass.EDGE):
            raise ValueError("Class mask values must be 0, 1 or 2")
        labels = np.array(labels, dtype=np.uint8, copy=True)
        labels.flags.writeable = False
        return labels

    @property
    def width(self) -> int:
        return int(self.labels.shape[1])

    @property
    def height(self) -> int:
        return int(self.labels.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def class_counts(self) -> dict[SemanticClass, int]:
        counts = np.bincount(self.labels.ravel(), minlength=3)
        return {c: int(counts[c]) for c in SemanticClass}

    def require_shape(self, other: "ClassMask") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"Class masks differ in size: {self.width}x{self.height} "
                f"vs {other.width}x{other.height}"
            )

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        iio.imwrite(path, self.labels)
        return path

    @classmethod
    def load(cls, path: Path) -> "ClassMask":
        labels = iio.imread(path)
        if labels.ndim != 2:
            raise ValueError(f"{path} is not a single channel class mask")
        return cls(labels=labels)


def colorize(mask: ClassMask) -> np.ndarray:
    """RGB preview: background black, berry green, edge red."""
    return CLASS_COLORS[mask.labels]


class LabelGenConfig(BaseModel):
    """
    Label generation configuration, the edge is an inner band of fixed
    thickness (chessboard distance) around every berry instance.
    """

    edge_thickness_px: int = Field(
        default=2,
        ge=1,
        description="Width of the inner edge band in pixels (2 or 3 in practice).",
    )

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        _ = path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: Path) -> "LabelGenConfig":
        with path.open("r") as f:
            return cls(**json.load(f))
