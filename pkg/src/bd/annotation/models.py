import imageio.v3 as iio
import numpy as np

from pathlib import Path
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from skimage.measure import label as label_regions
from typing_extensions import ClassVar

from bd.errors import AnnotationValidationError, MalformedAnnotationError

# 16-bit PNG storage
MAX_INSTANCES = 65535

RGB = tuple[int, int, int]

BERRY_PALETTE: list[RGB] = [
    (255, 0, 0),
    (0, 255, 0),
    (0, 0, 255),
    (255, 255, 0),
]
BACKGROUND_COLOR: RGB = (0, 0, 0)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


class InstanceMask(BaseModel):
    """
    Per-pixel berry instance ids, 0 is background and k >= 1 is berry k.
    Each instance is a single 4-connected region.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    ids: np.ndarray

    @field_validator("ids", mode="before")
    @classmethod
    def validate_ids(cls, v) -> np.ndarray:
        ids = np.asarray(v)
        if ids.ndim != 2:
            raise ValueError(f"Instance mask must be 2D, got shape {ids.shape}")
        if ids.size and not np.issubdtype(ids.dtype, np.integer):
            raise ValueError(f"Instance ids must be integers, got {ids.dtype}")
        if ids.size and ids.min() < 0:
            raise ValueError("Instance ids must be non-negative")
        if ids.size and ids.max() > MAX_INSTANCES:
            raise ValueError(f"Instance ids are capped at {MAX_INSTANCES}")
        return _readonly(ids.astype(np.int64))

    @model_validator(mode="after")
    def validate_single_region(self) -> "InstanceMask":
        # Same-valued 4-connected regions must match distinct ids one to one.
        regions = label_regions(self.ids, background=0, connectivity=1)
        if int(regions.max()) != len(self.instance_ids):
            raise ValueError("Every instance id must form one 4-connected region")
        return self

    @property
    def width(self) -> int:
        return int(self.ids.shape[1])

    @property
    def height(self) -> int:
        return int(self.ids.shape[0])

    @property
    def instance_ids(self) -> np.ndarray:
        values = np.unique(self.ids)
        return values[values != 0]

    @property
    def n_instances(self) -> int:
        return len(self.instance_ids)

    def pixel_counts(self) -> dict[int, int]:
        """Pixel count per instance id (background excluded)."""
        counts = np.bincount(self.ids.ravel())
        return {int(i): int(counts[i]) for i in self.instance_ids}

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        iio.imwrite(path, self.ids.astype(np.uint16))
        return path

    @classmethod
    def load(cls, path: Path) -> "InstanceMask":
        ids = iio.imread(path)
        if ids.ndim != 2:
            raise MalformedAnnotationError(
                f"{path} is not a single channel instance mask (shape {ids.shape})"
            )
        return cls(ids=ids.astype(np.int64))


class DotAnnotations(BaseModel):
    """
    One zero-based (x, y) pixel marker per manually counted berry,
    x is the column and y is the row.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    markers: list[tuple[int, int]] = []

    @field_validator("markers")
    @classmethod
    def validate_unique(cls, v: list[tuple[int, int]]) -> list[tuple[int, int]]:
        seen = set()
        for marker in v:
            if marker in seen:
                raise ValueError(f"Duplicate marker at {marker}")
            if marker[0] < 0 or marker[1] < 0:
                raise ValueError(f"Negative marker at {marker}")
            seen.add(marker)
        return v

    def __len__(self) -> int:
        return len(self.markers)

    def validate_bounds(self, width: int, height: int) -> "DotAnnotations":
        for x, y in self.markers:
            if not (0 <= x < width and 0 <= y < height):
                raise AnnotationValidationError(
                    f"Marker ({x}, {y}) lies outside of the {width}x{height} image"
                )
        return self

    def as_array(self) -> np.ndarray:
        """Markers as an (N, 2) integer array of (x, y)."""
        return np.asarray(self.markers, dtype=np.int64).reshape(-1, 2)


class ColorAnnotationImage(BaseModel):
    """
    Annotators' format: every berry is painted with one of four colors so
    that touching berries never share a color.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    rgb: np.ndarray
    palette: list[RGB] = BERRY_PALETTE
    background: RGB = BACKGROUND_COLOR

    @field_validator("rgb", mode="before")
    @classmethod
    def validate_rgb(cls, v) -> np.ndarray:
        rgb = np.asarray(v)
        if rgb.ndim != 3 or rgb.shape[2] < 3:
            raise ValueError(f"Color annotation must be HxWx3, got {rgb.shape}")
        return _readonly(rgb[:, :, :3].astype(np.uint8))

    @field_validator("palette")
    @classmethod
    def validate_palette(cls, v: list[RGB]) -> list[RGB]:
        if len(v) != 4 or len(set(v)) != 4:
            raise ValueError("Palette must list exactly 4 distinct berry colors")
        return v

    @model_validator(mode="after")
    def validate_background(self) -> "ColorAnnotationImage":
        if self.background in self.palette:
            raise ValueError("Background color must differ from the berry colors")
        return self

    @property
    def width(self) -> int:
        return int(self.rgb.shape[1])

    @property
    def height(self) -> int:
        return int(self.rgb.shape[0])

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        iio.imwrite(path, self.rgb)
        return path

    @classmethod
    def load(
        cls,
        path: Path,
        palette: list[RGB] = BERRY_PALETTE,
        background: RGB = BACKGROUND_COLOR,
    ) -> "ColorAnnotationImage":
        rgb = iio.imread(path)
        if rgb.ndim != 3:
            raise MalformedAnnotationError(f"{path} is not an RGB image")
        return cls(rgb=rgb, palette=palette, background=background)
