import logging
import numpy as np
import zlib

from enum import Enum
from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr
from typing_extensions import ClassVar, Literal

from bd.errors import (
    ConfigError,
    DimensionMismatchError,
    MaskNotFoundError,
    UnknownImageError,
)
from bd.labelgen import ClassMask
from bd.tiling import PatchGrid, PatchStack

from .noise import corrupt_patch

logger = logging.getLogger(__name__)


class BackendKind(str, Enum):
    ORACLE = "oracle"
    NOISY_ORACLE = "noisy_oracle"
    MASK_FILE = "mask_file"


class ClassifierBackend(BaseModel):
    """
    Pixel classifier boundary: maps an image patch to per-pixel classes.
    Backends are read-only after construction.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    def resolve(self, image_id: str) -> ClassMask:
        """Full image mask the backend crops patches from."""
        raise NotImplementedError

    def image_ids(self) -> list[str]:
        raise NotImplementedError

    def _crop(
        self, image_id: str, placement: tuple[int, int], patch_w: int, patch_h: int
    ) -> np.ndarray:
        mask = self.resolve(image_id)
        x0, y0 = placement
        if not (
            0 <= x0 <= mask.width - patch_w and 0 <= y0 <= mask.height - patch_h
        ):
            raise ValueError(
                f"Patch {patch_w}x{patch_h} at {placement} exceeds image "
                f"{image_id} ({mask.width}x{mask.height})"
            )
        return mask.labels[y0 : y0 + patch_h, x0 : x0 + patch_w]

    def classify_patch(
        self, image_id: str, placement: tuple[int, int], patch_w: int, patch_h: int
    ) -> ClassMask:
        return ClassMask(labels=self._crop(image_id, placement, patch_w, patch_h))


class OracleBackend(ClassifierBackend):
    """Returns exact crops of reference class masks."""

    kind: Literal[BackendKind.ORACLE] = BackendKind.ORACLE
    references: dict[str, ClassMask] = Field(default_factory=dict, repr=False)

    def resolve(self, image_id: str) -> ClassMask:
        try:
            return self.references[image_id]
        except KeyError:
            raise UnknownImageError(f"No reference mask for image '{image_id}'")

    def image_ids(self) -> list[str]:
        return sorted(self.references)

    @classmethod
    def from_directory(
        cls, directory: Path, image_ids: list[str] | None = None, **kwargs
    ) -> "OracleBackend":
        """Loads `<image_id>.png` reference masks, all of them by default."""
        if image_ids is None:
            paths = sorted(directory.glob("*.png"))
        else:
            paths = [directory / f"{image_id}.png" for image_id in image_ids]
        references = {}
        for path in paths:
            if not path.is_file():
                raise MaskNotFoundError(f"Reference mask not found: {path}")
            references[path.stem] = ClassMask.load(path)
        return cls(references=references, **kwargs)


class NoisyOracleBackend(OracleBackend):
    """
    Oracle crops corrupted by seeded noise. Randomness is derived from
    (seed, image_id, placement) so patches can be classified in any order.
    """

    kind: Literal[BackendKind.NOISY_ORACLE] = (  # type: ignore[assignment]
        BackendKind.NOISY_ORACLE
    )
    seed: int = Field(ge=0)
    flip_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    false_blob_rate: float = Field(default=0.0, ge=0.0)
    false_streak_rate: float = Field(default=0.0, ge=0.0)
    merge_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    contact_distance_px: int = Field(default=2, ge=1)

    def rng(self, image_id: str, placement: tuple[int, int]) -> np.random.Generator:
        x0, y0 = placement
        entropy = [self.seed, zlib.crc32(image_id.encode("utf-8")), x0, y0]
        return np.random.default_rng(np.random.SeedSequence(entropy))

    def classify_patch(
        self, image_id: str, placement: tuple[int, int], patch_w: int, patch_h: int
    ) -> ClassMask:
        labels = self._crop(image_id, placement, patch_w, patch_h)
        labels = corrupt_patch(
            labels,
            self.rng(image_id, placement),
            flip_probability=self.flip_probability,
            false_blob_rate=self.false_blob_rate,
            false_streak_rate=self.false_streak_rate,
            merge_probability=self.merge_probability,
            contact_distance_px=self.contact_distance_px,
        )
        return ClassMask(labels=labels)


class MaskFileBackend(ClassifierBackend):
    """
    Crops precomputed full-image predictions stored as `<image_id>.png`
    8-bit class masks, the exchange format with external networks.
    """

    kind: Literal[BackendKind.MASK_FILE] = BackendKind.MASK_FILE
    directory: Path

    _cache: dict[str, ClassMask] = PrivateAttr(default_factory=dict)

    def resolve(self, image_id: str) -> ClassMask:
        if image_id not in self._cache:
            path = self.directory / f"{image_id}.png"
            if not path.is_file():
                raise MaskNotFoundError(f"Prediction mask not found: {path}")
            logger.debug("Loading prediction mask %s", path)
            self._cache[image_id] = ClassMask.load(path)
        return self._cache[image_id]

    def image_ids(self) -> list[str]:
        return sorted(path.stem for path in self.directory.glob("*.png"))


def classify_patch(
    backend: ClassifierBackend,
    image_id: str,
    placement: tuple[int, int],
    patch_w: int,
    patch_h: int,
) -> ClassMask:
    return backend.classify_patch(image_id, placement, patch_w, patch_h)


def classify_patches(
    backend: ClassifierBackend, image_id: str, grid: PatchGrid
) -> PatchStack:
    """Classifies every placement of `grid` for one image."""
    mask = backend.resolve(image_id)
    if mask.shape != grid.shape:
        raise DimensionMismatchError(
            f"Image {image_id} is {mask.width}x{mask.height}, grid expects "
            f"{grid.image_w}x{grid.image_h}"
        )
    patches = [
        backend.classify_patch(image_id, placement, grid.patch_w, grid.patch_h).labels
        for placement in grid.placements
    ]
    return PatchStack(grid=grid, patches=patches)


class BackendConfig(BaseModel):
    """
    Serializable backend choice. `directory` holds reference class masks
    for the oracle kinds and prediction masks for MASK_FILE.
    """

    kind: BackendKind = BackendKind.ORACLE
    directory: Path | None = None
    seed: int = Field(default=0, ge=0)
    flip_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    false_blob_rate: float = Field(default=0.0, ge=0.0)
    false_streak_rate: float = Field(default=0.0, ge=0.0)
    merge_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    contact_distance_px: int = Field(default=2, ge=1)

    def build(self, image_ids: list[str] | None = None) -> ClassifierBackend:
        """The oracle kinds load only `image_ids` when given."""
        directory = self.directory
        if directory is None:
            raise ConfigError(f"Backend '{self.kind.value}' needs a mask directory")
        if not directory.is_dir():
            raise MaskNotFoundError(f"Mask directory not found: {directory}")

        match self.kind:
            case BackendKind.ORACLE:
                return OracleBackend.from_directory(directory, image_ids)
            case BackendKind.NOISY_ORACLE:
                return NoisyOracleBackend.from_directory(
                    directory,
                    image_ids,
                    seed=self.seed,
                    flip_probability=self.flip_probability,
                    false_blob_rate=self.false_blob_rate,
                    false_streak_rate=self.false_streak_rate,
                    merge_probability=self.merge_probability,
                    contact_distance_px=self.contact_distance_px,
                )
            case BackendKind.MASK_FILE:
                return MaskFileBackend(directory=directory)
