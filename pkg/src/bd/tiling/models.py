import numpy as np

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import ClassVar


class GridConfig(BaseModel):
    """
    Sliding window parameters, defaults are 512x384 patches (w x h)
    with 50% overlap in both directions.
    """

    patch_w: int = Field(default=512, ge=1)
    patch_h: int = Field(default=384, ge=1)
    overlap: float = Field(default=0.5, ge=0.0, lt=1.0)

    def plan(self, image_w: int, image_h: int) -> "PatchGrid":
        from .grid import plan_grid

        return plan_grid(image_w, image_h, self.patch_w, self.patch_h, self.overlap)


class PatchGrid(BaseModel):
    """
    Deterministic tiling layout shared by patch extraction and stitching.
    Placements are (x0, y0) origins sorted row-major.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True)

    image_w: int = Field(ge=1)
    image_h: int = Field(ge=1)
    patch_w: int = Field(ge=1)
    patch_h: int = Field(ge=1)
    stride_x: int = Field(ge=1)
    stride_y: int = Field(ge=1)
    placements: list[tuple[int, int]]

    @model_validator(mode="after")
    def validate_layout(self) -> "PatchGrid":
        if self.patch_w > self.image_w or self.patch_h > self.image_h:
            raise ValueError("Patch must fit inside the image")
        if self.placements != sorted(set(self.placements), key=lambda p: (p[1], p[0])):
            raise ValueError("Placements must be unique and sorted row-major")
        for x0, y0 in self.placements:
            if not (
                0 <= x0 <= self.image_w - self.patch_w
                and 0 <= y0 <= self.image_h - self.patch_h
            ):
                raise ValueError(f"Placement ({x0}, {y0}) exceeds the image")
        if not self.coverage().all():
            raise ValueError("Placements leave pixels uncovered")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return (self.image_h, self.image_w)

    def window(self, index: int) -> tuple[slice, slice]:
        """Row and column slices of placement `index`."""
        x0, y0 = self.placements[index]
        return slice(y0, y0 + self.patch_h), slice(x0, x0 + self.patch_w)

    def coverage(self) -> np.ndarray:
        """Number of placements covering each pixel."""
        counts = np.zeros(self.shape, dtype=np.int32)
        for x0, y0 in self.placements:
            counts[y0 : y0 + self.patch_h, x0 : x0 + self.patch_w] += 1
        return counts


class PatchStack(BaseModel):
    """
    One patch (class labels or image tile) per grid placement.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    grid: PatchGrid
    patches: list[np.ndarray]

    @field_validator("patches", mode="before")
    @classmethod
    def validate_patches(cls, v) -> list[np.ndarray]:
        return [np.asarray(patch) for patch in v]

    @model_validator(mode="after")
    def validate_sizes(self) -> "PatchStack":
        if len(self.patches) != len(self.grid.placements):
            raise ValueError(
                f"Expected {len(self.grid.placements)} patches, got {len(self.patches)}"
            )
        expected = (self.grid.patch_h, self.grid.patch_w)
        for index, patch in enumerate(self.patches):
            if patch.shape[:2] != expected:
                raise ValueError(
                    f"Patch {index} has shape {patch.shape[:2]}, expected {expected}"
                )
        return self
