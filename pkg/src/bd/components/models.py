import numpy as np

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import ClassVar


class ComponentConfig(BaseModel):
    """
    Connected components smaller than `min_component_px` are discarded
    as noise fragments.
    """

    min_component_px: int = Field(default=25, ge=1)


class BerryComponent(BaseModel):
    """
    One 4-connected region of BERRY pixels with the geometry used by the
    post-filters. Coordinates are stored as (row, col) pairs, the centroid
    as (x, y).
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(
        arbitrary_types_allowed=True, frozen=True
    )

    id: int = Field(ge=1)
    coords: np.ndarray
    area_px: int = Field(ge=1)
    centroid: tuple[float, float]
    major_semi_axis_px: float = Field(ge=0.0)
    minor_semi_axis_px: float = Field(ge=0.0)
    edge_surround_fraction: float = Field(ge=0.0, le=1.0)

    @field_validator("coords", mode="before")
    @classmethod
    def validate_coords(cls, v) -> np.ndarray:
        coords = np.asarray(v, dtype=np.int64).reshape(-1, 2)
        coords.flags.writeable = False
        return coords

    @model_validator(mode="after")
    def validate_geometry(self) -> "BerryComponent":
        if len(self.coords) != self.area_px:
            raise ValueError(
                f"Component {self.id}: area {self.area_px} != {len(self.coords)} pixels"
            )
        if self.minor_semi_axis_px > self.major_semi_axis_px:
            raise ValueError(f"Component {self.id}: minor axis exceeds major axis")
        return self

    @property
    def rows(self) -> np.ndarray:
        return self.coords[:, 0]

    @property
    def cols(self) -> np.ndarray:
        return self.coords[:, 1]

    @property
    def pixels(self) -> set[tuple[int, int]]:
        """Pixel set as (x, y) pairs."""
        return set(zip(self.cols.tolist(), self.rows.tolist()))

    @property
    def axis_ratio(self) -> float:
        if self.major_semi_axis_px == 0:
            return 0.0
        return self.minor_semi_axis_px / self.major_semi_axis_px
