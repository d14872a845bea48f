from enum import Enum
from pydantic import BaseModel, Field
from typing import Literal, TypeAlias

from bd.components import BerryComponent

FilterName: TypeAlias = Literal["axis", "area", "edge"]
FILTER_ORDER: tuple[FilterName, ...] = ("axis", "area", "edge")


class AxisMode(str, Enum):
    # Radius = mean of the semi-axes.
    SEMI = "semi"
    # Radius = mean of the full axes, twice the semi reading.
    FULL = "full"


class FilterConfig(BaseModel):
    """
    Roundness and edge filters applied to berry components. All comparisons
    are inclusive: a value equal to its threshold passes.
    """

    axis_ratio_min: float = Field(default=0.3, ge=0.0, le=1.0)
    area_ratio_min: float = Field(default=0.3, ge=0.0, le=1.0)
    edge_surround_min: float = Field(default=0.4, ge=0.0, le=1.0)

    axis_enabled: bool = True
    area_enabled: bool = True
    edge_enabled: bool = True

    axis_mode: AxisMode = AxisMode.SEMI

    @property
    def enabled_filters(self) -> tuple[FilterName, ...]:
        flags = {
            "axis": self.axis_enabled,
            "area": self.area_enabled,
            "edge": self.edge_enabled,
        }
        return tuple(name for name in FILTER_ORDER if flags[name])

    def with_filters(self, names: tuple[FilterName, ...] | list[FilterName]):
        """Copy with exactly the filters in `names` enabled."""
        return self.model_copy(
            update={
                "axis_enabled": "axis" in names,
                "area_enabled": "area" in names,
                "edge_enabled": "edge" in names,
            }
        )


class RejectedComponent(BaseModel):
    component: BerryComponent
    reasons: list[FilterName]


class FilterResult(BaseModel):
    kept: list[BerryComponent] = []
    rejected: list[RejectedComponent] = []

    @property
    def rejected_components(self) -> list[BerryComponent]:
        return [r.component for r in self.rejected]
