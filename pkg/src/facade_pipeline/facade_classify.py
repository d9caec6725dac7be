"""Per-elevation classification: window presence, facade type, window ratio.

Facade types are decided in priority order: a window whose area is within a
relative tolerance of the whole elevation makes it a curtain wall; failing
that, two or more windows make it a repeated-single-window facade; anything
else is "other". The window ratio is the clipped window area as a
percentage of the elevation area, binned into four quarters.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from .geometry import BoundingBox, BuildingAssociation, area, intersection_area


class FacadeType(str, Enum):
    FRONT_CURTAIN_WALL = "front_curtain_wall"
    REPEATED_SINGLE_WINDOWS = "repeated_single_windows"
    OTHER = "other"


class RatioBin(str, Enum):
    UPTO_25 = "upto_25"
    UPTO_50 = "upto_50"
    UPTO_75 = "upto_75"
    UPTO_100 = "upto_100"


@dataclass(frozen=True)
class ClassifyConfig:
    """Relative slack for the curtain-wall test, as a fraction of the
    elevation area."""

    curtain_wall_area_tolerance: float = 0.10

    def __post_init__(self) -> None:
        if not 0.0 <= self.curtain_wall_area_tolerance < 1.0:
            raise ValueError(
                "curtain_wall_area_tolerance must be in [0, 1), got "
                f"{self.curtain_wall_area_tolerance}"
            )


@dataclass(frozen=True)
class FacadeRecord:
    """Extracted information for one building elevation."""

    building_index: int
    has_windows: bool
    facade_type: FacadeType | None
    window_ratio_percent: float
    ratio_bin: RatioBin | None
    wall_color: str | None

    def __post_init__(self) -> None:
        if not self.has_windows:
            if self.facade_type is not None or self.ratio_bin is not None:
                raise ValueError("window-free record must not carry type or bin")
            if self.window_ratio_percent != 0:
                raise ValueError("window-free record must have ratio 0")
        else:
            if self.facade_type is None or self.ratio_bin is None:
                raise ValueError("windowed record must carry type and bin")
            if self.ratio_bin is not bin_ratio(self.window_ratio_percent):
                raise ValueError(
                    f"ratio_bin {self.ratio_bin} inconsistent with "
                    f"ratio {self.window_ratio_percent}"
                )

    def to_dict(self) -> dict[str, Any]:
        return {
            "building_index": self.building_index,
            "has_windows": self.has_windows,
            "facade_type": self.facade_type.value if self.facade_type else None,
            "window_ratio_percent": self.window_ratio_percent,
            "ratio_bin": self.ratio_bin.value if self.ratio_bin else None,
            "wall_color": self.wall_color,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FacadeRecord":
        return cls(
            building_index=data["building_index"],
            has_windows=data["has_windows"],
            facade_type=FacadeType(data["facade_type"]) if data["facade_type"] else None,
            window_ratio_percent=data["window_ratio_percent"],
            ratio_bin=RatioBin(data["ratio_bin"]) if data["ratio_bin"] else None,
            wall_color=data["wall_color"],
        )


def classify_presence(assoc: BuildingAssociation) -> bool:
    """True iff the elevation has at least one associated window."""
    return len(assoc.windows) > 0


def classify_type(
    building: BoundingBox,
    windows: Sequence[BoundingBox],
    cfg: ClassifyConfig,
) -> FacadeType:
    """Facade type of an elevation given its associated window boxes.

    The curtain-wall test compares raw areas exactly (the tolerance float is
    treated as the exact binary fraction it denotes), so results are
    invariant under uniform integer scaling of all boxes.
    """
    building_area = area(building)
    tolerance = Fraction(cfg.curtain_wall_area_tolerance)
    slack = tolerance * building_area
    for window in windows:
        if building_area - area(window) <= slack:
            return FacadeType.FRONT_CURTAIN_WALL
    if len(windows) >= 2:
        return FacadeType.REPEATED_SINGLE_WINDOWS
    return FacadeType.OTHER


def window_ratio(building: BoundingBox, windows: Sequence[BoundingBox]) -> float:
    """Window share of the elevation area, in percent.

    Window boxes are clipped to the elevation before summation, so the
    result stays within [0, 100] for pairwise-disjoint windows. Overlapping
    windows can push the sum past 100; the value is then clamped with a
    warning.
    """
    building_area = area(building)
    clipped_total = sum(intersection_area(w, building) for w in windows)
    ratio = 100.0 * clipped_total / building_area
    if ratio > 100.0:
        warnings.warn(
            f"overlapping window boxes exceed the elevation area "
            f"(raw ratio {ratio:.2f}%); clamping to 100",
            RuntimeWarning,
            stacklevel=2,
        )
        return 100.0
    return ratio


def bin_ratio(ratio_percent: float) -> RatioBin:
    """Quarter bin for a nonzero ratio, upper-inclusive: (0,25] ... (75,100]."""
    if not 0.0 < ratio_percent <= 100.0:
        raise ValueError(f"ratio must be in (0, 100], got {ratio_percent}")
    if ratio_percent <= 25.0:
        return RatioBin.UPTO_25
    if ratio_percent <= 50.0:
        return RatioBin.UPTO_50
    if ratio_percent <= 75.0:
        return RatioBin.UPTO_75
    return RatioBin.UPTO_100


def build_record(
    building_index: int,
    building: BoundingBox,
    assoc: BuildingAssociation,
    windows: Sequence[BoundingBox],
    cfg: ClassifyConfig,
    wall_color: str | None,
) -> FacadeRecord:
    """Compose the per-elevation record from the upstream results.

    ``windows`` is the full per-image window list; ``assoc`` selects the
    indices belonging to this building.
    """
    associated = [windows[i] for i in assoc.windows]
    if not associated:
        return FacadeRecord(
            building_index=building_index,
            has_windows=False,
            facade_type=None,
            window_ratio_percent=0.0,
            ratio_bin=None,
            wall_color=wall_color,
        )
    ratio = window_ratio(building, associated)
    return FacadeRecord(
        building_index=building_index,
        has_windows=True,
        facade_type=classify_type(building, associated, cfg),
        window_ratio_percent=ratio,
        ratio_bin=bin_ratio(ratio),
        wall_color=wall_color,
    )
