"""Axis-aligned box arithmetic and the window-to-elevation association rule.

Boxes live on an integer pixel grid and are given by their top-left corner
plus width and height. A window is associated with the building elevation
that contains at least ``containment_threshold`` of its own area, picking
the elevation with the largest overlap when several qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned rectangle on the pixel grid.

    ``(x, y)`` is the top-left corner; the box spans the half-open ranges
    ``[x, x + width)`` horizontally and ``[y, y + height)`` vertically.
    """

    x: int
    y: int
    width: int
    height: int

    def __post_init__(self) -> None:
        for name in ("x", "y", "width", "height"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{name} must be an integer, got {value!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError(
                f"box dimensions must be positive, got {self.width}x{self.height}"
            )
        if self.x < 0 or self.y < 0:
            raise ValueError(f"box origin must be non-negative, got ({self.x}, {self.y})")

    @property
    def min_x(self) -> int:
        return self.x

    @property
    def min_y(self) -> int:
        return self.y

    @property
    def max_x(self) -> int:
        return self.x + self.width

    @property
    def max_y(self) -> int:
        return self.y + self.height

    def contains_point(self, px: int, py: int) -> bool:
        """Whether pixel ``(px, py)`` (by its grid cell) lies inside the box."""
        return self.x <= px < self.max_x and self.y <= py < self.max_y


@dataclass(frozen=True)
class AssociationConfig:
    """Fraction of a window's area that must lie inside an elevation box."""

    containment_threshold: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.containment_threshold <= 1.0:
            raise ValueError(
                "containment_threshold must be in (0, 1], got "
                f"{self.containment_threshold}"
            )


@dataclass(frozen=True)
class BuildingAssociation:
    """Window indices assigned to one building elevation.

    ``windows`` holds the indices as a sorted tuple; each window index
    appears in at most one association across a result.
    """

    building_index: int
    windows: tuple[int, ...]


def area(box: BoundingBox) -> int:
    """Box area in square pixels."""
    return box.width * box.height


def intersection_area(a: BoundingBox, b: BoundingBox) -> int:
    """Area of geometric overlap; zero when the boxes are disjoint."""
    w = min(a.max_x, b.max_x) - max(a.min_x, b.min_x)
    h = min(a.max_y, b.max_y) - max(a.min_y, b.min_y)
    if w <= 0 or h <= 0:
        return 0
    return w * h


def clip(box: BoundingBox, frame: BoundingBox) -> BoundingBox | None:
    """Part of ``box`` inside ``frame``, or None when they are disjoint."""
    x0 = max(box.min_x, frame.min_x)
    y0 = max(box.min_y, frame.min_y)
    x1 = min(box.max_x, frame.max_x)
    y1 = min(box.max_y, frame.max_y)
    if x1 <= x0 or y1 <= y0:
        return None
    return BoundingBox(x0, y0, x1 - x0, y1 - y0)


def associate_windows(
    buildings: Sequence[BoundingBox],
    windows: Sequence[BoundingBox],
    cfg: AssociationConfig,
) -> tuple[list[BuildingAssociation], list[int]]:
    """Assign each window to at most one building elevation.

    A building is a candidate for window ``w`` when the overlap is at least
    ``containment_threshold * area(w)``. Among candidates the window goes to
    the building with the largest overlap, ties broken by the lowest
    building index. Windows with no candidate are returned as noise.

    Returns one association per building (empty window sets included, in
    building order) plus the sorted noise indices.
    """
    assigned: dict[int, list[int]] = {i: [] for i in range(len(buildings))}
    noise: list[int] = []
    for wi, window in enumerate(windows):
        w_area = area(window)
        best_index: int | None = None
        best_overlap = 0
        for bi, building in enumerate(buildings):
            overlap = intersection_area(window, building)
            if overlap >= cfg.containment_threshold * w_area:
                if overlap > best_overlap:
                    best_overlap = overlap
                    best_index = bi
        if best_index is None:
            noise.append(wi)
        else:
            assigned[best_index].append(wi)
    associations = [
        BuildingAssociation(building_index=i, windows=tuple(sorted(assigned[i])))
        for i in range(len(buildings))
    ]
    return associations, noise
