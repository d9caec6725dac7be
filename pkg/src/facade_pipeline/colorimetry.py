"""Wall-color extraction: masked RGB means and nearest-palette matching.

The mean is taken over the elevation rectangle with every associated window
rectangle masked out. Matching uses the integer "redmean" distance, a
red-weighted RGB metric whose red/blue weights depend on the mean red value
of the two colors being compared:

    rm = (r1 + r2) // 2
    d  = sqrt(((512 + rm) * dr^2 >> 8) + 4 * dg^2 + ((767 - rm) * db^2 >> 8))

with dr, dg, db the channel differences. All intermediates are non-negative
integers, so the shifts are well-defined; real-valued means are rounded
half-up to the integer grid before evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Sequence

from . import kernels
from .geometry import BoundingBox, clip

if TYPE_CHECKING:
    from .raster import RasterImage


class EmptyRegionError(ValueError):
    """The masked region contains no pixels (windows cover the elevation)."""


@dataclass(frozen=True)
class Rgb:
    r: int
    g: int
    b: int

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"channel {name} must be an integer, got {value!r}")
            if not 0 <= value <= 255:
                raise ValueError(f"channel {name} out of range [0, 255]: {value}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.g, self.b)


class ColorName(str, Enum):
    BLACK = "black"
    MAROON = "maroon"
    SILVER = "silver"
    ORANGE = "orange"
    GREEN = "green"
    BLUE = "blue"


@dataclass(frozen=True)
class Palette:
    """Ordered reference colors; ties in matching resolve to the earlier entry."""

    entries: tuple[tuple[str, Rgb], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("palette must not be empty")
        names = [name for name, _ in self.entries]
        if len(names) != len(set(names)):
            raise ValueError("palette names must be unique")


DEFAULT_PALETTE = Palette(
    entries=(
        (ColorName.BLACK.value, Rgb(0, 0, 0)),
        (ColorName.MAROON.value, Rgb(90, 0, 0)),
        (ColorName.SILVER.value, Rgb(192, 192, 192)),
        (ColorName.ORANGE.value, Rgb(255, 127, 0)),
        (ColorName.GREEN.value, Rgb(0, 255, 0)),
        (ColorName.BLUE.value, Rgb(0, 0, 255)),
    )
)


def redmean_distance(c1: Rgb, c2: Rgb) -> float:
    """Red-weighted RGB distance; zero exactly when the colors are equal."""
    rm = (c1.r + c2.r) // 2
    dr = c1.r - c2.r
    dg = c1.g - c2.g
    db = c1.b - c2.b
    squared = (((512 + rm) * dr * dr) >> 8) + 4 * dg * dg + (((767 - rm) * db * db) >> 8)
    return math.sqrt(squared)


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def classify_color(
    mean: Rgb | tuple[float, float, float],
    palette: Palette = DEFAULT_PALETTE,
) -> str:
    """Name of the palette entry nearest to ``mean`` under redmean distance.

    Real-valued means are rounded half-up per channel first; ties between
    palette entries go to the earlier entry.
    """
    if isinstance(mean, Rgb):
        color = mean
    else:
        r, g, b = mean
        color = Rgb(_round_half_up(r), _round_half_up(g), _round_half_up(b))
    best_name = None
    best_distance = math.inf
    for name, reference in palette.entries:
        distance = redmean_distance(color, reference)
        if distance < best_distance:
            best_distance = distance
            best_name = name
    assert best_name is not None  # palette is nonempty
    return best_name


def mean_rgb(
    image: "RasterImage",
    elevation: BoundingBox,
    windows: Sequence[BoundingBox],
) -> tuple[float, float, float]:
    """Per-channel mean over pixels inside ``elevation`` and outside windows.

    A pixel is excluded when its center lies inside any window box; on the
    integer grid that is the half-open box range. Raises
    :class:`EmptyRegionError` when the windows cover the whole elevation.
    """
    if (
        elevation.min_x < 0
        or elevation.min_y < 0
        or elevation.max_x > image.width
        or elevation.max_y > image.height
    ):
        raise ValueError(
            f"elevation {elevation} exceeds image bounds "
            f"{image.width}x{image.height}"
        )
    clipped = []
    for window in windows:
        part = clip(window, elevation)
        if part is not None:
            clipped.append((part.min_x, part.min_y, part.max_x, part.max_y))
    sr, sg, sb, count = kernels.masked_mean_sums(
        image.array,
        elevation.min_x,
        elevation.min_y,
        elevation.max_x,
        elevation.max_y,
        clipped,
    )
    if count == 0:
        raise EmptyRegionError("window boxes cover the entire elevation region")
    return (sr / count, sg / count, sb / count)


def parse_palette(text: str) -> Palette:
    """Parse a palette file: one ``name r g b`` entry per line.

    Blank lines and lines starting with '#' are ignored.
    """
    entries: list[tuple[str, Rgb]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 4:
            raise ValueError(
                f"palette line {lineno}: expected 'name r g b', got {line!r}"
            )
        name, *channels = parts
        try:
            r, g, b = (int(c) for c in channels)
            rgb = Rgb(r, g, b)
        except ValueError as exc:
            raise ValueError(f"palette line {lineno}: {exc}") from exc
        entries.append((name, rgb))
    return Palette(entries=tuple(entries))


def emit_palette(palette: Palette) -> str:
    return "\n".join(f"{name} {c.r} {c.g} {c.b}" for name, c in palette.entries) + "\n"
