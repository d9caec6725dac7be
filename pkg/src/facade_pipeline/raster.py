"""Image decoding and synthetic facade generation with exact ground truth.

Synthetic images stand in for real elevation photography: each building box
is painted in its wall color and windows are drawn per facade type (a
curtain wall fills the whole elevation, repeated windows form a grid sized
to hit a target area ratio, "other" gets a single window). The generator
returns the pixel-exact annotations and facade records it drew, so the full
pipeline can be checked end to end against known truth.
"""

from __future__ import annotations

import io
import random
import struct
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from typing import Mapping

from .annotation_io import AnnotationSet, Category, ImageEntry, Region
from .colorimetry import DEFAULT_PALETTE, Rgb, classify_color
from .facade_classify import FacadeRecord, FacadeType, bin_ratio
from .geometry import BoundingBox, area, intersection_area

# minimum wall strip around and between synthetic windows, px
WALL_MARGIN = 2
# achieved window ratio may differ from the target by this many points
RATIO_TOLERANCE_POINTS = 2.0
# single windows above this percent are not distinguishable from a curtain
# wall under the default classification tolerance
MAX_SINGLE_WINDOW_PERCENT = 85.0


class DecodeError(ValueError):
    """Byte stream is not a decodable PNG."""


class UnsupportedFormatError(ValueError):
    """PNG is valid but not 8-bit RGB or RGBA."""


class SyntheticSpecError(ValueError):
    """Synthetic facade spec is inconsistent or unachievable."""


class RasterImage:
    """Decoded RGB pixel grid; wraps a (height, width, 3) uint8 array."""

    def __init__(self, array: np.ndarray):
        arr = np.asarray(array)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (h, w, 3) array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            raise ValueError(f"expected uint8 pixels, got {arr.dtype}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        self.array = np.ascontiguousarray(arr)

    @property
    def width(self) -> int:
        return self.array.shape[1]

    @property
    def height(self) -> int:
        return self.array.shape[0]

    def pixel(self, x: int, y: int) -> Rgb:
        r, g, b = self.array[y, x]
        return Rgb(int(r), int(g), int(b))

    @classmethod
    def filled(cls, width: int, height: int, color: Rgb) -> "RasterImage":
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[:, :] = color.as_tuple()
        return cls(arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.array.shape == other.array.shape and bool(
            np.array_equal(self.array, other.array)
        )


_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _check_png_header(data: bytes) -> None:
    # IHDR layout: 8-byte signature, 4-byte length, b"IHDR", width, height,
    # bit depth (offset 24), color type (offset 25)
    if len(data) < 26 or not data.startswith(_PNG_SIGNATURE):
        raise DecodeError("not a PNG stream")
    if data[12:16] != b"IHDR":
        raise DecodeError("PNG stream missing IHDR chunk")
    bit_depth = data[24]
    color_type = data[25]
    if color_type not in (2, 6):
        raise UnsupportedFormatError(
            f"only RGB/RGBA PNGs are supported (color type {color_type})"
        )
    if bit_depth != 8:
        raise UnsupportedFormatError(f"only 8-bit channels are supported, got {bit_depth}")


def decode(data: bytes) -> RasterImage:
    """Decode an 8-bit RGB or RGBA PNG; alpha is discarded."""
    _check_png_header(data)
    try:
        with Image.open(io.BytesIO(data)) as img:
            img.load()
            if img.mode == "RGBA":
                img = img.convert("RGB")
            if img.mode != "RGB":
                raise UnsupportedFormatError(f"unsupported pixel mode {img.mode!r}")
            arr = np.asarray(img, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, struct.error, SyntaxError) as exc:
        raise DecodeError(f"corrupt PNG stream: {exc}") from exc
    return RasterImage(arr)


def encode_png(image: RasterImage) -> bytes:
    buffer = io.BytesIO()
    Image.fromarray(image.array, mode="RGB").save(buffer, format="PNG")
    return buffer.getvalue()


@dataclass(frozen=True)
class BuildingSpec:
    box: BoundingBox
    wall_color: Rgb
    facade_type: FacadeType
    target_ratio_percent: float
    window_color: Rgb
    grid: tuple[int, int] | None = None  # (rows, cols), repeated type only


@dataclass(frozen=True)
class SyntheticSpec:
    canvas: tuple[int, int]  # (width, height)
    buildings: tuple[BuildingSpec, ...]
    seed: int = 0
    filename: str = "synthetic.png"
    background: Rgb = field(default=Rgb(24, 24, 28))


def _spread_positions(span: int, item: int, count: int) -> list[int]:
    """Offsets placing ``count`` items of size ``item`` with even gaps."""
    free = span - count * item
    gaps = count + 1
    base, extra = divmod(free, gaps)
    positions = []
    cursor = 0
    for i in range(count):
        cursor += base + (1 if i < extra else 0)
        positions.append(cursor)
        cursor += item
    return positions


def _best_window_size(
    target_percent: float, ww_max: int, wh_max: int, cells: int, building_area: int
) -> tuple[int, int, float]:
    """Window size whose grid best matches the target ratio.

    Scans widths, pairing each with the nearest matching height; prefers the
    squarer window on error ties. Returns (ww, wh, error_points).
    """
    per_window = target_percent / 100.0 * building_area / cells
    best: tuple[float, int, int, int] | None = None
    for ww in range(1, ww_max + 1):
        base = int(round(per_window / ww))
        for wh in {max(1, min(h, wh_max)) for h in (base - 1, base, base + 1)}:
            achieved = 100.0 * cells * ww * wh / building_area
            err = abs(achieved - target_percent)
            candidate = (err, abs(ww - wh), ww, wh)
            if best is None or candidate < best:
                best = candidate
    assert best is not None
    err, _, ww, wh = best
    return ww, wh, err


def _layout_grid(box: BoundingBox, rows: int, cols: int, target_percent: float) -> list[BoundingBox]:
    ww_max = (box.width - WALL_MARGIN * (cols + 1)) // cols
    wh_max = (box.height - WALL_MARGIN * (rows + 1)) // rows
    if ww_max < 1 or wh_max < 1:
        raise SyntheticSpecError(
            f"{rows}x{cols} window grid does not fit a "
            f"{box.width}x{box.height} elevation with {WALL_MARGIN}px margins"
        )
    cells = rows * cols
    building_area = area(box)
    ww, wh, err = _best_window_size(target_percent, ww_max, wh_max, cells, building_area)
    if err > RATIO_TOLERANCE_POINTS:
        achieved = 100.0 * cells * ww * wh / building_area
        raise SyntheticSpecError(
            f"target ratio {target_percent}% unachievable with a {rows}x{cols} "
            f"grid (closest {achieved:.2f}%)"
        )
    xs = _spread_positions(box.width, ww, cols)
    ys = _spread_positions(box.height, wh, rows)
    return [BoundingBox(box.x + x, box.y + y, ww, wh) for y in ys for x in xs]


def _layout_single(box: BoundingBox, target_percent: float) -> list[BoundingBox]:
    if target_percent > MAX_SINGLE_WINDOW_PERCENT:
        raise SyntheticSpecError(
            f"single-window ratio {target_percent}% is too close to a curtain "
            f"wall (maximum {MAX_SINGLE_WINDOW_PERCENT}%)"
        )
    ww_max = box.width - 2 * WALL_MARGIN
    wh_max = box.height - 2 * WALL_MARGIN
    if ww_max < 1 or wh_max < 1:
        raise SyntheticSpecError(
            f"elevation {box.width}x{box.height} too small for a margined window"
        )
    target_area = target_percent / 100.0 * area(box)
    best: tuple[float, int, int, int] | None = None
    # prefer the wide, horizontal-window look on error ties
    for ww in range(1, ww_max + 1):
        base = int(round(target_area / ww))
        for wh in {max(1, min(h, wh_max)) for h in (base - 1, base, base + 1)}:
            achieved = 100.0 * ww * wh / area(box)
            err = abs(achieved - target_percent)
            candidate = (err, -ww, ww, wh)
            if best is None or candidate < best:
                best = candidate
    assert best is not None
    err, _, ww, wh = best
    if err > RATIO_TOLERANCE_POINTS:
        raise SyntheticSpecError(
            f"single-window target ratio {target_percent}% unachievable "
            f"within {RATIO_TOLERANCE_POINTS} points"
        )
    x = box.x + (box.width - ww) // 2
    y = box.y + (box.height - wh) // 2
    return [BoundingBox(x, y, ww, wh)]


def _layout_windows(spec: BuildingSpec) -> list[BoundingBox]:
    if spec.facade_type is FacadeType.FRONT_CURTAIN_WALL:
        return [spec.box]
    if spec.facade_type is FacadeType.REPEATED_SINGLE_WINDOWS:
        if spec.grid is None:
            raise SyntheticSpecError("repeated-window building needs a (rows, cols) grid")
        rows, cols = spec.grid
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise SyntheticSpecError(f"grid must have at least 2 cells, got {spec.grid}")
        return _layout_grid(spec.box, rows, cols, spec.target_ratio_percent)
    return _layout_single(spec.box, spec.target_ratio_percent)


def _validate_spec(spec: SyntheticSpec) -> None:
    width, height = spec.canvas
    if width < 1 or height < 1:
        raise SyntheticSpecError(f"canvas must be at least 1x1, got {spec.canvas}")
    for i, building in enumerate(spec.buildings):
        box = building.box
        if box.max_x > width or box.max_y > height:
            raise SyntheticSpecError(
                f"building {i} box {box} exceeds the {width}x{height} canvas"
            )
    for i, a in enumerate(spec.buildings):
        for j, b in enumerate(spec.buildings[i + 1 :], start=i + 1):
            if intersection_area(a.box, b.box) > 0:
                raise SyntheticSpecError(f"buildings {i} and {j} overlap")


def synthesize(
    spec: SyntheticSpec,
) -> tuple[RasterImage, AnnotationSet, list[FacadeRecord]]:
    """Render a facade spec and return its exact ground truth.

    The annotation entry lists each building region followed by its window
    regions; records are in building order. Curtain-wall elevations keep no
    wall pixels, so their ground-truth wall color is absent.
    """
    _validate_spec(spec)
    width, height = spec.canvas
    arr = np.empty((height, width, 3), dtype=np.uint8)
    arr[:, :] = spec.background.as_tuple()

    regions: list[Region] = []
    records: list[FacadeRecord] = []
    for index, building in enumerate(spec.buildings):
        box = building.box
        windows = _layout_windows(building)
        arr[box.min_y : box.max_y, box.min_x : box.max_x] = building.wall_color.as_tuple()
        for window in windows:
            arr[window.min_y : window.max_y, window.min_x : window.max_x] = (
                building.window_color.as_tuple()
            )
        regions.append(Region(box=box, category=Category.BUILDING))
        regions.extend(Region(box=w, category=Category.WINDOW) for w in windows)

        curtain = building.facade_type is FacadeType.FRONT_CURTAIN_WALL
        ratio = 100.0 * sum(area(w) for w in windows) / area(box)
        records.append(
            FacadeRecord(
                building_index=index,
                has_windows=True,
                facade_type=building.facade_type,
                window_ratio_percent=ratio,
                ratio_bin=bin_ratio(ratio),
                wall_color=None if curtain else classify_color(building.wall_color),
            )
        )

    image = RasterImage(arr)
    entry = ImageEntry(
        filename=spec.filename,
        size=len(encode_png(image)),
        regions=tuple(regions),
    )
    return image, AnnotationSet(entries=(entry,)), records


_PALETTE_COLORS = tuple(color for _, color in DEFAULT_PALETTE.entries)


def _draw_building(rng: random.Random, ftype: FacadeType, canvas: tuple[int, int]) -> BuildingSpec:
    """Random achievable building spec of the given type; deterministic."""
    width, height = canvas
    lo_w = min(56, width - 8)
    lo_h = min(56, height - 8)
    for _ in range(64):
        bw = rng.randint(lo_w, width - 8)
        bh = rng.randint(lo_h, height - 8)
        box = BoundingBox(rng.randint(0, width - bw), rng.randint(0, height - bh), bw, bh)
        wall = rng.choice(_PALETTE_COLORS)
        window = rng.choice([c for c in _PALETTE_COLORS if c != wall])
        grid: tuple[int, int] | None = None
        if ftype is FacadeType.FRONT_CURTAIN_WALL:
            target = 100.0
        elif ftype is FacadeType.REPEATED_SINGLE_WINDOWS:
            grid = (rng.randint(2, 4), rng.randint(2, 5))
            target = float(rng.randint(20, 50))
        else:
            target = float(rng.randint(8, 30))
        candidate = BuildingSpec(
            box=box,
            wall_color=wall,
            facade_type=ftype,
            target_ratio_percent=target,
            window_color=window,
            grid=grid,
        )
        try:
            _layout_windows(candidate)
        except SyntheticSpecError:
            continue
        return candidate
    raise SyntheticSpecError(
        f"no achievable {ftype.value} layout fits a {width}x{height} canvas"
    )


def corpus_specs(
    counts: Mapping[FacadeType | str, int],
    canvas: tuple[int, int] = (128, 128),
    seed: int = 0,
) -> list[SyntheticSpec]:
    """Deterministic one-building-per-image corpus with the given type mix.

    Wall colors come from the default palette, so generated ground truth is
    closed under the pipeline's color naming. Box sizes, positions, grids,
    and target ratios vary per image via the seeded generator. Filenames are
    ``facade_NNNN.png`` in generation order (curtain wall first, then
    repeated, then other).
    """
    width, height = canvas
    if width < 32 or height < 32:
        raise SyntheticSpecError(f"corpus canvas must be at least 32x32, got {canvas}")
    normalized: dict[FacadeType, int] = {}
    for key, value in counts.items():
        ftype = FacadeType(key)
        if ftype in normalized:
            raise SyntheticSpecError(f"duplicate count for {ftype.value}")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise SyntheticSpecError(f"count for {ftype.value} must be a non-negative integer")
        normalized[ftype] = value

    rng = random.Random(seed)
    specs: list[SyntheticSpec] = []
    index = 0
    for ftype in FacadeType:
        for _ in range(normalized.get(ftype, 0)):
            building = _draw_building(rng, ftype, canvas)
            specs.append(
                SyntheticSpec(
                    canvas=canvas,
                    buildings=(building,),
                    seed=seed,
                    filename=f"facade_{index:04d}.png",
                )
            )
            index += 1
    return specs


def perturb_annotations(
    annotation_set: AnnotationSet,
    amount: int,
    seed: int,
    image_width: int,
    image_height: int,
) -> AnnotationSet:
    """Jitter every region corner by a uniform offset in [-amount, amount].

    Emulates detector noise around unclear window boundaries. Jittered boxes
    are clamped to the image and kept at least 1px in each dimension;
    deterministic for a fixed seed.
    """
    if amount < 0:
        raise ValueError(f"jitter amount must be >= 0, got {amount}")
    rng = random.Random(seed)
    entries = []
    for entry in annotation_set.entries:
        regions = []
        for region in entry.regions:
            box = region.box
            x0 = box.min_x + rng.randint(-amount, amount)
            y0 = box.min_y + rng.randint(-amount, amount)
            x1 = box.max_x + rng.randint(-amount, amount)
            y1 = box.max_y + rng.randint(-amount, amount)
            x0 = max(0, min(x0, image_width - 1))
            y0 = max(0, min(y0, image_height - 1))
            x1 = max(x0 + 1, min(x1, image_width))
            y1 = max(y0 + 1, min(y1, image_height))
            regions.append(
                Region(
                    box=BoundingBox(x0, y0, x1 - x0, y1 - y0),
                    category=region.category,
                )
            )
        entries.append(
            ImageEntry(
                filename=entry.filename,
                size=entry.size,
                regions=tuple(regions),
                file_attributes=entry.file_attributes,
            )
        )
    return AnnotationSet(entries=tuple(entries))
