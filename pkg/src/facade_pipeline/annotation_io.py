"""Parse, validate, and emit annotation metadata and the detection wire format.

Two JSON layouts are handled:

* Annotation documents: a top-level map of image entries, each carrying
  ``filename``, ``size``, a list of rect ``regions`` labeled ``building`` or
  ``window``, and an opaque ``file_attributes`` map.
* Detection documents: one per image, carrying the image dimensions and a
  list of category/score/box records produced by a detector.

Parsing is total: any invalid input raises a subclass of ``FormatError``,
never anything else. Category strings are case-sensitive; coordinates must
be JSON integers. Detection boxes are clamped to the image bounds rather
than rejected, with a warning count recorded on the result.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .geometry import BoundingBox


class Category(str, enum.Enum):
    BUILDING = "building"
    WINDOW = "window"


class FormatError(ValueError):
    """Base class for every annotation/detection document failure."""


class MalformedDocumentError(FormatError):
    """Document is not well-formed JSON; ``offset`` names the failing byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnsupportedShapeError(FormatError):
    """Region uses a shape other than 'rect'."""


class SchemaError(FormatError):
    """Document structure or field values violate the wire contract."""


class InvariantError(FormatError):
    """Parsed values violate a domain invariant (e.g. degenerate box)."""


@dataclass(frozen=True)
class Region:
    box: BoundingBox
    category: Category


@dataclass(frozen=True)
class ImageEntry:
    filename: str
    size: int
    regions: tuple[Region, ...]
    file_attributes: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.size < 0:
            raise InvariantError(f"size must be >= 0, got {self.size}")


@dataclass(frozen=True)
class AnnotationSet:
    entries: tuple[ImageEntry, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for entry in self.entries:
            if entry.filename in seen:
                raise InvariantError(f"duplicate filename {entry.filename!r}")
            seen.add(entry.filename)

    def entry_for(self, filename: str) -> ImageEntry:
        for entry in self.entries:
            if entry.filename == filename:
                return entry
        raise KeyError(filename)


@dataclass(frozen=True)
class Detection:
    box: BoundingBox
    category: Category
    score: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise InvariantError(f"score must be in [0, 1], got {self.score}")


@dataclass(frozen=True)
class DetectionSet:
    filename: str
    image_width: int
    image_height: int
    detections: tuple[Detection, ...]
    # number of boxes clamped or dropped during parsing; not part of equality
    clamp_warnings: int = field(default=0, compare=False)


def _require(mapping: Mapping[str, Any], key: str, context: str) -> Any:
    if key not in mapping:
        raise SchemaError(f"missing key {key!r} in {context}")
    return mapping[key]


def _strict_int(value: Any, what: str) -> int:
    # bool is an int subclass; floats (even integral ones) are rejected to
    # keep the pixel-grid contract bit-exact
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _strict_str(value: Any, what: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{what} must be a string, got {value!r}")
    return value


def _parse_category(value: Any, context: str) -> Category:
    if value == Category.BUILDING.value:
        return Category.BUILDING
    if value == Category.WINDOW.value:
        return Category.WINDOW
    raise SchemaError(f"unknown category {value!r} in {context}")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(exc.msg, exc.pos) from exc


def _parse_region(raw: Any, context: str) -> Region:
    if not isinstance(raw, dict):
        raise SchemaError(f"region must be an object in {context}")
    shape = _require(raw, "shape_attributes", context)
    if not isinstance(shape, dict):
        raise SchemaError(f"shape_attributes must be an object in {context}")
    name = shape.get("name")
    if name != "rect":
        raise UnsupportedShapeError(f"unsupported shape {name!r} in {context}")
    x = _strict_int(_require(shape, "x", context), f"x in {context}")
    y = _strict_int(_require(shape, "y", context), f"y in {context}")
    width = _strict_int(_require(shape, "width", context), f"width in {context}")
    height = _strict_int(_require(shape, "height", context), f"height in {context}")
    try:
        box = BoundingBox(x, y, width, height)
    except ValueError as exc:
        raise InvariantError(f"{exc} in {context}") from exc
    attrs = _require(raw, "region_attributes", context)
    if not isinstance(attrs, dict):
        raise SchemaError(f"region_attributes must be an object in {context}")
    category = _parse_category(_require(attrs, "class", context), context)
    return Region(box=box, category=category)


def parse_annotations(text: str) -> AnnotationSet:
    """Parse an annotation document into an :class:`AnnotationSet`.

    Only 'rect' regions are accepted; any other shape raises
    :class:`UnsupportedShapeError` naming the offending region.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a map of image entries")
    entries: list[ImageEntry] = []
    for key, raw in doc.items():
        context = f"entry {key!r}"
        if not isinstance(raw, dict):
            raise SchemaError(f"{context} must be an object")
        filename = _strict_str(_require(raw, "filename", context), f"filename in {context}")
        size = _strict_int(_require(raw, "size", context), f"size in {context}")
        raw_regions = _require(raw, "regions", context)
        if not isinstance(raw_regions, list):
            raise SchemaError(f"regions must be an array in {context}")
        regions = tuple(
            _parse_region(r, f"region {i} of {filename!r}")
            for i, r in enumerate(raw_regions)
        )
        attrs = raw.get("file_attributes", {})
        if not isinstance(attrs, dict):
            raise SchemaError(f"file_attributes must be an object in {context}")
        try:
            entries.append(
                ImageEntry(filename=filename, size=size, regions=regions, file_attributes=attrs)
            )
        except FormatError:
            raise
        except ValueError as exc:
            raise InvariantError(f"{exc} in {context}") from exc
    try:
        return AnnotationSet(entries=tuple(entries))
    except FormatError:
        raise


def emit_annotations(annotation_set: AnnotationSet) -> str:
    """Serialize an :class:`AnnotationSet` to its canonical document form.

    Entries are keyed by filename (unique within a set); region order is
    preserved, and ``parse_annotations(emit_annotations(s))`` equals ``s``.
    """
    doc: dict[str, Any] = {}
    for entry in annotation_set.entries:
        doc[entry.filename] = {
            "filename": entry.filename,
            "size": entry.size,
            "regions": [
                {
                    "shape_attributes": {
                        "name": "rect",
                        "x": region.box.x,
                        "y": region.box.y,
                        "width": region.box.width,
                        "height": region.box.height,
                    },
                    "region_attributes": {"class": region.category.value},
                }
                for region in entry.regions
            ],
            "file_attributes": dict(entry.file_attributes),
        }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _clamp_box(
    x: int, y: int, width: int, height: int, image_width: int, image_height: int
) -> tuple[BoundingBox | None, bool]:
    """Clamp a raw box to the image; returns (box, was_modified).

    A box entirely outside the image clamps to nothing and is dropped.
    """
    x0 = max(x, 0)
    y0 = max(y, 0)
    x1 = min(x + width, image_width)
    y1 = min(y + height, image_height)
    if x1 <= x0 or y1 <= y0:
        return None, True
    clamped = BoundingBox(x0, y0, x1 - x0, y1 - y0)
    modified = (x0, y0, x1 - x0, y1 - y0) != (x, y, width, height)
    return clamped, modified


def parse_detections(text: str) -> DetectionSet:
    """Parse a detection document, clamping boxes to the image bounds.

    Each clamped or dropped box increments ``clamp_warnings`` on the result.
    Missing image dimensions and out-of-range scores are schema errors.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SchemaError("detection document must be an object")
    filename = _strict_str(_require(doc, "filename", "detection document"), "filename")
    if "image_width" not in doc or "image_height" not in doc:
        raise SchemaError("missing image dimensions (image_width/image_height)")
    image_width = _strict_int(doc["image_width"], "image_width")
    image_height = _strict_int(doc["image_height"], "image_height")
    if image_width <= 0 or image_height <= 0:
        raise SchemaError(
            f"image dimensions must be positive, got {image_width}x{image_height}"
        )
    raw_detections = _require(doc, "detections", "detection document")
    if not isinstance(raw_detections, list):
        raise SchemaError("detections must be an array")

    detections: list[Detection] = []
    warnings = 0
    for i, raw in enumerate(raw_detections):
        context = f"detection {i} of {filename!r}"
        if not isinstance(raw, dict):
            raise SchemaError(f"{context} must be an object")
        category = _parse_category(_require(raw, "category", context), context)
        score = _require(raw, "score", context)
        if isinstance(score, bool) or not isinstance(score, (int, float)):
            raise SchemaError(f"score must be a number in {context}")
        if not 0.0 <= score <= 1.0:
            raise SchemaError(f"score {score!r} outside [0, 1] in {context}")
        x = _strict_int(_require(raw, "x", context), f"x in {context}")
        y = _strict_int(_require(raw, "y", context), f"y in {context}")
        width = _strict_int(_require(raw, "width", context), f"width in {context}")
        height = _strict_int(_require(raw, "height", context), f"height in {context}")
        if width <= 0 or height <= 0:
            raise InvariantError(
                f"box dimensions must be positive, got {width}x{height} in {context}"
            )
        box, modified = _clamp_box(x, y, width, height, image_width, image_height)
        if modified:
            warnings += 1
        if box is not None:
            detections.append(Detection(box=box, category=category, score=float(score)))

    return DetectionSet(
        filename=filename,
        image_width=image_width,
        image_height=image_height,
        detections=tuple(detections),
        clamp_warnings=warnings,
    )


def emit_detections(detection_set: DetectionSet) -> str:
    """Serialize a :class:`DetectionSet` to the detection wire format."""
    doc = {
        "filename": detection_set.filename,
        "image_width": detection_set.image_width,
        "image_height": detection_set.image_height,
        "detections": [
            {
                "category": d.category.value,
                "score": d.score,
                "x": d.box.x,
                "y": d.box.y,
                "width": d.box.width,
                "height": d.box.height,
            }
            for d in detection_set.detections
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def detections_from_annotations(
    annotation_set: AnnotationSet,
    image_width: int,
    image_height: int,
    score: float = 1.0,
) -> list[DetectionSet]:
    """Turn ground-truth regions into one DetectionSet per image.

    Used to drive the pipeline without a detector; every box gets the same
    score and is clamped to the stated image bounds.
    """
    result = []
    for entry in annotation_set.entries:
        detections = []
        for region in entry.regions:
            box, _ = _clamp_box(
                region.box.x,
                region.box.y,
                region.box.width,
                region.box.height,
                image_width,
                image_height,
            )
            if box is not None:
                detections.append(Detection(box=box, category=region.category, score=score))
        result.append(
            DetectionSet(
                filename=entry.filename,
                image_width=image_width,
                image_height=image_height,
                detections=tuple(detections),
            )
        )
    return result
