"""Facade information extraction from building/window detections.

Given per-image bounding-box detections of building elevations and windows,
the pipeline associates each window with its elevation, classifies the
facade (curtain wall, repeated windows, other), computes the window-area
ratio with its quarter bin, and names the dominant wall color against a
palette. Annotation parsing, detection wire-format IO, synthetic corpus
generation, and accuracy evaluation round out the toolkit.
"""

from .annotation_io import (
    AnnotationSet,
    Category,
    Detection,
    DetectionSet,
    FormatError,
    ImageEntry,
    InvariantError,
    MalformedDocumentError,
    Region,
    SchemaError,
    UnsupportedShapeError,
    detections_from_annotations,
    emit_annotations,
    emit_detections,
    parse_annotations,
    parse_detections,
)
from .cli import PipelineConfig, extract_records, main
from .colorimetry import (
    DEFAULT_PALETTE,
    ColorName,
    EmptyRegionError,
    Palette,
    Rgb,
    classify_color,
    emit_palette,
    mean_rgb,
    parse_palette,
    redmean_distance,
)
from .evaluation import (
    AccuracyReport,
    ConfusionMatrix,
    InputError,
    MatchConfig,
    classification_report,
    detection_accuracy,
    iou,
)
from .facade_classify import (
    ClassifyConfig,
    FacadeRecord,
    FacadeType,
    RatioBin,
    bin_ratio,
    build_record,
    classify_presence,
    classify_type,
    window_ratio,
)
from .geometry import (
    AssociationConfig,
    BoundingBox,
    BuildingAssociation,
    area,
    associate_windows,
    clip,
    intersection_area,
)
from .raster import (
    BuildingSpec,
    DecodeError,
    RasterImage,
    SyntheticSpec,
    SyntheticSpecError,
    UnsupportedFormatError,
    corpus_specs,
    decode,
    encode_png,
    perturb_annotations,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "AnnotationSet",
    "AssociationConfig",
    "BoundingBox",
    "BuildingAssociation",
    "BuildingSpec",
    "Category",
    "ClassifyConfig",
    "ColorName",
    "ConfusionMatrix",
    "DEFAULT_PALETTE",
    "DecodeError",
    "Detection",
    "DetectionSet",
    "EmptyRegionError",
    "FacadeRecord",
    "FacadeType",
    "FormatError",
    "ImageEntry",
    "InputError",
    "InvariantError",
    "MalformedDocumentError",
    "MatchConfig",
    "Palette",
    "PipelineConfig",
    "RasterImage",
    "RatioBin",
    "Region",
    "Rgb",
    "SchemaError",
    "SyntheticSpec",
    "SyntheticSpecError",
    "UnsupportedFormatError",
    "UnsupportedShapeError",
    "area",
    "associate_windows",
    "bin_ratio",
    "build_record",
    "classification_report",
    "classify_color",
    "classify_presence",
    "classify_type",
    "clip",
    "corpus_specs",
    "decode",
    "detection_accuracy",
    "detections_from_annotations",
    "emit_annotations",
    "emit_detections",
    "emit_palette",
    "encode_png",
    "extract_records",
    "intersection_area",
    "iou",
    "main",
    "mean_rgb",
    "parse_annotations",
    "parse_detections",
    "parse_palette",
    "perturb_annotations",
    "redmean_distance",
    "synthesize",
    "window_ratio",
    "__version__",
]
