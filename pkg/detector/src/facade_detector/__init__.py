"""Adapter between the facade pipeline's wire formats and a detector.

Converts annotation documents into a torchvision detection dataset,
fine-tunes a two-class Faster R-CNN at desk scale with a per-iteration
loss log, and emits inference results in the pipeline's detection format.
"""

from .dataset import (
    CATEGORY_LABELS,
    LABEL_CATEGORIES,
    NUM_CLASSES,
    DatasetError,
    DatasetRecord,
    FacadeDetectionDataset,
    convert_dataset,
    load_image_tensor,
)
from .inference import ModelLoadError, infer, infer_one, load_model
from .model import DEFAULT_MAX_SIZE, DEFAULT_MIN_SIZE, build_model
from .training import (
    CHECKPOINT_NAME,
    LOSS_LOG_NAME,
    SUMMARY_NAME,
    EmptyDatasetError,
    TrainConfig,
    TrainResult,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "CATEGORY_LABELS",
    "CHECKPOINT_NAME",
    "DEFAULT_MAX_SIZE",
    "DEFAULT_MIN_SIZE",
    "DatasetError",
    "DatasetRecord",
    "EmptyDatasetError",
    "FacadeDetectionDataset",
    "LABEL_CATEGORIES",
    "LOSS_LOG_NAME",
    "ModelLoadError",
    "NUM_CLASSES",
    "SUMMARY_NAME",
    "TrainConfig",
    "TrainResult",
    "build_model",
    "convert_dataset",
    "infer",
    "infer_one",
    "load_image_tensor",
    "load_model",
    "train",
]
