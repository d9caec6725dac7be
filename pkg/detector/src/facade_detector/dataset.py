"""Conversion from the annotation wire format to trainer-ready tensors.

The detector sees two foreground categories, building elevations and
windows; background is the implicit label 0. Boxes are converted from the
annotation format's (x, y, width, height) to the corner pairs torchvision
detection models expect.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from PIL import Image

from facade_pipeline.annotation_io import AnnotationSet, Category

CATEGORY_LABELS: dict[Category, int] = {Category.BUILDING: 1, Category.WINDOW: 2}
LABEL_CATEGORIES: dict[int, Category] = {v: k for k, v in CATEGORY_LABELS.items()}
NUM_CLASSES = len(CATEGORY_LABELS) + 1  # + background


class DatasetError(ValueError):
    """Raised when an annotation set cannot be converted for training."""


@dataclass(frozen=True)
class DatasetRecord:
    """One image with its boxes as (x0, y0, x1, y1) corner pairs."""

    filename: str
    path: Path
    boxes: tuple[tuple[int, int, int, int], ...]
    labels: tuple[int, ...]


def load_image_tensor(path: Path) -> torch.Tensor:
    """RGB image as a float32 CHW tensor in [0, 1]."""
    with Image.open(path) as img:
        array = np.asarray(img.convert("RGB"), dtype=np.float32)
    return torch.from_numpy(array / 255.0).permute(2, 0, 1).contiguous()


class FacadeDetectionDataset(torch.utils.data.Dataset):
    """Images with (boxes, labels) targets in torchvision detection format."""

    def __init__(self, records: list[DatasetRecord]):
        self.records = list(records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, index: int) -> tuple[torch.Tensor, dict[str, torch.Tensor]]:
        record = self.records[index]
        image = load_image_tensor(record.path)
        boxes = torch.tensor(record.boxes, dtype=torch.float32).reshape(-1, 4)
        labels = torch.tensor(record.labels, dtype=torch.int64)
        return image, {"boxes": boxes, "labels": labels}


def convert_dataset(annotations: AnnotationSet, images_dir: str | Path) -> FacadeDetectionDataset:
    """Build a training dataset from parsed annotations and an image directory.

    Every referenced image must exist under ``images_dir``; otherwise a
    :class:`DatasetError` lists all missing files. An empty annotation set
    converts to an empty dataset with a warning.
    """
    root = Path(images_dir)
    missing = sorted(
        entry.filename for entry in annotations.entries if not (root / entry.filename).is_file()
    )
    if missing:
        raise DatasetError("missing image files: " + ", ".join(missing))

    records = []
    for entry in annotations.entries:
        boxes = []
        labels = []
        for region in entry.regions:
            box = region.box
            boxes.append((box.x, box.y, box.x + box.width, box.y + box.height))
            labels.append(CATEGORY_LABELS[region.category])
        records.append(
            DatasetRecord(
                filename=entry.filename,
                path=root / entry.filename,
                boxes=tuple(boxes),
                labels=tuple(labels),
            )
        )
    if not records:
        warnings.warn("annotation set is empty; dataset has no records", stacklevel=2)
    return FacadeDetectionDataset(records)
