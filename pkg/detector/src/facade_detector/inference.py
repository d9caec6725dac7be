"""Run a trained detector and emit the pipeline's detection wire files."""

from __future__ import annotations

import pickle
import zipfile
from pathlib import Path

import torch

from facade_pipeline.annotation_io import (
    Detection,
    DetectionSet,
    emit_detections,
    parse_detections,
)
from facade_pipeline.geometry import BoundingBox

from .dataset import LABEL_CATEGORIES, NUM_CLASSES, load_image_tensor
from .model import build_model


class ModelLoadError(ValueError):
    """Raised when a checkpoint cannot be loaded into the detector."""


def load_model(weights_path: str | Path) -> torch.nn.Module:
    """Rebuild the detector from a checkpoint written by ``train``."""
    path = Path(weights_path)
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except (OSError, RuntimeError, EOFError, ValueError, pickle.UnpicklingError, zipfile.BadZipFile) as exc:
        raise ModelLoadError(f"cannot load weights from {path}: {exc}") from exc
    if not isinstance(payload, dict) or "state_dict" not in payload:
        raise ModelLoadError(f"{path} is not a detector checkpoint")
    if payload.get("num_classes") != NUM_CLASSES:
        raise ModelLoadError(
            f"{path} was trained for {payload.get('num_classes')} classes, expected {NUM_CLASSES}"
        )
    model = build_model()
    try:
        model.load_state_dict(payload["state_dict"])
    except RuntimeError as exc:
        raise ModelLoadError(f"{path} does not match the detector architecture: {exc}") from exc
    model.eval()
    return model


def _to_detection_set(
    filename: str,
    width: int,
    height: int,
    boxes: list[list[float]],
    labels: list[int],
    scores: list[float],
) -> DetectionSet:
    detections = []
    for (x0f, y0f, x1f, y1f), label, score in zip(boxes, labels, scores):
        category = LABEL_CATEGORIES.get(int(label))
        if category is None:
            continue
        x0 = max(0, min(width, round(x0f)))
        y0 = max(0, min(height, round(y0f)))
        x1 = max(0, min(width, round(x1f)))
        y1 = max(0, min(height, round(y1f)))
        if x1 - x0 < 1 or y1 - y0 < 1:
            continue
        detections.append(
            Detection(
                box=BoundingBox(x0, y0, x1 - x0, y1 - y0),
                category=category,
                score=min(1.0, max(0.0, float(score))),
            )
        )
    return DetectionSet(
        filename=filename,
        image_width=width,
        image_height=height,
        detections=tuple(detections),
    )


def infer_one(model: torch.nn.Module, image_path: str | Path) -> DetectionSet:
    """Detections for a single image, clamped to its bounds."""
    path = Path(image_path)
    tensor = load_image_tensor(path)
    height, width = tensor.shape[1], tensor.shape[2]
    with torch.inference_mode():
        result = model([tensor])[0]
    return _to_detection_set(
        path.name,
        width,
        height,
        result["boxes"].tolist(),
        result["labels"].tolist(),
        result["scores"].tolist(),
    )


def infer(
    model: torch.nn.Module,
    image_paths: list[str | Path],
    out_dir: str | Path,
) -> list[Path]:
    """One wire-format detection file per image; each re-parses cleanly."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.eval()
    written = []
    for image_path in image_paths:
        detection_set = infer_one(model, image_path)
        text = emit_detections(detection_set)
        parse_detections(text)  # wire-contract self check before writing
        target = out / f"{Path(image_path).stem}.json"
        target.write_text(text, encoding="utf-8")
        written.append(target)
    return written
