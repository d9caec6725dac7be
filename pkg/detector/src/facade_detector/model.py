"""Detector construction.

A region-proposal detector (Faster R-CNN, MobileNetV3 FPN backbone) sized
for desk-scale corpora: weights start random and the internal resize keeps
small synthetic images small instead of upscaling them to photo resolution.
"""

from __future__ import annotations

import torch
from torchvision.models.detection import fasterrcnn_mobilenet_v3_large_fpn

from .dataset import NUM_CLASSES

DEFAULT_MIN_SIZE = 128
DEFAULT_MAX_SIZE = 256


def build_model(
    min_size: int = DEFAULT_MIN_SIZE,
    max_size: int = DEFAULT_MAX_SIZE,
) -> torch.nn.Module:
    return fasterrcnn_mobilenet_v3_large_fpn(
        weights=None,
        weights_backbone=None,
        num_classes=NUM_CLASSES,
        min_size=min_size,
        max_size=max_size,
    )
