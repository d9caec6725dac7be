"""Toy-scale fine-tuning with a per-iteration loss log and early stopping."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

import torch

from .dataset import NUM_CLASSES, FacadeDetectionDataset
from .model import build_model

LOSS_LOG_NAME = "loss_log.jsonl"
CHECKPOINT_NAME = "model.pt"
SUMMARY_NAME = "training_summary.json"


class EmptyDatasetError(ValueError):
    """Training requires at least one image."""


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.0005
    max_iterations: int = 5000
    # iterations without a new best loss before stopping; None disables
    early_stop_patience: int | None = None

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.early_stop_patience is not None and self.early_stop_patience < 1:
            raise ValueError(
                f"early_stop_patience must be >= 1 or None, got {self.early_stop_patience}"
            )


@dataclass(frozen=True)
class TrainResult:
    checkpoint_path: Path
    loss_log_path: Path
    iterations_run: int
    best_loss: float
    best_iteration: int
    stopped_early: bool


def _batches(dataset: FacadeDetectionDataset, batch_size: int, rng: random.Random):
    """Endless shuffled batches; every epoch sees each image once."""
    order: list[int] = []
    while True:
        images = []
        targets = []
        for _ in range(batch_size):
            if not order:
                order = list(range(len(dataset)))
                rng.shuffle(order)
            image, target = dataset[order.pop()]
            images.append(image)
            targets.append(target)
        yield images, targets


def train(
    cfg: TrainConfig,
    dataset: FacadeDetectionDataset,
    out_dir: str | Path,
    seed: int = 0,
) -> TrainResult:
    """Fine-tune the detector, logging one JSON line of losses per iteration.

    Writes ``loss_log.jsonl``, ``model.pt``, and ``training_summary.json``
    into ``out_dir``. With ``early_stop_patience`` set, training stops once
    that many iterations pass without improving on the best loss seen.
    """
    if len(dataset) == 0:
        raise EmptyDatasetError("cannot train on an empty dataset")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    torch.manual_seed(seed)
    model = build_model()
    model.train()
    optimizer = torch.optim.SGD(model.parameters(), lr=cfg.learning_rate, momentum=0.9)
    batches = _batches(dataset, min(2, len(dataset)), random.Random(seed))

    loss_log_path = out / LOSS_LOG_NAME
    best = math.inf
    best_iteration = 0
    iterations_run = 0
    stopped_early = False
    with loss_log_path.open("w", encoding="utf-8") as log:
        for iteration in range(1, cfg.max_iterations + 1):
            images, targets = next(batches)
            loss_parts = model(images, targets)
            total = sum(loss_parts.values())
            optimizer.zero_grad()
            total.backward()
            optimizer.step()

            value = float(total.detach())
            entry = {"iteration": iteration, "loss": value}
            entry.update({name: float(part.detach()) for name, part in loss_parts.items()})
            log.write(json.dumps(entry) + "\n")
            iterations_run = iteration

            if value < best:
                best = value
                best_iteration = iteration
            elif (
                cfg.early_stop_patience is not None
                and iteration - best_iteration >= cfg.early_stop_patience
            ):
                stopped_early = True
                break

    checkpoint_path = out / CHECKPOINT_NAME
    torch.save({"state_dict": model.state_dict(), "num_classes": NUM_CLASSES}, checkpoint_path)
    summary = {
        "iterations_run": iterations_run,
        "best_loss": best,
        "best_iteration": best_iteration,
        "stopped_early": stopped_early,
        "learning_rate": cfg.learning_rate,
        "max_iterations": cfg.max_iterations,
        "early_stop_patience": cfg.early_stop_patience,
        "seed": seed,
        "dataset_size": len(dataset),
    }
    (out / SUMMARY_NAME).write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    return TrainResult(
        checkpoint_path=checkpoint_path,
        loss_log_path=loss_log_path,
        iterations_run=iterations_run,
        best_loss=best,
        best_iteration=best_iteration,
        stopped_early=stopped_early,
    )
