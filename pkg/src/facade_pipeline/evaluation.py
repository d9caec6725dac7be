"""Detection and classification accuracy reporting.

Accuracy follows the detected-over-total convention: a ground-truth object
counts as detected when a greedy score-ordered matching pairs it with a
prediction at IoU >= threshold, one-to-one. Facade classification results
are summarized in a confusion matrix with per-class accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .annotation_io import AnnotationSet, Category, DetectionSet
from .facade_classify import FacadeRecord, FacadeType
from .geometry import BoundingBox, area, intersection_area

# matrix label for records without a facade type (no windows)
NO_WINDOWS_LABEL = "no_windows"


class InputError(ValueError):
    """Ground truth and predictions do not line up."""


@dataclass(frozen=True)
class MatchConfig:
    iou_threshold: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.iou_threshold <= 1.0:
            raise ValueError(f"iou_threshold must be in (0, 1], got {self.iou_threshold}")


@dataclass(frozen=True)
class CategoryAccuracy:
    detected: int
    total: int

    @property
    def accuracy(self) -> float:
        return self.detected / self.total


@dataclass(frozen=True)
class AccuracyReport:
    per_category: Mapping[str, CategoryAccuracy]

    def to_dict(self) -> dict[str, Any]:
        return {
            name: {"detected": c.detected, "total": c.total, "accuracy": c.accuracy}
            for name, c in self.per_category.items()
        }


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are ground-truth labels, columns predicted labels."""

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def row_total(self, label: str) -> int:
        return sum(self.counts[self.labels.index(label)])

    def per_class_accuracy(self) -> dict[str, float]:
        result = {}
        for i, label in enumerate(self.labels):
            total = sum(self.counts[i])
            if total > 0:
                result[label] = self.counts[i][i] / total
        return result

    def to_dict(self) -> dict[str, Any]:
        return {
            "labels": list(self.labels),
            "counts": [list(row) for row in self.counts],
            "per_class_accuracy": self.per_class_accuracy(),
        }


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection over union, in [0, 1]."""
    overlap = intersection_area(a, b)
    if overlap == 0:
        return 0.0
    return overlap / (area(a) + area(b) - overlap)


def _match_one_image(
    ground_boxes: Sequence[BoundingBox],
    predictions: Sequence[tuple[BoundingBox, float]],
    threshold: float,
) -> int:
    """Greedy one-to-one matching; returns how many ground boxes matched.

    Predictions are visited in descending score (stable on ties); each takes
    the unmatched ground box with the highest IoU when that IoU clears the
    threshold, lower index winning IoU ties.
    """
    order = sorted(range(len(predictions)), key=lambda i: -predictions[i][1])
    matched = [False] * len(ground_boxes)
    count = 0
    for pi in order:
        pred_box = predictions[pi][0]
        best_gi = -1
        best_iou = 0.0
        for gi, gt_box in enumerate(ground_boxes):
            if matched[gi]:
                continue
            value = iou(pred_box, gt_box)
            if value > best_iou:
                best_iou = value
                best_gi = gi
        if best_gi >= 0 and best_iou >= threshold:
            matched[best_gi] = True
            count += 1
    return count


def detection_accuracy(
    ground: AnnotationSet,
    predicted: Sequence[DetectionSet],
    cfg: MatchConfig,
) -> AccuracyReport:
    """Per-category detected/total accuracy over a corpus.

    Filenames must align exactly between the ground truth and the predicted
    sets; categories with no ground-truth objects are omitted.
    """
    by_filename: dict[str, DetectionSet] = {}
    for ds in predicted:
        if ds.filename in by_filename:
            raise InputError(f"duplicate prediction file for {ds.filename!r}")
        by_filename[ds.filename] = ds
    ground_names = {entry.filename for entry in ground.entries}
    predicted_names = set(by_filename)
    if ground_names != predicted_names:
        missing = sorted(ground_names - predicted_names)
        extra = sorted(predicted_names - ground_names)
        raise InputError(
            f"filename mismatch between ground truth and predictions "
            f"(missing: {missing}, extra: {extra})"
        )

    detected = {category: 0 for category in Category}
    totals = {category: 0 for category in Category}
    for entry in ground.entries:
        detections = by_filename[entry.filename].detections
        for category in Category:
            ground_boxes = [r.box for r in entry.regions if r.category is category]
            predictions = [
                (d.box, d.score) for d in detections if d.category is category
            ]
            totals[category] += len(ground_boxes)
            detected[category] += _match_one_image(
                ground_boxes, predictions, cfg.iou_threshold
            )

    return AccuracyReport(
        per_category={
            category.value: CategoryAccuracy(detected[category], totals[category])
            for category in Category
            if totals[category] > 0
        }
    )


def _record_label(record: FacadeRecord) -> str:
    if record.facade_type is None:
        return NO_WINDOWS_LABEL
    return record.facade_type.value


def classification_report(
    ground: Sequence[FacadeRecord],
    predicted: Sequence[FacadeRecord],
) -> ConfusionMatrix:
    """Confusion matrix over facade types for aligned record lists.

    Records must pair up positionally with matching building indices. The
    label set is the three facade types, extended by a "no_windows" label
    only when some record carries no type.
    """
    if len(ground) != len(predicted):
        raise InputError(
            f"record count mismatch: {len(ground)} ground vs {len(predicted)} predicted"
        )
    for g, p in zip(ground, predicted):
        if g.building_index != p.building_index:
            raise InputError(
                f"misaligned records: building {g.building_index} vs {p.building_index}"
            )

    labels = [t.value for t in FacadeType]
    if any(r.facade_type is None for r in list(ground) + list(predicted)):
        labels.append(NO_WINDOWS_LABEL)
    index = {label: i for i, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    for g, p in zip(ground, predicted):
        counts[index[_record_label(g)]][index[_record_label(p)]] += 1
    return ConfusionMatrix(
        labels=tuple(labels),
        counts=tuple(tuple(row) for row in counts),
    )


def render_accuracy_table(report: AccuracyReport) -> str:
    """Aligned plain-text accuracy table."""
    rows = [("category", "detected", "total", "accuracy")]
    for name, acc in report.per_category.items():
        rows.append((name, str(acc.detected), str(acc.total), f"{acc.accuracy:.4f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows
    )


def render_confusion_table(matrix: ConfusionMatrix) -> str:
    """Aligned plain-text confusion matrix with per-class accuracy."""
    header = ("truth \\ predicted",) + matrix.labels + ("accuracy",)
    rows = [header]
    accuracy = matrix.per_class_accuracy()
    for i, label in enumerate(matrix.labels):
        acc = f"{accuracy[label]:.4f}" if label in accuracy else "-"
        rows.append((label,) + tuple(str(c) for c in matrix.counts[i]) + (acc,))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows
    )
