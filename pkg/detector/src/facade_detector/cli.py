"""Command line for the detector adapter.

Two modes: ``--train`` fine-tunes on an annotation document plus image
directory and writes the checkpoint, per-iteration loss log, and summary;
``--infer`` runs a checkpoint over an image directory and writes one
detection wire file per image.

Exit codes: 0 success, 1 usage or configuration error, 2 data failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from facade_pipeline.annotation_io import FormatError, parse_annotations

from .dataset import DatasetError, convert_dataset
from .inference import ModelLoadError, infer, load_model
from .training import EmptyDatasetError, TrainConfig, train

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}


class _ArgumentParser(argparse.ArgumentParser):
    # usage mistakes are configuration errors, not data errors
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="facade-detector",
        description="Fine-tune the two-class facade detector or run inference.",
    )
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--train", action="store_true", help="fine-tune on annotated images")
    mode.add_argument("--infer", action="store_true", help="run a checkpoint over images")
    parser.add_argument("--annotations", help="annotation document (train mode)")
    parser.add_argument("--images", help="image directory (both modes)")
    parser.add_argument("--weights", help="checkpoint path (infer mode)")
    parser.add_argument("--out-dir", required=True, help="output directory")
    parser.add_argument("--lr", type=float, default=0.0005, help="learning rate")
    parser.add_argument("--max-iter", type=int, default=5000, help="iteration budget")
    parser.add_argument(
        "--patience",
        type=int,
        default=None,
        help="iterations without a new best loss before stopping (default: run the full budget)",
    )
    parser.add_argument("--seed", type=int, default=0, help="shuffle and init seed")
    return parser


def _require(parser: _ArgumentParser, args: argparse.Namespace, names: list[str]) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        parser.error(f"{', '.join(missing)} required in this mode")


def _image_files(images_dir: Path) -> list[Path]:
    return sorted(p for p in images_dir.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)


def _run_train(args: argparse.Namespace) -> int:
    try:
        cfg = TrainConfig(
            learning_rate=args.lr,
            max_iterations=args.max_iter,
            early_stop_patience=args.patience,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    annotations_path = Path(args.annotations)
    images_dir = Path(args.images)
    if not annotations_path.is_file():
        print(f"error: annotation file not found: {annotations_path}", file=sys.stderr)
        return EXIT_CONFIG
    if not images_dir.is_dir():
        print(f"error: image directory not found: {images_dir}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        annotations = parse_annotations(annotations_path.read_text(encoding="utf-8"))
        dataset = convert_dataset(annotations, images_dir)
        result = train(cfg, dataset, args.out_dir, seed=args.seed)
    except (FormatError, DatasetError, EmptyDatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    stop = "stopped early" if result.stopped_early else "ran the full budget"
    print(
        f"trained {result.iterations_run} iterations ({stop}); "
        f"best loss {result.best_loss:.4f} at iteration {result.best_iteration}"
    )
    print(f"checkpoint: {result.checkpoint_path}")
    print(f"loss log: {result.loss_log_path}")
    return EXIT_OK


def _run_infer(args: argparse.Namespace) -> int:
    images_dir = Path(args.images)
    if not images_dir.is_dir():
        print(f"error: image directory not found: {images_dir}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        model = load_model(args.weights)
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    failures = 0
    written = 0
    for image_path in _image_files(images_dir):
        try:
            infer(model, [image_path], args.out_dir)
            written += 1
        except (OSError, ValueError) as exc:
            failures += 1
            print(f"error: {image_path.name}: {exc}", file=sys.stderr)
    print(f"wrote {written} detection file(s) to {args.out_dir}, {failures} failure(s)")
    return EXIT_DATA if failures else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.train:
        _require(parser, args, ["annotations", "images"])
        return _run_train(args)
    _require(parser, args, ["weights", "images"])
    return _run_infer(args)


if __name__ == "__main__":
    raise SystemExit(main())
