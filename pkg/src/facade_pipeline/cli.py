"""Command-line pipeline: extract facade records, evaluate them, build corpora.

The ``extract`` subcommand joins detector output with image pixels and
writes one facade record per detected building as line-delimited JSON,
keyed by filename plus building index. ``eval`` scores detections against
ground-truth annotations and facade records against ground-truth records.
``synth`` renders a synthetic corpus (images, annotations, ground-truth
records, and wire-format detections) from a declarative spec file.

Exit codes: 0 on success, 1 on usage or configuration errors, 2 when some
input data could not be processed (partial failures are listed on stderr
and the remaining work still completes).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NoReturn, Sequence

from .annotation_io import (
    AnnotationSet,
    Category,
    DetectionSet,
    FormatError,
    detections_from_annotations,
    emit_annotations,
    emit_detections,
    parse_annotations,
    parse_detections,
)
from .colorimetry import (
    DEFAULT_PALETTE,
    EmptyRegionError,
    Palette,
    Rgb,
    classify_color,
    mean_rgb,
    parse_palette,
)
from .evaluation import (
    InputError,
    MatchConfig,
    classification_report,
    detection_accuracy,
    render_accuracy_table,
    render_confusion_table,
)
from .facade_classify import ClassifyConfig, FacadeRecord, FacadeType, build_record
from .geometry import AssociationConfig, BoundingBox, associate_windows
from .raster import (
    BuildingSpec,
    RasterImage,
    SyntheticSpec,
    SyntheticSpecError,
    corpus_specs,
    decode,
    encode_png,
    perturb_annotations,
    synthesize,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2

_DEFAULTS = {
    "workers": 1,
    "containment": 0.5,
    "curtain_tolerance": 0.10,
    "iou": 0.5,
}
_CONFIG_KEYS = frozenset(
    {"input", "detections", "out", "workers", "palette"} | set(_DEFAULTS)
)


class ConfigError(ValueError):
    """Configuration file or flag combination is unusable."""


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage failures exit with the configuration status."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved pipeline settings: defaults, then config file, then flags."""

    input_dir: Path | None = None
    detections_path: Path | None = None
    output_path: Path | None = None
    association: AssociationConfig = field(default_factory=AssociationConfig)
    classify: ClassifyConfig = field(default_factory=ClassifyConfig)
    match: MatchConfig = field(default_factory=MatchConfig)
    palette_path: Path | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.workers, int) or isinstance(self.workers, bool):
            raise ValueError(f"workers must be an integer, got {self.workers!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


def _load_config_file(path: Path) -> dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(doc) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(
            f"unknown config keys {unknown}; known keys: {sorted(_CONFIG_KEYS)}"
        )
    return doc


def _as_float(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}")
    return float(value)


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{what} must be an integer, got {value!r}")
    return value


def _resolve_config(args: argparse.Namespace, require: Sequence[str]) -> PipelineConfig:
    """Merge flag values over config-file values over defaults."""
    file_values = _load_config_file(Path(args.config)) if getattr(args, "config", None) else {}

    def pick(name: str) -> Any:
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return _DEFAULTS.get(name)

    paths: dict[str, Path | None] = {}
    for name in ("input", "detections", "out", "palette"):
        value = pick(name)
        if value is not None and not isinstance(value, (str, Path)):
            raise ConfigError(f"{name} must be a path string, got {value!r}")
        paths[name] = Path(value) if value is not None else None
    for name in require:
        if paths[name] is None:
            raise ConfigError(f"missing required setting --{name}")

    try:
        association = AssociationConfig(_as_float(pick("containment"), "containment"))
        classify = ClassifyConfig(_as_float(pick("curtain_tolerance"), "curtain_tolerance"))
        match = MatchConfig(_as_float(pick("iou"), "iou"))
        return PipelineConfig(
            input_dir=paths["input"],
            detections_path=paths["detections"],
            output_path=paths["out"],
            association=association,
            classify=classify,
            match=match,
            palette_path=paths["palette"],
            workers=_as_int(pick("workers"), "workers"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _load_palette(path: Path | None) -> Palette:
    if path is None:
        return DEFAULT_PALETTE
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read palette file {path}: {exc}") from exc
    try:
        return parse_palette(text)
    except ValueError as exc:
        raise ConfigError(f"palette file {path}: {exc}") from exc


def extract_records(
    image: RasterImage,
    detections: DetectionSet,
    association: AssociationConfig,
    classify: ClassifyConfig,
    palette: Palette,
) -> list[FacadeRecord]:
    """Association, classification, and wall-color naming for one image.

    Buildings are indexed by their order among building-category detections.
    A building fully covered by its windows gets no wall color.
    """
    if (detections.image_width, detections.image_height) != (image.width, image.height):
        raise InputError(
            f"detection metadata says {detections.image_width}x"
            f"{detections.image_height} but the image is {image.width}x{image.height}"
        )
    buildings = [d.box for d in detections.detections if d.category is Category.BUILDING]
    windows = [d.box for d in detections.detections if d.category is Category.WINDOW]
    associations, _ = associate_windows(buildings, windows, association)
    records = []
    for index, (box, assoc) in enumerate(zip(buildings, associations)):
        associated = [windows[i] for i in assoc.windows]
        try:
            wall_color: str | None = classify_color(mean_rgb(image, box, associated), palette)
        except EmptyRegionError:
            wall_color = None
        records.append(build_record(index, box, assoc, windows, classify, wall_color))
    return records


@dataclass(frozen=True)
class _WorkItem:
    image_path: str
    detections: DetectionSet
    association: AssociationConfig
    classify: ClassifyConfig
    palette: Palette


def _extract_one(item: _WorkItem) -> tuple[str, list[dict[str, Any]] | None, str | None]:
    """Worker body: returns (filename, record dicts, error message)."""
    filename = item.detections.filename
    try:
        data = Path(item.image_path).read_bytes()
        image = decode(data)
        records = extract_records(
            image, item.detections, item.association, item.classify, item.palette
        )
    except (OSError, ValueError) as exc:
        return filename, None, str(exc)
    return filename, [record.to_dict() for record in records], None


def _load_detection_sets(path: Path) -> tuple[list[DetectionSet], list[str]]:
    """Read detection documents from a directory or a single file.

    A directory contributes every ``*.json`` file, one document each; a file
    may hold one document or an array of documents. Unparseable documents
    become error strings instead of results.
    """
    if not path.exists():
        raise ConfigError(f"detections path {path} does not exist")
    sets: list[DetectionSet] = []
    errors: list[str] = []

    def parse_text(text: str, source: str) -> None:
        try:
            sets.append(parse_detections(text))
        except FormatError as exc:
            errors.append(f"{source}: {exc}")

    if path.is_dir():
        for file in sorted(path.glob("*.json")):
            try:
                parse_text(file.read_text(encoding="utf-8"), file.name)
            except OSError as exc:
                errors.append(f"{file.name}: {exc}")
    else:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read detections file {path}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            return [], [f"{path.name}: not valid JSON: {exc}"]
        if isinstance(doc, list):
            for i, item in enumerate(doc):
                parse_text(json.dumps(item), f"{path.name}[{i}]")
        elif isinstance(doc, dict):
            parse_text(text, path.name)
        else:
            errors.append(f"{path.name}: top level must be an object or an array")

    deduped: list[DetectionSet] = []
    seen: set[str] = set()
    for ds in sets:
        if ds.filename in seen:
            errors.append(f"{ds.filename}: duplicate detection document; keeping the first")
            continue
        seen.add(ds.filename)
        deduped.append(ds)
    return deduped, errors


def run_extract(cfg: PipelineConfig) -> int:
    """Produce the facade-record file for a corpus of images + detections.

    Records are written in filename-then-building-index order, one JSON
    object per line, independent of the worker count. Per-file failures are
    listed on stderr and turn the exit status into 2.
    """
    assert cfg.input_dir is not None
    assert cfg.detections_path is not None
    assert cfg.output_path is not None
    if not cfg.input_dir.is_dir():
        raise ConfigError(f"input directory {cfg.input_dir} does not exist")
    palette = _load_palette(cfg.palette_path)
    detection_sets, errors = _load_detection_sets(cfg.detections_path)

    items = [
        _WorkItem(
            image_path=str(cfg.input_dir / ds.filename),
            detections=ds,
            association=cfg.association,
            classify=cfg.classify,
            palette=palette,
        )
        for ds in sorted(detection_sets, key=lambda ds: ds.filename)
    ]
    if cfg.workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(items))) as pool:
            results = list(pool.map(_extract_one, items))
    else:
        results = [_extract_one(item) for item in items]

    lines: list[str] = []
    processed = 0
    for filename, record_dicts, error in results:
        if error is not None:
            errors.append(f"{filename}: {error}")
            continue
        processed += 1
        assert record_dicts is not None
        for record in record_dicts:
            lines.append(json.dumps({"filename": filename, **record}, ensure_ascii=False))

    try:
        if cfg.output_path.parent != Path():
            cfg.output_path.parent.mkdir(parents=True, exist_ok=True)
        cfg.output_path.write_text(
            "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8"
        )
    except OSError as exc:
        raise ConfigError(f"cannot write records to {cfg.output_path}: {exc}") from exc

    for message in errors:
        print(f"error: {message}", file=sys.stderr)
    print(
        f"wrote {len(lines)} record(s) for {processed} image(s) to {cfg.output_path}"
        + (f"; {len(errors)} failure(s)" if errors else "")
    )
    return EXIT_DATA if errors else EXIT_OK


def _load_record_lines(path: Path) -> list[tuple[str, FacadeRecord]]:
    """Read a facade-record file into (filename, record) pairs."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read records file {path}: {exc}") from exc
    result: list[tuple[str, FacadeRecord]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path.name}:{lineno}: not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "filename" not in data:
            raise InputError(f"{path.name}:{lineno}: record must be an object with a filename")
        try:
            record = FacadeRecord.from_dict(data)
        except (KeyError, ValueError) as exc:
            raise InputError(f"{path.name}:{lineno}: {exc}") from exc
        result.append((data["filename"], record))
    return result


def _align_records(
    ground: list[tuple[str, FacadeRecord]],
    predicted: list[tuple[str, FacadeRecord]],
) -> tuple[list[FacadeRecord], list[FacadeRecord]]:
    """Pair records by (filename, building index); mismatched keys fail."""
    key = lambda pair: (pair[0], pair[1].building_index)
    ground_sorted = sorted(ground, key=key)
    predicted_sorted = sorted(predicted, key=key)
    ground_keys = [key(pair) for pair in ground_sorted]
    predicted_keys = [key(pair) for pair in predicted_sorted]
    if ground_keys != predicted_keys:
        missing = sorted(set(ground_keys) - set(predicted_keys))[:5]
        extra = sorted(set(predicted_keys) - set(ground_keys))[:5]
        raise InputError(
            f"record keys disagree between ground truth and predictions "
            f"(missing: {missing}, extra: {extra})"
        )
    return [r for _, r in ground_sorted], [r for _, r in predicted_sorted]


def run_eval(
    cfg: PipelineConfig,
    ground: Path | None,
    ground_records: Path | None,
    records: Path | None,
) -> int:
    """Score detections and/or facade records; write a JSON report if asked.

    Detection accuracy needs ``ground`` annotations plus the configured
    detections path; the confusion matrix needs both record files.
    """
    want_detection = ground is not None or cfg.detections_path is not None
    want_records = ground_records is not None or records is not None
    if not want_detection and not want_records:
        raise ConfigError(
            "nothing to evaluate: pass --ground with --detections, "
            "or --ground-records with --records"
        )

    report_doc: dict[str, Any] = {}
    blocks: list[str] = []

    if want_detection:
        if ground is None or cfg.detections_path is None:
            raise ConfigError("detection evaluation needs both --ground and --detections")
        try:
            ground_set = parse_annotations(ground.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read ground truth {ground}: {exc}") from exc
        detection_sets, errors = _load_detection_sets(cfg.detections_path)
        if errors:
            for message in errors:
                print(f"error: {message}", file=sys.stderr)
            return EXIT_DATA
        report = detection_accuracy(ground_set, detection_sets, cfg.match)
        report_doc["detection_accuracy"] = report.to_dict()
        blocks.append(render_accuracy_table(report))

    if want_records:
        if ground_records is None or records is None:
            raise ConfigError(
                "record evaluation needs both --ground-records and --records"
            )
        ground_pairs = _load_record_lines(ground_records)
        predicted_pairs = _load_record_lines(records)
        matrix = classification_report(*_align_records(ground_pairs, predicted_pairs))
        report_doc["confusion_matrix"] = matrix.to_dict()
        blocks.append(render_confusion_table(matrix))

    print("\n\n".join(blocks))
    if cfg.output_path is not None:
        try:
            cfg.output_path.write_text(
                json.dumps(report_doc, indent=2, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
        except OSError as exc:
            raise ConfigError(f"cannot write report to {cfg.output_path}: {exc}") from exc
    return EXIT_OK


def _rgb_from_json(value: Any, what: str) -> Rgb:
    if (
        not isinstance(value, list)
        or len(value) != 3
        or any(isinstance(c, bool) or not isinstance(c, int) for c in value)
    ):
        raise ConfigError(f"{what} must be an [r, g, b] integer triple, got {value!r}")
    try:
        return Rgb(*value)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _box_from_json(value: Any, what: str) -> BoundingBox:
    if (
        not isinstance(value, list)
        or len(value) != 4
        or any(isinstance(c, bool) or not isinstance(c, int) for c in value)
    ):
        raise ConfigError(f"{what} must be an [x, y, width, height] integer list, got {value!r}")
    try:
        return BoundingBox(*value)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _canvas_from_json(value: Any, what: str) -> tuple[int, int]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(c, bool) or not isinstance(c, int) for c in value)
    ):
        raise ConfigError(f"{what} must be a [width, height] integer pair, got {value!r}")
    return (value[0], value[1])


def _building_from_json(raw: Any, what: str) -> BuildingSpec:
    if not isinstance(raw, dict):
        raise ConfigError(f"{what} must be an object")
    try:
        ftype = FacadeType(raw.get("facade_type"))
    except ValueError as exc:
        raise ConfigError(
            f"{what}: facade_type must be one of {[t.value for t in FacadeType]}"
        ) from exc
    target = raw.get("target_ratio_percent", 100.0 if ftype is FacadeType.FRONT_CURTAIN_WALL else None)
    if isinstance(target, bool) or not isinstance(target, (int, float)):
        raise ConfigError(f"{what}: target_ratio_percent must be a number")
    grid = raw.get("grid")
    if grid is not None:
        pair = _canvas_from_json(grid, f"{what}: grid")
        grid = pair
    return BuildingSpec(
        box=_box_from_json(raw.get("box"), f"{what}: box"),
        wall_color=_rgb_from_json(raw.get("wall_color"), f"{what}: wall_color"),
        facade_type=ftype,
        target_ratio_percent=float(target),
        window_color=_rgb_from_json(raw.get("window_color"), f"{what}: window_color"),
        grid=grid,
    )


def _specs_from_doc(doc: Any, seed_override: int | None) -> tuple[list[SyntheticSpec], int]:
    """Expand a synth spec document into per-image specs plus the jitter."""
    if not isinstance(doc, dict):
        raise ConfigError("synth spec must be a JSON object")
    jitter = doc.get("detection_jitter", 0)
    if isinstance(jitter, bool) or not isinstance(jitter, int) or jitter < 0:
        raise ConfigError(f"detection_jitter must be a non-negative integer, got {jitter!r}")
    seed = seed_override if seed_override is not None else doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")

    if "corpus" in doc:
        corpus = doc["corpus"]
        if not isinstance(corpus, dict) or not isinstance(corpus.get("counts"), dict):
            raise ConfigError("corpus spec needs a counts object of type -> image count")
        canvas = (128, 128)
        if "canvas" in corpus:
            canvas = _canvas_from_json(corpus["canvas"], "corpus canvas")
        try:
            return corpus_specs(corpus["counts"], canvas=canvas, seed=seed), jitter
        except (SyntheticSpecError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    if "buildings" not in doc:
        raise ConfigError("synth spec needs either a corpus section or a buildings list")
    raw_buildings = doc["buildings"]
    if not isinstance(raw_buildings, list):
        raise ConfigError("buildings must be an array")
    canvas = _canvas_from_json(doc.get("canvas"), "canvas")
    filename = doc.get("filename", "synthetic.png")
    if not isinstance(filename, str):
        raise ConfigError(f"filename must be a string, got {filename!r}")
    background = (
        _rgb_from_json(doc["background"], "background") if "background" in doc else Rgb(24, 24, 28)
    )
    buildings = tuple(
        _building_from_json(raw, f"building {i}") for i, raw in enumerate(raw_buildings)
    )
    spec = SyntheticSpec(
        canvas=canvas, buildings=buildings, seed=seed, filename=filename, background=background
    )
    return [spec], jitter


def run_synth(spec_path: Path, out_dir: Path, seed_override: int | None) -> int:
    """Render a synthetic corpus with its ground truth and detections.

    Output layout under ``out_dir``: ``images/*.png``, ``annotations.json``,
    ``records.jsonl``, and ``detections/*.json`` (ground-truth boxes at
    score 1.0, jittered when the spec asks for detection_jitter).
    """
    try:
        doc = json.loads(spec_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read spec file {spec_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"spec file {spec_path} is not valid JSON: {exc}") from exc
    specs, jitter = _specs_from_doc(doc, seed_override)

    images_dir = out_dir / "images"
    detections_dir = out_dir / "detections"
    try:
        images_dir.mkdir(parents=True, exist_ok=True)
        detections_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir}: {exc}") from exc

    entries = []
    record_lines: list[str] = []
    detection_files: list[tuple[str, str]] = []
    for index, spec in enumerate(specs):
        try:
            image, annotations, records = synthesize(spec)
        except SyntheticSpecError as exc:
            raise ConfigError(f"image {spec.filename}: {exc}") from exc
        (images_dir / spec.filename).write_bytes(encode_png(image))
        entry = annotations.entries[0]
        entries.append(entry)
        for record in records:
            record_lines.append(
                json.dumps({"filename": entry.filename, **record.to_dict()}, ensure_ascii=False)
            )
        width, height = spec.canvas
        source = annotations
        if jitter > 0:
            source = perturb_annotations(annotations, jitter, spec.seed + index, width, height)
        for detection_set in detections_from_annotations(source, width, height):
            stem = Path(entry.filename).stem
            detection_files.append((f"{stem}.json", emit_detections(detection_set)))

    try:
        merged = AnnotationSet(entries=tuple(entries))
    except FormatError as exc:
        raise ConfigError(f"spec produces duplicate filenames: {exc}") from exc
    (out_dir / "annotations.json").write_text(emit_annotations(merged) + "\n", encoding="utf-8")
    (out_dir / "records.jsonl").write_text(
        "\n".join(record_lines) + ("\n" if record_lines else ""), encoding="utf-8"
    )
    for name, text in detection_files:
        (detections_dir / name).write_text(text + "\n", encoding="utf-8")
    print(f"wrote {len(specs)} image(s) to {out_dir}")
    return EXIT_OK


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="facade-pipeline",
        description="Extract facade records from detections, evaluate, or synthesize corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    extract = sub.add_parser("extract", help="run the extraction pipeline over a corpus")
    extract.add_argument("--config", help="JSON config file; flags override its values")
    extract.add_argument("--input", help="directory holding the corpus images")
    extract.add_argument("--detections", help="detection file or directory of per-image files")
    extract.add_argument("--out", help="facade-record output file (one JSON object per line)")
    extract.add_argument("--workers", type=int, help="worker processes (default 1)")
    extract.add_argument("--palette", help="palette file: one 'name r g b' per line")
    extract.add_argument(
        "--containment",
        type=float,
        help="window area fraction that must overlap an elevation (default 0.5)",
    )
    extract.add_argument(
        "--curtain-tolerance",
        type=float,
        dest="curtain_tolerance",
        help="curtain-wall area tolerance as an elevation fraction (default 0.10)",
    )

    evaluate = sub.add_parser("eval", help="score detections and facade records")
    evaluate.add_argument("--config", help="JSON config file; flags override its values")
    evaluate.add_argument("--ground", type=Path, help="ground-truth annotation file")
    evaluate.add_argument("--detections", help="detection file or directory to score")
    evaluate.add_argument("--ground-records", type=Path, dest="ground_records",
                          help="ground-truth facade-record file")
    evaluate.add_argument("--records", type=Path, help="extracted facade-record file to score")
    evaluate.add_argument("--iou", type=float, help="match threshold for detection accuracy")
    evaluate.add_argument("--out", help="optional JSON report output file")

    synth = sub.add_parser("synth", help="render a synthetic corpus from a spec file")
    synth.add_argument("--input", type=Path, required=True, help="synthesis spec file (JSON)")
    synth.add_argument("--out", type=Path, required=True, help="output directory")
    synth.add_argument("--seed", type=int, help="override the spec's random seed")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "extract":
            cfg = _resolve_config(args, require=("input", "detections", "out"))
            return run_extract(cfg)
        if args.command == "eval":
            cfg = _resolve_config(args, require=())
            return run_eval(
                cfg,
                ground=args.ground,
                ground_records=args.ground_records,
                records=args.records,
            )
        return run_synth(args.input, args.out, args.seed)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FormatError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
