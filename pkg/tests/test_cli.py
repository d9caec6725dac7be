import argparse
import json
import subprocess
import sys
from pathlib import Path

import pytest

from facade_pipeline.annotation_io import parse_annotations, parse_detections
from facade_pipeline.cli import (
    EXIT_CONFIG,
    EXIT_DATA,
    EXIT_OK,
    ConfigError,
    PipelineConfig,
    _resolve_config,
    extract_records,
    main,
)
from facade_pipeline.colorimetry import Rgb
from facade_pipeline.facade_classify import FacadeRecord
from facade_pipeline.geometry import BoundingBox
from facade_pipeline.raster import RasterImage, encode_png

CORPUS_SPEC = {
    "corpus": {"counts": {"front_curtain_wall": 2, "repeated_single_windows": 2, "other": 2}},
    "seed": 21,
}

SINGLE_SPEC = {
    "canvas": [96, 96],
    "filename": "one.png",
    "seed": 0,
    "buildings": [
        {
            "box": [10, 10, 70, 70],
            "wall_color": [192, 192, 192],
            "facade_type": "other",
            "target_ratio_percent": 20,
            "window_color": [0, 0, 255],
        }
    ],
}


def _write_spec(path: Path, doc) -> Path:
    path.write_text(json.dumps(doc))
    return path


def _synth(tmp_path: Path, doc, name="corpus") -> Path:
    spec = _write_spec(tmp_path / f"{name}_spec.json", doc)
    out = tmp_path / name
    assert main(["synth", "--input", str(spec), "--out", str(out)]) == EXIT_OK
    return out


def _extract_args(corpus: Path, out: Path, *extra: str) -> list[str]:
    return [
        "extract",
        "--input",
        str(corpus / "images"),
        "--detections",
        str(corpus / "detections"),
        "--out",
        str(out),
        *extra,
    ]


class TestResolveConfig:
    def _namespace(self, **kwargs):
        defaults = dict(
            config=None,
            input=None,
            detections=None,
            out=None,
            workers=None,
            palette=None,
            containment=None,
            curtain_tolerance=None,
            iou=None,
        )
        defaults.update(kwargs)
        return argparse.Namespace(**defaults)

    def test_defaults(self):
        cfg = _resolve_config(self._namespace(), require=())
        assert cfg.workers == 1
        assert cfg.association.containment_threshold == 0.5
        assert cfg.classify.curtain_wall_area_tolerance == 0.10
        assert cfg.match.iou_threshold == 0.5
        assert cfg.palette_path is None

    def test_missing_required_setting(self):
        with pytest.raises(ConfigError, match="--input"):
            _resolve_config(self._namespace(), require=("input",))

    def test_config_file_supplies_values(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"workers": 3, "containment": 0.7, "input": "imgs"}))
        cfg = _resolve_config(self._namespace(config=str(config)), require=("input",))
        assert cfg.workers == 3
        assert cfg.association.containment_threshold == 0.7
        assert cfg.input_dir == Path("imgs")

    def test_flags_override_config_file(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"workers": 3, "iou": 0.9}))
        cfg = _resolve_config(self._namespace(config=str(config), workers=5), require=())
        assert cfg.workers == 5
        assert cfg.match.iou_threshold == 0.9

    def test_unknown_config_key(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"wrokers": 3}))
        with pytest.raises(ConfigError, match="wrokers"):
            _resolve_config(self._namespace(config=str(config)), require=())

    def test_malformed_config_file(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text("{")
        with pytest.raises(ConfigError, match="JSON"):
            _resolve_config(self._namespace(config=str(config)), require=())

    @pytest.mark.parametrize("overrides", [dict(workers=0), dict(containment=0.0), dict(iou=2.0)])
    def test_invalid_values(self, overrides):
        with pytest.raises(ConfigError):
            _resolve_config(self._namespace(**overrides), require=())

    def test_pipeline_config_validates_workers(self):
        with pytest.raises(ValueError):
            PipelineConfig(workers=0)


class TestSynth:
    def test_layout_and_determinism(self, tmp_path):
        out_a = _synth(tmp_path, CORPUS_SPEC, "a")
        out_b = _synth(tmp_path, CORPUS_SPEC, "b")
        images = sorted(p.name for p in (out_a / "images").iterdir())
        assert len(images) == 6
        assert (out_a / "annotations.json").exists()
        assert (out_a / "records.jsonl").exists()
        assert sorted(p.name for p in (out_a / "detections").iterdir()) == [
            Path(name).stem + ".json" for name in images
        ]
        for relative in ["annotations.json", "records.jsonl"] + [f"images/{n}" for n in images]:
            assert (out_a / relative).read_bytes() == (out_b / relative).read_bytes()

    def test_seed_override_changes_output(self, tmp_path):
        spec = _write_spec(tmp_path / "spec.json", CORPUS_SPEC)
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        assert main(["synth", "--input", str(spec), "--out", str(out_a)]) == EXIT_OK
        assert main(["synth", "--input", str(spec), "--out", str(out_b), "--seed", "99"]) == EXIT_OK
        assert (out_a / "annotations.json").read_text() != (out_b / "annotations.json").read_text()

    def test_single_image_spec(self, tmp_path):
        out = _synth(tmp_path, SINGLE_SPEC, "single")
        annotations = parse_annotations((out / "annotations.json").read_text())
        assert annotations.entries[0].filename == "one.png"
        records = (out / "records.jsonl").read_text().splitlines()
        assert len(records) == 1
        record = json.loads(records[0])
        assert record["facade_type"] == "other"
        assert record["wall_color"] == "silver"

    def test_jitter_produces_offset_detections(self, tmp_path):
        clean = _synth(tmp_path, SINGLE_SPEC, "clean")
        jittered = _synth(tmp_path, {**SINGLE_SPEC, "detection_jitter": 3}, "jittered")
        assert (clean / "images/one.png").read_bytes() == (jittered / "images/one.png").read_bytes()
        assert (clean / "detections/one.json").read_text() != (
            jittered / "detections/one.json"
        ).read_text()
        # jittered boxes still parse cleanly
        parse_detections((jittered / "detections/one.json").read_text())

    def test_unachievable_spec_fails_with_config_exit(self, tmp_path, capsys):
        doc = {**SINGLE_SPEC, "buildings": [dict(SINGLE_SPEC["buildings"][0], target_ratio_percent=95)]}
        spec = _write_spec(tmp_path / "spec.json", doc)
        assert main(["synth", "--input", str(spec), "--out", str(tmp_path / "out")]) == EXIT_CONFIG
        assert "error" in capsys.readouterr().err

    def test_malformed_spec_file(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        spec.write_text("{nope")
        assert main(["synth", "--input", str(spec), "--out", str(tmp_path / "out")]) == EXIT_CONFIG

    def test_missing_spec_file(self, tmp_path):
        assert (
            main(["synth", "--input", str(tmp_path / "none.json"), "--out", str(tmp_path / "out")])
            == EXIT_CONFIG
        )


class TestExtract:
    def test_closure_against_ground_truth(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, out)) == EXIT_OK
        assert out.read_bytes() == (corpus / "records.jsonl").read_bytes()

    def test_worker_counts_agree(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        out_serial = tmp_path / "serial.jsonl"
        out_parallel = tmp_path / "parallel.jsonl"
        assert main(_extract_args(corpus, out_serial, "--workers", "1")) == EXIT_OK
        assert main(_extract_args(corpus, out_parallel, "--workers", "3")) == EXIT_OK
        assert out_serial.read_bytes() == out_parallel.read_bytes()

    def test_corrupt_image_is_partial_failure(self, tmp_path, capsys):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        (corpus / "images" / "facade_0002.png").write_bytes(b"junk")
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, out)) == EXIT_DATA
        err = capsys.readouterr().err
        assert "facade_0002.png" in err
        # remaining images still produce records
        lines = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(lines) == 5
        assert all(line["filename"] != "facade_0002.png" for line in lines)

    def test_missing_image_is_partial_failure(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        (corpus / "images" / "facade_0000.png").unlink()
        assert main(_extract_args(corpus, tmp_path / "r.jsonl")) == EXIT_DATA

    def test_dimension_mismatch_is_partial_failure(self, tmp_path, capsys):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        detection_file = corpus / "detections" / "one.json"
        doc = json.loads(detection_file.read_text())
        doc["image_width"] = 640
        detection_file.write_text(json.dumps(doc))
        assert main(_extract_args(corpus, tmp_path / "r.jsonl")) == EXIT_DATA
        assert "640" in capsys.readouterr().err

    def test_empty_corpus_succeeds(self, tmp_path):
        (tmp_path / "images").mkdir()
        (tmp_path / "detections").mkdir()
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(tmp_path, out)) == EXIT_OK
        assert out.read_text() == ""

    def test_detections_as_single_list_file(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        docs = [
            json.loads(path.read_text())
            for path in sorted((corpus / "detections").iterdir())
        ]
        combined = tmp_path / "all_detections.json"
        combined.write_text(json.dumps(docs))
        out = tmp_path / "records.jsonl"
        args = _extract_args(corpus, out)
        args[args.index("--detections") + 1] = str(combined)
        assert main(args) == EXIT_OK
        assert out.read_bytes() == (corpus / "records.jsonl").read_bytes()

    def test_detections_as_single_document_file(self, tmp_path):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        out = tmp_path / "records.jsonl"
        args = _extract_args(corpus, out)
        args[args.index("--detections") + 1] = str(corpus / "detections" / "one.json")
        assert main(args) == EXIT_OK
        assert out.read_bytes() == (corpus / "records.jsonl").read_bytes()

    def test_duplicate_detection_documents_flagged(self, tmp_path, capsys):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        text = (corpus / "detections" / "one.json").read_text()
        (corpus / "detections" / "copy.json").write_text(text)
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, out)) == EXIT_DATA
        assert "duplicate" in capsys.readouterr().err
        # the surviving document is still processed
        assert len(out.read_text().splitlines()) == 1

    def test_unparseable_detection_document_listed(self, tmp_path, capsys):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        (corpus / "detections" / "bad.json").write_text('{"filename": 3}')
        assert main(_extract_args(corpus, tmp_path / "r.jsonl")) == EXIT_DATA
        assert "bad.json" in capsys.readouterr().err

    def test_missing_input_directory_is_config_error(self, tmp_path, capsys):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        args = _extract_args(corpus, tmp_path / "r.jsonl")
        args[args.index("--input") + 1] = str(tmp_path / "nowhere")
        assert main(args) == EXIT_CONFIG

    def test_missing_detections_path_is_config_error(self, tmp_path):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        args = _extract_args(corpus, tmp_path / "r.jsonl")
        args[args.index("--detections") + 1] = str(tmp_path / "nowhere")
        assert main(args) == EXIT_CONFIG

    def test_custom_palette_names_appear_in_records(self, tmp_path):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        palette = tmp_path / "palette.txt"
        palette.write_text("pearl 192 192 192\nink 0 0 0\n")
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, out, "--palette", str(palette))) == EXIT_OK
        record = json.loads(out.read_text().splitlines()[0])
        assert record["wall_color"] == "pearl"

    def test_records_sorted_by_filename_then_index(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        out = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, out)) == EXIT_OK
        keys = [
            (line["filename"], line["building_index"])
            for line in map(json.loads, out.read_text().splitlines())
        ]
        assert keys == sorted(keys)


class TestEval:
    def test_detection_and_record_report(self, tmp_path, capsys):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        records = tmp_path / "records.jsonl"
        assert main(_extract_args(corpus, records)) == EXIT_OK
        report_path = tmp_path / "report.json"
        code = main(
            [
                "eval",
                "--ground",
                str(corpus / "annotations.json"),
                "--detections",
                str(corpus / "detections"),
                "--ground-records",
                str(corpus / "records.jsonl"),
                "--records",
                str(records),
                "--out",
                str(report_path),
            ]
        )
        assert code == EXIT_OK
        stdout = capsys.readouterr().out
        assert "building" in stdout and "1.0000" in stdout
        report = json.loads(report_path.read_text())
        assert report["detection_accuracy"]["building"]["accuracy"] == 1.0
        assert report["confusion_matrix"]["per_class_accuracy"] == {
            "front_curtain_wall": 1.0,
            "repeated_single_windows": 1.0,
            "other": 1.0,
        }

    def test_nothing_to_evaluate_is_config_error(self, capsys):
        assert main(["eval"]) == EXIT_CONFIG
        assert "nothing to evaluate" in capsys.readouterr().err

    def test_detection_eval_needs_both_sides(self, tmp_path):
        corpus = _synth(tmp_path, SINGLE_SPEC, "single")
        assert main(["eval", "--ground", str(corpus / "annotations.json")]) == EXIT_CONFIG

    def test_record_key_mismatch_is_data_error(self, tmp_path, capsys):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        truncated = tmp_path / "short.jsonl"
        lines = (corpus / "records.jsonl").read_text().splitlines()
        truncated.write_text("\n".join(lines[:-1]) + "\n")
        code = main(
            [
                "eval",
                "--ground-records",
                str(corpus / "records.jsonl"),
                "--records",
                str(truncated),
            ]
        )
        assert code == EXIT_DATA
        assert "disagree" in capsys.readouterr().err

    def test_malformed_record_line_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("{not json}\n")
        assert (
            main(["eval", "--ground-records", str(bad), "--records", str(bad)]) == EXIT_DATA
        )

    def test_filename_mismatch_is_data_error(self, tmp_path):
        corpus_a = _synth(tmp_path, SINGLE_SPEC, "a")
        corpus_b = _synth(tmp_path, {**SINGLE_SPEC, "filename": "two.png"}, "b")
        code = main(
            [
                "eval",
                "--ground",
                str(corpus_a / "annotations.json"),
                "--detections",
                str(corpus_b / "detections"),
            ]
        )
        assert code == EXIT_DATA


class TestExtractRecords:
    def test_buildings_indexed_in_detection_order(self, tmp_path):
        corpus = _synth(tmp_path, CORPUS_SPEC)
        image_path = corpus / "images" / "facade_0000.png"
        from facade_pipeline.raster import decode
        from facade_pipeline.geometry import AssociationConfig
        from facade_pipeline.facade_classify import ClassifyConfig
        from facade_pipeline.colorimetry import DEFAULT_PALETTE

        image = decode(image_path.read_bytes())
        detections = parse_detections((corpus / "detections" / "facade_0000.json").read_text())
        records = extract_records(
            image, detections, AssociationConfig(), ClassifyConfig(), DEFAULT_PALETTE
        )
        assert [r.building_index for r in records] == list(range(len(records)))


class TestCommandLineSurface:
    """Exit codes observed through the real console entry point."""

    def _run(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "facade_pipeline.cli", *args],
            capture_output=True,
            text=True,
        )

    def test_no_arguments_is_usage_error(self):
        assert self._run().returncode == EXIT_CONFIG

    def test_unknown_subcommand_is_usage_error(self):
        assert self._run("frobnicate").returncode == EXIT_CONFIG

    def test_bad_flag_value_is_usage_error(self):
        result = self._run("extract", "--workers", "many")
        assert result.returncode == EXIT_CONFIG

    def test_help_exits_zero(self):
        result = self._run("--help")
        assert result.returncode == 0
        assert "extract" in result.stdout
