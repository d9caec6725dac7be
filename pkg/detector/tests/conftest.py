import json
import time
from pathlib import Path
from types import SimpleNamespace

import pytest

from facade_pipeline.annotation_io import parse_annotations
from facade_pipeline.cli import main as pipeline_main

# measurements worth keeping in the run log even when their test passes
DOCUMENTED_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def document():
    def _add(line: str) -> None:
        DOCUMENTED_RESULTS.append(line)

    return _add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if DOCUMENTED_RESULTS:
        terminalreporter.section("documented results (detector)")
        for line in DOCUMENTED_RESULTS:
            terminalreporter.write_line(line)


def make_corpus(root: Path, counts: dict[str, int], seed: int, name: str = "corpus") -> Path:
    spec = root / f"{name}_spec.json"
    spec.write_text(json.dumps({"corpus": {"counts": counts}, "seed": seed}))
    out = root / name
    assert pipeline_main(["synth", "--input", str(spec), "--out", str(out)]) == 0
    return out


@pytest.fixture(scope="session")
def tiny_corpus(tmp_path_factory) -> Path:
    return make_corpus(tmp_path_factory.mktemp("detector"), {"other": 2}, seed=11)


@pytest.fixture(scope="session")
def toy_corpus(tmp_path_factory) -> Path:
    counts = {"front_curtain_wall": 7, "repeated_single_windows": 7, "other": 6}
    return make_corpus(tmp_path_factory.mktemp("detector"), counts, seed=5)


@pytest.fixture(scope="session")
def toy_run(toy_corpus, tmp_path_factory) -> SimpleNamespace:
    """One 300-iteration overfit run shared by the trend and contract tests."""
    from facade_detector import TrainConfig, convert_dataset, train

    annotations = parse_annotations((toy_corpus / "annotations.json").read_text())
    dataset = convert_dataset(annotations, toy_corpus / "images")
    out = tmp_path_factory.mktemp("toy_run")
    started = time.perf_counter()
    result = train(TrainConfig(max_iterations=300), dataset, out, seed=0)
    elapsed = time.perf_counter() - started
    return SimpleNamespace(
        corpus=toy_corpus,
        dataset_size=len(dataset),
        result=result,
        elapsed=elapsed,
    )
