import json
import warnings

import pytest
import torch

from facade_pipeline.annotation_io import AnnotationSet, parse_annotations

from facade_detector import (
    EmptyDatasetError,
    TrainConfig,
    convert_dataset,
    load_model,
    train,
)


class _ScriptedModel(torch.nn.Module):
    """Stands in for the detector; yields a fixed loss sequence."""

    def __init__(self, values):
        super().__init__()
        self.values = list(values)
        self.calls = 0
        self.bias = torch.nn.Parameter(torch.zeros(1))

    def forward(self, images, targets):
        value = self.values[min(self.calls, len(self.values) - 1)]
        self.calls += 1
        return {"loss": self.bias * 0.0 + float(value)}


@pytest.fixture
def scripted(monkeypatch):
    def _install(values):
        model = _ScriptedModel(values)
        monkeypatch.setattr(
            "facade_detector.training.build_model", lambda *a, **kw: model
        )
        return model

    return _install


@pytest.fixture
def one_image_dataset(tiny_corpus):
    annotations = parse_annotations((tiny_corpus / "annotations.json").read_text())
    first = AnnotationSet(entries=annotations.entries[:1])
    return convert_dataset(first, tiny_corpus / "images")


class TestTrainConfig:
    def test_defaults(self):
        cfg = TrainConfig()
        assert cfg.learning_rate == 0.0005
        assert cfg.max_iterations == 5000
        assert cfg.early_stop_patience is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(learning_rate=0.0),
            dict(learning_rate=-1.0),
            dict(max_iterations=0),
            dict(early_stop_patience=0),
        ],
    )
    def test_invalid_values_rejected(self, kwargs):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)


class TestTrainLoop:
    def test_empty_dataset_rejected(self, tmp_path):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            empty = convert_dataset(AnnotationSet(entries=()), ".")
        with pytest.raises(EmptyDatasetError):
            train(TrainConfig(max_iterations=1), empty, tmp_path)

    def test_single_iteration_logs_one_entry(self, scripted, one_image_dataset, tmp_path):
        scripted([1.5])
        result = train(TrainConfig(max_iterations=1), one_image_dataset, tmp_path)
        lines = result.loss_log_path.read_text().splitlines()
        assert len(lines) == 1
        entry = json.loads(lines[0])
        assert entry["iteration"] == 1
        assert entry["loss"] == pytest.approx(1.5)
        assert result.iterations_run == 1
        assert not result.stopped_early

    def test_early_stop_fires_after_patience(self, scripted, one_image_dataset, tmp_path):
        scripted([3.0, 2.0, 2.0, 2.0, 2.0, 2.0])
        cfg = TrainConfig(max_iterations=50, early_stop_patience=2)
        result = train(cfg, one_image_dataset, tmp_path)
        # best at iteration 2; iterations 3 and 4 bring no improvement
        assert result.stopped_early
        assert result.iterations_run == 4
        assert result.best_iteration == 2
        assert result.best_loss == pytest.approx(2.0)
        assert len(result.loss_log_path.read_text().splitlines()) == 4

    def test_improving_loss_never_stops_early(self, scripted, one_image_dataset, tmp_path):
        scripted([10.0 - 0.1 * i for i in range(100)])
        cfg = TrainConfig(max_iterations=20, early_stop_patience=1)
        result = train(cfg, one_image_dataset, tmp_path)
        assert not result.stopped_early
        assert result.iterations_run == 20
        assert result.best_iteration == 20

    def test_summary_matches_result(self, scripted, one_image_dataset, tmp_path):
        scripted([4.0, 5.0, 5.0])
        cfg = TrainConfig(max_iterations=10, early_stop_patience=2)
        result = train(cfg, one_image_dataset, tmp_path, seed=7)
        summary = json.loads((tmp_path / "training_summary.json").read_text())
        assert summary["iterations_run"] == result.iterations_run
        assert summary["best_loss"] == pytest.approx(result.best_loss)
        assert summary["best_iteration"] == result.best_iteration
        assert summary["stopped_early"] is result.stopped_early
        assert summary["early_stop_patience"] == 2
        assert summary["seed"] == 7
        assert summary["dataset_size"] == 1

    def test_checkpoint_saved_even_on_early_stop(self, scripted, one_image_dataset, tmp_path):
        scripted([2.0, 2.0])
        cfg = TrainConfig(max_iterations=30, early_stop_patience=1)
        result = train(cfg, one_image_dataset, tmp_path)
        assert result.stopped_early
        assert result.checkpoint_path.is_file()


class TestRealModelRoundTrip:
    def test_two_iterations_train_and_reload(self, tiny_corpus, tmp_path):
        annotations = parse_annotations((tiny_corpus / "annotations.json").read_text())
        dataset = convert_dataset(annotations, tiny_corpus / "images")
        result = train(TrainConfig(max_iterations=2), dataset, tmp_path, seed=3)
        assert result.iterations_run == 2
        lines = [json.loads(l) for l in result.loss_log_path.read_text().splitlines()]
        assert [l["iteration"] for l in lines] == [1, 2]
        assert all(l["loss"] > 0 for l in lines)
        # per-iteration log carries the platform's loss components
        assert {"loss_classifier", "loss_box_reg", "loss_objectness", "loss_rpn_box_reg"} <= set(lines[0])

        model = load_model(result.checkpoint_path)
        assert not model.training
