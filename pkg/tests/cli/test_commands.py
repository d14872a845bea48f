import csv
import imageio.v3 as iio
import json
import numpy as np
import pytest

from typer.testing import CliRunner

from bd.cli import app
from bd.cli.utils import EXIT_CONFIG, EXIT_IO, EXIT_VALIDATION
from bd.metrics import load_report


@pytest.fixture
def runner():
    return CliRunner(env={"NO_COLOR": "1"})


def invoke(runner, *args: str):
    return runner.invoke(app, list(args))


@pytest.fixture
def synth_root(runner, tmp_path):
    """Three loose scenes in group "loose" under a fresh data root."""
    root = tmp_path / "data"
    result = invoke(
        runner,
        "synth",
        "--root", str(root),
        "--n-scenes", "3",
        "--touch-probability", "0",
        "--group", "loose",
    )  # fmt: skip
    assert result.exit_code == 0, result.stdout
    return root


@pytest.fixture
def detected_root(runner, synth_root):
    root = str(synth_root)
    assert invoke(runner, "labelgen", "--root", root).exit_code == 0
    assert invoke(runner, "detect", "--root", root).exit_code == 0
    return synth_root


class TestSynthCommand:
    """`bd synth`"""

    def test_writes_scene_folders(self, synth_root):
        for folder in ("images", "annotations", "instances", "dots", "scenes"):
            names = sorted(p.stem for p in (synth_root / folder).iterdir())
            assert names == ["scene_0000", "scene_0001", "scene_0002"]
        assert (synth_root / "config.json").is_file()

    def test_parallel_output_is_identical(self, runner, synth_root, tmp_path):
        other = tmp_path / "parallel"
        result = invoke(
            runner,
            "synth",
            "--root", str(other),
            "--n-scenes", "3",
            "--touch-probability", "0",
            "--group", "loose",
            "--num-proc", "2",
        )  # fmt: skip
        assert result.exit_code == 0
        for path in sorted((synth_root / "images").iterdir()):
            assert path.read_bytes() == (other / "images" / path.name).read_bytes()

    def test_augment(self, runner, tmp_path):
        root = tmp_path / "augmented"
        result = invoke(
            runner, "synth", "--root", str(root), "--n-scenes", "2", "--augment"
        )
        assert result.exit_code == 0
        sidecar = json.loads((root / "scenes" / "scene_0000.json").read_text())
        assert "flipped" in sidecar

    def test_invalid_probability(self, runner, tmp_path):
        result = invoke(
            runner, "synth", "--root", str(tmp_path), "--touch-probability", "2"
        )
        assert result.exit_code == EXIT_CONFIG


class TestLabelgenCommand:
    """`bd labelgen`"""

    def test_color_and_instance_inputs_agree(self, runner, synth_root, tmp_path):
        root = str(synth_root)
        assert invoke(runner, "labelgen", "--root", root).exit_code == 0
        result = invoke(
            runner,
            "labelgen",
            "--root", root,
            "--from-instances",
            "--output", str(tmp_path / "from_instances"),
        )  # fmt: skip
        assert result.exit_code == 0

        for path in sorted((synth_root / "labels").glob("*.png")):
            other = tmp_path / "from_instances" / path.name
            assert path.read_bytes() == other.read_bytes()

    def test_preview(self, runner, synth_root, tmp_path):
        result = invoke(
            runner,
            "labelgen",
            "--root", str(synth_root),
            "--preview", str(tmp_path / "preview"),
        )  # fmt: skip
        assert result.exit_code == 0
        preview = iio.imread(tmp_path / "preview" / "scene_0000.png")
        assert preview.shape == (384, 512, 3)

    def test_missing_input(self, runner, tmp_path):
        result = invoke(runner, "labelgen", "--root", str(tmp_path / "missing"))
        assert result.exit_code == EXIT_IO

    def test_empty_input(self, runner, tmp_path):
        (tmp_path / "annotations").mkdir()
        result = invoke(runner, "labelgen", "--root", str(tmp_path))
        assert result.exit_code == 0
        assert "No annotation PNGs" in result.stdout

    def test_malformed_annotation(self, runner, synth_root):
        path = synth_root / "annotations" / "scene_0001.png"
        rgb = iio.imread(path)
        rgb[0, 0] = (1, 2, 3)
        iio.imwrite(path, rgb.astype(np.uint8))

        result = invoke(runner, "labelgen", "--root", str(synth_root))
        assert result.exit_code == EXIT_VALIDATION
        # Other annotations are still converted.
        assert (synth_root / "labels" / "scene_0000.png").is_file()


class TestDetectCommand:
    """`bd detect`"""

    def test_outputs(self, detected_root):
        detections = detected_root / "detections"
        for suffix in ("mask.png", "components.csv", "rejected.csv", "overlay.png"):
            assert (detections / f"scene_0000_{suffix}").is_file()
        assert (detections / "detector.json").is_file()

    def test_invalid_overlap(self, runner, synth_root):
        result = invoke(
            runner, "detect", "--root", str(synth_root), "--overlap", "1.5"
        )
        assert result.exit_code == EXIT_CONFIG

    def test_missing_masks(self, runner, synth_root):
        result = invoke(runner, "detect", "--root", str(synth_root))
        assert result.exit_code == EXIT_IO

    def test_unknown_image(self, runner, detected_root):
        result = invoke(runner, "detect", "nope", "--root", str(detected_root))
        assert result.exit_code == EXIT_IO


class TestEvalCommand:
    """`bd eval` and `bd plot-data`"""

    def test_closed_loop(self, runner, detected_root):
        result = invoke(runner, "eval", "--root", str(detected_root))
        assert result.exit_code == 0, result.stdout

        report = load_report(detected_root / "reports" / "eval.json")
        overall = report.row("overall", "all", "post_filter")
        assert overall.correct_detection_pct == 100.0
        assert overall.misclassified_pct == 0.0
        loose = report.row("group", "loose", "post_filter")
        assert loose.n_markers == overall.n_markers
        assert report.iou is not None
        assert report.iou.iou_average == 1.0
        for pair in report.pairs:
            assert pair.manual == pair.detected

        result = invoke(runner, "plot-data", "--root", str(detected_root))
        assert result.exit_code == 0
        assert (detected_root / "reports" / "config.json").is_file()
        with open(detected_root / "reports" / "pairs.csv", newline="") as f:
            assert len(list(csv.reader(f))) == 4

    def test_patch_pairs(self, runner, detected_root):
        result = invoke(
            runner, "eval", "--root", str(detected_root), "--count-unit", "patch"
        )
        assert result.exit_code == 0
        report = load_report(detected_root / "reports" / "eval.json")
        assert report.count_unit == "patch"
        assert all(pair.placement is not None for pair in report.pairs)

    def test_groups_file(self, runner, detected_root, tmp_path):
        groups = tmp_path / "groups.json"
        groups.write_text(json.dumps({"scene_0000": "VSP"}))
        result = invoke(
            runner, "eval", "--root", str(detected_root), "--groups", str(groups)
        )
        assert result.exit_code == 0
        report = load_report(detected_root / "reports" / "eval.json")
        assert set(report.regression_by_group) == {"VSP", "loose"}

    def test_reserved_group(self, runner, detected_root, tmp_path):
        groups = tmp_path / "groups.json"
        groups.write_text(json.dumps({"scene_0000": "all"}))
        result = invoke(
            runner, "eval", "--root", str(detected_root), "--groups", str(groups)
        )
        assert result.exit_code == EXIT_VALIDATION

    def test_marker_outside_image(self, runner, detected_root):
        (detected_root / "dots" / "scene_0002.csv").write_text("9999,0\n")
        result = invoke(runner, "eval", "--root", str(detected_root))
        assert result.exit_code == EXIT_VALIDATION

    def test_invalid_count_unit(self, runner, detected_root):
        result = invoke(
            runner, "eval", "--root", str(detected_root), "--count-unit", "bunch"
        )
        assert result.exit_code == EXIT_CONFIG

    def test_missing_detections(self, runner, tmp_path):
        result = invoke(runner, "eval", "--root", str(tmp_path))
        assert result.exit_code == EXIT_IO

    def test_missing_report(self, runner, tmp_path):
        result = invoke(runner, "plot-data", "--root", str(tmp_path))
        assert result.exit_code == EXIT_IO


class TestConfigCreate:
    """`bd config create`"""

    def test_create(self, runner, tmp_path):
        path = tmp_path / "config.json"
        result = invoke(runner, "config", "create", str(path), "--root", "vines")
        assert result.exit_code == 0
        assert json.loads(path.read_text())["paths"]["root"] == "vines"

        result = invoke(runner, "config", "create", str(path))
        assert result.exit_code == EXIT_CONFIG

        result = invoke(runner, "config", "create", str(path), "--force")
        assert result.exit_code == 0

    def test_used_by_commands(self, runner, tmp_path):
        path = tmp_path / "config.json"
        config = {
            "paths": {"root": str(tmp_path / "data")},
            "synth": {"n_scenes": 1, "scene": {"seed": 7}},
        }
        path.write_text(json.dumps(config))
        result = invoke(runner, "synth", "--config", str(path))
        assert result.exit_code == 0
        assert (tmp_path / "data" / "images" / "scene_0007.png").is_file()
