import numpy as np
import pytest

from pydantic import ValidationError

from bd.classify import (
    BackendConfig,
    BackendKind,
    MaskFileBackend,
    NoisyOracleBackend,
    OracleBackend,
    classify_patch,
    classify_patches,
)
from bd.errors import (
    ConfigError,
    DimensionMismatchError,
    MaskNotFoundError,
    UnknownImageError,
)
from bd.labelgen import ClassMask
from bd.tiling import plan_grid, stitch_majority


@pytest.fixture
def reference():
    rng = np.random.default_rng(0)
    return ClassMask(labels=rng.integers(0, 3, size=(60, 80)))


class TestOracleBackend:
    """Exact reference crops."""

    def test_patch_is_exact_crop(self, reference):
        backend = OracleBackend(references={"a": reference})
        patch = classify_patch(backend, "a", (20, 10), 30, 25)
        assert np.array_equal(patch.labels, reference.labels[10:35, 20:50])

    def test_stitch_reproduces_reference(self, reference):
        backend = OracleBackend(references={"a": reference})
        grid = plan_grid(80, 60, 32, 24, 0.5)
        mask = stitch_majority(classify_patches(backend, "a", grid))
        assert np.array_equal(mask.labels, reference.labels)

    def test_unknown_image(self, reference):
        backend = OracleBackend(references={"a": reference})
        with pytest.raises(UnknownImageError):
            classify_patch(backend, "b", (0, 0), 10, 10)

    def test_grid_of_other_size(self, reference):
        backend = OracleBackend(references={"a": reference})
        with pytest.raises(DimensionMismatchError):
            classify_patches(backend, "a", plan_grid(90, 60, 30, 30, 0.5))

    def test_from_directory(self, tmp_path, reference):
        reference.save(tmp_path / "b.png")
        reference.save(tmp_path / "a.png")
        backend = OracleBackend.from_directory(tmp_path)
        assert backend.image_ids() == ["a", "b"]

        only_a = OracleBackend.from_directory(tmp_path, ["a"])
        assert only_a.image_ids() == ["a"]

        with pytest.raises(MaskNotFoundError):
            OracleBackend.from_directory(tmp_path, ["c"])


class TestNoisyOracleBackend:
    """Seeded corruption of oracle crops."""

    def test_zero_rates_equal_oracle(self, reference):
        backend = NoisyOracleBackend(references={"a": reference}, seed=3)
        patch = backend.classify_patch("a", (0, 0), 80, 60)
        assert np.array_equal(patch.labels, reference.labels)

    def test_same_seed_same_patch(self, reference):
        def patch(seed: int):
            backend = NoisyOracleBackend(
                references={"a": reference},
                seed=seed,
                flip_probability=0.2,
                false_blob_rate=2,
            )
            return backend.classify_patch("a", (8, 4), 40, 30)

        first, second, other = patch(1), patch(1), patch(2)
        assert np.array_equal(first.labels, second.labels)
        assert not np.array_equal(first.labels, other.labels)

    def test_patch_order_does_not_matter(self, reference):
        backend = NoisyOracleBackend(
            references={"a": reference}, seed=5, flip_probability=0.1
        )
        grid = plan_grid(80, 60, 40, 30, 0.5)
        forward = [
            backend.classify_patch("a", p, 40, 30).labels for p in grid.placements
        ]
        backward = [
            backend.classify_patch("a", p, 40, 30).labels
            for p in reversed(grid.placements)
        ]
        for a, b in zip(forward, reversed(backward)):
            assert np.array_equal(a, b)

    def test_flip_rate(self, reference):
        backend = NoisyOracleBackend(
            references={"a": reference}, seed=0, flip_probability=0.1
        )
        patch = backend.classify_patch("a", (0, 0), 80, 60)
        changed = np.mean(patch.labels != reference.labels)
        assert 0.05 < changed < 0.15

    def test_flip_count_is_binomial(self):
        reference = ClassMask(labels=np.zeros((64, 64), dtype=np.uint8))
        counts = np.array(
            [
                np.count_nonzero(
                    NoisyOracleBackend(
                        references={"a": reference}, seed=seed, flip_probability=0.02
                    )
                    .classify_patch("a", (0, 0), 64, 64)
                    .labels
                )
                for seed in range(1000)
            ]
        )
        n, p = 64 * 64, 0.02
        assert n * p == pytest.approx(81.92)
        sigma = np.sqrt(n * p * (1 - p) / len(counts))
        assert abs(counts.mean() - n * p) <= 3 * sigma

    def test_rejects_negative_seed(self, reference):
        with pytest.raises(ValidationError):
            NoisyOracleBackend(references={"a": reference}, seed=-1)


class TestMaskFileBackend:
    def test_reads_prediction_masks(self, tmp_path, reference):
        reference.save(tmp_path / "img.png")
        backend = MaskFileBackend(directory=tmp_path)
        assert backend.image_ids() == ["img"]
        patch = backend.classify_patch("img", (0, 0), 10, 10)
        assert np.array_equal(patch.labels, reference.labels[:10, :10])

    def test_missing_mask(self, tmp_path):
        backend = MaskFileBackend(directory=tmp_path)
        with pytest.raises(MaskNotFoundError):
            backend.classify_patch("img", (0, 0), 10, 10)


class TestBackendConfig:
    def test_builds_each_kind(self, tmp_path, reference):
        reference.save(tmp_path / "a.png")
        for kind, cls in [
            (BackendKind.ORACLE, OracleBackend),
            (BackendKind.NOISY_ORACLE, NoisyOracleBackend),
            (BackendKind.MASK_FILE, MaskFileBackend),
        ]:
            backend = BackendConfig(kind=kind, directory=tmp_path).build()
            assert type(backend) is cls
            assert backend.image_ids() == ["a"]

    def test_noise_settings_are_forwarded(self, tmp_path, reference):
        reference.save(tmp_path / "a.png")
        backend = BackendConfig(
            kind=BackendKind.NOISY_ORACLE,
            directory=tmp_path,
            seed=4,
            merge_probability=0.5,
        ).build()
        assert isinstance(backend, NoisyOracleBackend)
        assert backend.seed == 4
        assert backend.merge_probability == 0.5

    def test_needs_directory(self):
        with pytest.raises(ConfigError):
            BackendConfig().build()

    def test_missing_directory(self, tmp_path):
        with pytest.raises(MaskNotFoundError):
            BackendConfig(directory=tmp_path / "nope").build()
