import numpy as np

from bd.classify import corrupt_patch
from bd.classify.noise import merge_contacts, stamp_blob, stamp_blobs, stamp_streaks
from bd.components import ComponentConfig, label_components
from bd.labelgen import ClassMask, LabelGenConfig, SemanticClass, generate_labels
from bd.postfilter import FilterConfig
from bd.postfilter.filters import failed_filters

BACKGROUND, BERRY, EDGE = SemanticClass


def test_zero_rates_leave_patch_unchanged(rng):
    labels = rng.integers(0, 3, size=(30, 40)).astype(np.uint8)
    assert np.array_equal(corrupt_patch(labels, rng), labels)


def test_streaks_are_berry_without_edge():
    labels = np.zeros((100, 100), dtype=np.uint8)
    streaked = stamp_streaks(labels, np.random.default_rng(1), 20.0)
    assert set(np.unique(streaked)) <= {BACKGROUND, BERRY}
    assert (streaked == BERRY).any()


def test_blobs_have_open_edge_arc():
    labels = np.zeros((100, 100), dtype=np.uint8)
    blobbed = stamp_blobs(labels, np.random.default_rng(1), 20.0)
    assert (blobbed == EDGE).any()
    assert (blobbed == BERRY).sum() > (blobbed == EDGE).sum()


class TestStampBlob:
    """A single false blob on a known canvas."""

    def test_blob_fails_only_the_edge_filter(self):
        labels = np.zeros((40, 40), dtype=np.uint8)
        blobbed = stamp_blob(labels, (20.0, 20.0), 8, 0.0, 0.25)
        comps = label_components(ClassMask(labels=blobbed), ComponentConfig())

        assert len(comps) == 1
        blob = comps[0]
        assert blob.edge_surround_fraction < 0.4
        assert failed_filters(blob, FilterConfig()) == ["edge"]

    def test_arc_covers_its_share_of_the_rim(self):
        labels = np.zeros((40, 40), dtype=np.uint8)
        blobbed = stamp_blob(labels, (20.0, 20.0), 8, 0.0, 0.25)
        # Arc starts at angle 0 (+x) and turns towards +y.
        assert blobbed[21, 27] == EDGE
        assert blobbed[27, 21] == EDGE
        assert blobbed[13, 20] == BERRY
        assert blobbed[20, 13] == BERRY

    def test_zero_arc_has_no_edge(self):
        labels = np.zeros((40, 40), dtype=np.uint8)
        blobbed = stamp_blob(labels, (20.0, 20.0), 8, 1.0, 0.0)
        assert not (blobbed == EDGE).any()
        assert (blobbed == BERRY).sum() == np.sum(
            (np.arange(40)[None, :] - 20) ** 2 + (np.arange(40)[:, None] - 20) ** 2
            <= 64
        )

    def test_labeled_pixels_are_kept(self, two_berries):
        labels = generate_labels(two_berries, LabelGenConfig()).labels
        blobbed = stamp_blob(labels, (26.0, 20.0), 8, 0.0, 0.25)
        labeled = labels != BACKGROUND
        assert np.array_equal(blobbed[labeled], labels[labeled])
        assert (blobbed[~labeled] == BERRY).any()


def test_merge_contacts_joins_touching_berries(touching_berries):
    labels = generate_labels(touching_berries, LabelGenConfig()).labels
    merged = merge_contacts(labels, np.random.default_rng(0), 1.0, 2)

    # The contact band between the two cores turns into berry.
    assert labels[24, 28] == EDGE
    assert merged[24, 28] == BERRY
    # The outer edge stays.
    assert merged[24, 12] == EDGE


def test_merge_contacts_leaves_separate_berries(two_berries):
    labels = generate_labels(two_berries, LabelGenConfig()).labels
    merged = merge_contacts(labels, np.random.default_rng(0), 1.0, 2)
    assert np.array_equal(merged, labels)
