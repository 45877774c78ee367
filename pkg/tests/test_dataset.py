import numpy as np
import pytest
from hypothesis import given, strategies as st

from anomevent import ioutils
from anomevent.dataset import (
    AnnotationRecord,
    EventInterval,
    binary_label_vector,
    load_dataset,
    save_dataset,
)
from anomevent.errors import (
    BadToken,
    DuplicateAnnotation,
    LengthMismatch,
    MissingFile,
    OutOfRange,
)

from conftest import make_minimal_root


def test_load_minimal_dataset(tmp_path):
    root = make_minimal_root(tmp_path / "ds", frame_count=8)
    ds = load_dataset(root)
    assert ds.videos["v01"].frame_count == 8
    assert len(ds.scores[("v01", "demo")]) == 8
    assert len(ds.annotations) == 1
    assert ds.splits[0].train_video_ids == ("v01",)


def test_score_length_mismatch(tmp_path):
    root = make_minimal_root(tmp_path / "ds", frame_count=8, score_rows=7)
    with pytest.raises(LengthMismatch):
        load_dataset(root)


def test_duplicate_annotation(tmp_path):
    root = make_minimal_root(tmp_path / "ds")
    ioutils.write_csv(root / "annotations" / "U02.csv", ["video", "start", "end"],
                      [("v01", 1, 2), ("v01", 3, 4)])
    with pytest.raises(DuplicateAnnotation):
        load_dataset(root)


def test_missing_directory(tmp_path):
    root = make_minimal_root(tmp_path / "ds")
    (root / "splits" / "split1.cfg").unlink()
    (root / "splits").rmdir()
    with pytest.raises(MissingFile):
        load_dataset(root)


def test_annotation_for_unknown_video(tmp_path):
    root = make_minimal_root(tmp_path / "ds")
    ioutils.write_csv(root / "annotations" / "U03.csv", ["video", "start", "end"],
                      [("v99", 1, 2)])
    with pytest.raises(BadToken):
        load_dataset(root)


def test_annotation_out_of_range(tmp_path):
    root = make_minimal_root(tmp_path / "ds", frame_count=8)
    ioutils.write_csv(root / "annotations" / "U03.csv", ["video", "start", "end"],
                      [("v01", 2, 8)])
    with pytest.raises(OutOfRange):
        load_dataset(root)


def test_event_interval_invariants():
    assert EventInterval(3, 3).length == 1
    with pytest.raises(OutOfRange):
        EventInterval(4, 3)
    with pytest.raises(OutOfRange):
        EventInterval(-1, 2)


@pytest.mark.parametrize("interval,expected", [
    ((2, 4), [0, 0, 1, 1, 1, 0]),
    ((0, 5), [1, 1, 1, 1, 1, 1]),
    ((5, 5), [0, 0, 0, 0, 0, 1]),
])
def test_binary_label_vector(interval, expected):
    rec = AnnotationRecord("v01", "U01", EventInterval(*interval))
    assert binary_label_vector(rec, 6).tolist() == expected


def test_binary_label_vector_out_of_range():
    rec = AnnotationRecord("v01", "U01", EventInterval(2, 6))
    with pytest.raises(OutOfRange):
        binary_label_vector(rec, 6)


@given(st.integers(2, 200).flatmap(
    lambda t: st.tuples(st.just(t), st.integers(0, t - 1), st.integers(0, t - 1))))
def test_binary_vector_sum_equals_length(args):
    t, a, b = args
    s, e = min(a, b), max(a, b)
    rec = AnnotationRecord("v01", "U01", EventInterval(s, e))
    assert int(binary_label_vector(rec, t).sum()) == e - s + 1


def test_load_is_deterministic(toy_dataset):
    a = load_dataset(toy_dataset)
    b = load_dataset(toy_dataset)
    assert a.videos == b.videos
    assert a.scores == b.scores
    assert a.annotations == b.annotations
    assert a.splits == b.splits


def test_save_load_round_trip(toy_dataset, tmp_path):
    original = load_dataset(toy_dataset)
    copy_root = tmp_path / "copy"
    save_dataset(original, copy_root)
    reloaded = load_dataset(copy_root)
    assert {v: (m.scene, m.frame_count) for v, m in original.videos.items()} == \
           {v: (m.scene, m.frame_count) for v, m in reloaded.videos.items()}
    assert original.scores == reloaded.scores
    assert sorted(original.annotations, key=lambda r: (r.annotator_id, r.video_id)) == \
           sorted(reloaded.annotations, key=lambda r: (r.annotator_id, r.video_id))
    assert sorted(original.splits, key=lambda c: (c.split_id, c.scene.value)) == \
           sorted(reloaded.splits, key=lambda c: (c.split_id, c.scene.value))


def test_score_round_trip_preserves_values(tmp_path):
    # repr-based serialization must round-trip floats exactly
    root = make_minimal_root(tmp_path / "ds", frame_count=8)
    values = np.random.default_rng(3).uniform(size=8)
    ioutils.write_csv(root / "scores" / "v01.rand.csv", ["frame", "score"],
                      [(i, repr(float(v))) for i, v in enumerate(values)])
    ds = load_dataset(root)
    assert np.array_equal(ds.scores[("v01", "rand")].scores, values)
