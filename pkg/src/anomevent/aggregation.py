"""Multi-annotator label aggregation.

Soft labels are the per-frame fraction of annotators that marked a frame as
inside the event. Consensus labels average the start/end markers across
annotators and round to integer frames. Pairwise agreement between annotators
is Cohen's kappa over frame-level binary labels pooled across all videos.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dataset import AnnotationRecord, Dataset, EventInterval, binary_label_vector
from .errors import DegenerateConsensus, EmptyAnnotations, LengthMismatch, MissingAnnotation


@dataclass(frozen=True, eq=False)
class SoftLabelSeries:
    video_id: str
    values: np.ndarray  # in [0, 1], each value k/N for integer k

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SoftLabelSeries)
            and self.video_id == other.video_id
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class ConsensusLabel:
    video_id: str
    interval: EventInterval


@dataclass(frozen=True, eq=False)
class KappaMatrix:
    annotator_ids: tuple[str, ...]
    values: np.ndarray  # symmetric, unit diagonal

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        self.values.setflags(write=False)


def soft_labels(records: list[AnnotationRecord], frame_count: int) -> SoftLabelSeries:
    """Average the annotators' binary label vectors frame by frame."""
    if not records:
        raise EmptyAnnotations("soft labels need at least one annotation record")
    video_id = records[0].video_id
    total = np.zeros(frame_count, dtype=float)
    for rec in records:
        if rec.video_id != video_id:
            raise LengthMismatch(f"mixed videos in soft label input: {video_id} vs {rec.video_id}")
        total += binary_label_vector(rec, frame_count)
    return SoftLabelSeries(video_id=video_id, values=total / len(records))


def _round_half_away_from_zero(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def consensus_label(records: list[AnnotationRecord]) -> ConsensusLabel:
    """Average start and end markers across annotators, rounded half away from zero."""
    if not records:
        raise EmptyAnnotations("consensus needs at least one annotation record")
    video_id = records[0].video_id
    mean_start = sum(rec.interval.start for rec in records) / len(records)
    mean_end = sum(rec.interval.end for rec in records) / len(records)
    start = _round_half_away_from_zero(mean_start)
    end = _round_half_away_from_zero(mean_end)
    if start > end:
        raise DegenerateConsensus(f"{video_id}: rounded consensus start {start} > end {end}")
    return ConsensusLabel(video_id=video_id, interval=EventInterval(start, end))


def cohen_kappa(a: np.ndarray, b: np.ndarray) -> float:
    """Cohen's kappa for two equal-length binary label vectors.

    kappa = (p_o - p_e) / (1 - p_e), with p_o the observed per-frame agreement
    and p_e the chance agreement from the two marginal label distributions.
    When both vectors are constant and equal (p_e = 1), kappa is defined as 1.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1 or len(a) == 0:
        raise LengthMismatch(f"kappa inputs must be equal-length 1-D vectors, got {a.shape} and {b.shape}")
    n = len(a)
    p_o = float(np.count_nonzero(a == b)) / n
    pa1 = float(np.count_nonzero(a)) / n
    pb1 = float(np.count_nonzero(b)) / n
    p_e = pa1 * pb1 + (1.0 - pa1) * (1.0 - pb1)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


def kappa_matrix(dataset: Dataset) -> KappaMatrix:
    """Pairwise kappa between annotators, frames pooled across all videos.

    Every annotator must have annotated every video so that the pooled
    vectors are aligned.
    """
    annotator_ids = tuple(dataset.annotator_ids())
    if not annotator_ids:
        raise EmptyAnnotations("dataset has no annotations")
    video_ids = dataset.video_ids()

    pooled: dict[str, np.ndarray] = {}
    for annotator_id in annotator_ids:
        parts = []
        for vid in video_ids:
            rec = dataset.annotation(vid, annotator_id)
            if rec is None:
                raise MissingAnnotation(f"annotator {annotator_id} has no annotation for {vid}")
            parts.append(binary_label_vector(rec, dataset.videos[vid].frame_count))
        pooled[annotator_id] = np.concatenate(parts)

    n = len(annotator_ids)
    values = np.ones((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            k = cohen_kappa(pooled[annotator_ids[i]], pooled[annotator_ids[j]])
            values[i, j] = k
            values[j, i] = k
    return KappaMatrix(annotator_ids=annotator_ids, values=values)
