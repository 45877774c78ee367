"""Evaluation metrics and the dense parameter sweep protocol.

All interval metrics count inclusive integer frames. A missing prediction
(no event selected) scores 0 everywhere. The sweep evaluates a selector on
the grid {0.00, 0.01, ..., 1.00} (101 points) and reports the earliest
argmax of the per-scene mean t-IoU.
"""

from dataclasses import dataclass

import numpy as np

from .dataset import AnnotationRecord, EventInterval, Scene
from .errors import LengthMismatch, MissingAnnotation, MissingConsensus
from .selection import SelectionMethod, SelectionParams, select_event

SWEEP_PARAMS: tuple[float, ...] = tuple(i / 100 for i in range(101))


@dataclass(frozen=True)
class SweepResult:
    model_id: str
    method: SelectionMethod
    scene: Scene
    split_id: str
    best_param: float
    best_mean_tiou: float
    curve: tuple[tuple[float, float], ...]  # (param, mean t-IoU), 101 entries


@dataclass(frozen=True)
class AnnotatorMetrics:
    annotator_id: str
    scene: Scene
    precision: float
    recall: float
    f1: float
    tiou: float


def temporal_iou(pred: EventInterval | None, truth: EventInterval) -> float:
    if pred is None:
        return 0.0
    inter = min(pred.end, truth.end) - max(pred.start, truth.start) + 1
    if inter <= 0:
        return 0.0
    union = pred.length + truth.length - inter
    return inter / union


def mae_vs_soft(scores: np.ndarray, soft: np.ndarray) -> float:
    """Mean absolute error between normalized scores and soft labels."""
    scores = np.asarray(scores, dtype=float)
    soft = np.asarray(soft, dtype=float)
    if scores.shape != soft.shape:
        raise LengthMismatch(f"scores {scores.shape} vs soft labels {soft.shape}")
    return float(np.mean(np.abs(scores - soft)))


def frame_prf(pred: EventInterval | None, truth: EventInterval,
              frame_count: int) -> tuple[float, float, float]:
    """Frame-level precision/recall/F1 of a predicted interval vs a reference."""
    if truth.end > frame_count - 1 or (pred is not None and pred.end > frame_count - 1):
        raise LengthMismatch("interval exceeds frame count")
    if pred is None:
        return 0.0, 0.0, 0.0
    tp = max(0, min(pred.end, truth.end) - max(pred.start, truth.start) + 1)
    precision = tp / pred.length
    recall = tp / truth.length
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def sweep(scores_by_video: dict[str, np.ndarray],
          consensus_by_video: dict[str, EventInterval],
          video_ids: list[str],
          method: SelectionMethod,
          *,
          model_id: str = "",
          scene: Scene = Scene.A,
          split_id: str = "") -> SweepResult:
    """Evaluate a selector on the 101-point parameter grid.

    Scores must already be normalized to [0, 1]. For each grid value the
    selector runs on every video and the t-IoU against the consensus label
    is averaged across `video_ids`.
    """
    for vid in video_ids:
        if vid not in consensus_by_video:
            raise MissingConsensus(f"no consensus label for video {vid}")

    curve = []
    for param in SWEEP_PARAMS:
        params = (SelectionParams(method, tau=param)
                  if method == SelectionMethod.THRESHOLD
                  else SelectionParams(method, rel_height=param))
        total = 0.0
        for vid in video_ids:
            pred = select_event(scores_by_video[vid], params)
            total += temporal_iou(pred, consensus_by_video[vid])
        curve.append((param, total / len(video_ids) if video_ids else 0.0))

    best_param, best_mean = curve[0]
    for param, mean in curve[1:]:
        if mean > best_mean:
            best_param, best_mean = param, mean
    return SweepResult(
        model_id=model_id,
        method=method,
        scene=scene,
        split_id=split_id,
        best_param=best_param,
        best_mean_tiou=best_mean,
        curve=tuple(curve),
    )


def per_annotator_eval(predictions: dict[str, EventInterval | None],
                       annotations: list[AnnotationRecord],
                       video_ids: list[str],
                       frame_counts: dict[str, int],
                       scene: Scene) -> list[AnnotatorMetrics]:
    """Score one fixed set of predictions against each annotator separately.

    Per annotator: P/R/F1/t-IoU per video against that annotator's interval,
    then averaged across `video_ids`.
    """
    by_annotator: dict[str, dict[str, AnnotationRecord]] = {}
    for rec in annotations:
        by_annotator.setdefault(rec.annotator_id, {})[rec.video_id] = rec

    results = []
    for annotator_id in sorted(by_annotator):
        records = by_annotator[annotator_id]
        p_sum = r_sum = f_sum = t_sum = 0.0
        for vid in video_ids:
            if vid not in records:
                raise MissingAnnotation(f"annotator {annotator_id} has no annotation for {vid}")
            truth = records[vid].interval
            pred = predictions.get(vid)
            p, r, f1 = frame_prf(pred, truth, frame_counts[vid])
            p_sum += p
            r_sum += r
            f_sum += f1
            t_sum += temporal_iou(pred, truth)
        n = len(video_ids)
        results.append(AnnotatorMetrics(
            annotator_id=annotator_id,
            scene=scene,
            precision=p_sum / n,
            recall=r_sum / n,
            f1=f_sum / n,
            tiou=t_sum / n,
        ))
    return results


def mean_std(values: list[float]) -> tuple[float, float]:
    """Mean and population standard deviation (divide by n)."""
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std(ddof=0))
