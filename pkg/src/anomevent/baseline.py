"""Classical per-frame anomaly scorer.

A deterministic stand-in for learned scorers: the background is modelled as
the per-pixel mean of the training frames and a frame's anomaly score is its
mean absolute per-pixel deviation from that mean. Frames are converted to
grayscale luma before scoring.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .dataset import ScoreSeries
from .errors import DimensionMismatch, EmptyTrainingSet

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True, eq=False)
class BackgroundModel:
    mean: np.ndarray  # grayscale, values in [0, 1]
    train_frame_count: int

    def __post_init__(self):
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=float))
        self.mean.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.mean.shape


def to_grayscale(image: np.ndarray) -> np.ndarray:
    """Convert an HxWx3 RGB array (or HxW grayscale) to HxW luma in [0, 1]."""
    arr = np.asarray(image, dtype=float)
    if arr.ndim == 3:
        r, g, b = LUMA_WEIGHTS
        arr = r * arr[..., 0] + g * arr[..., 1] + b * arr[..., 2]
    if arr.max(initial=0.0) > 1.0:
        arr = arr / 255.0
    return arr


def load_frame(path: Path) -> np.ndarray:
    with Image.open(path) as img:
        return to_grayscale(np.asarray(img.convert("RGB"), dtype=float) / 255.0)


def fit_background(train_frames: list[np.ndarray]) -> BackgroundModel:
    if not train_frames:
        raise EmptyTrainingSet("background model needs at least one training frame")
    shape = np.asarray(train_frames[0]).shape
    acc = np.zeros(shape, dtype=float)
    for frame in train_frames:
        frame = np.asarray(frame, dtype=float)
        if frame.shape != shape:
            raise DimensionMismatch(f"training frame shape {frame.shape} != {shape}")
        acc += frame
    return BackgroundModel(mean=acc / len(train_frames), train_frame_count=len(train_frames))


def score_frame(model: BackgroundModel, frame: np.ndarray) -> float:
    frame = np.asarray(frame, dtype=float)
    if frame.shape != model.shape:
        raise DimensionMismatch(f"frame shape {frame.shape} != model shape {model.shape}")
    return float(np.mean(np.abs(frame - model.mean)))


def score_video(model: BackgroundModel, frame_paths: list[Path], video_id: str) -> ScoreSeries:
    scores = [score_frame(model, load_frame(p)) for p in frame_paths]
    return ScoreSeries(video_id=video_id, scores=np.asarray(scores))


def normalize_scores(series: ScoreSeries) -> ScoreSeries:
    """Per-video min-max normalization to [0, 1]; a constant series maps to zeros."""
    lo = float(series.scores.min())
    hi = float(series.scores.max())
    if hi == lo:
        values = np.zeros_like(series.scores)
    else:
        values = (series.scores - lo) / (hi - lo)
    return ScoreSeries(video_id=series.video_id, scores=values)
