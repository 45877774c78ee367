"""Synthetic toy datasets for tests, demos and end-to-end experiments.

Each synthetic video is a small grayscale scene with static noise; during
the event interval a bright square is overlaid, so the background-deviation
scorer produces a clear boxcar-shaped score signal. Annotators are simulated
by jittering the true interval boundaries.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .dataset import (
    AnnotationRecord,
    EventInterval,
    Scene,
    write_annotation_file,
)
from . import ioutils


@dataclass(frozen=True)
class SyntheticSpec:
    n_videos_a: int = 3
    n_videos_b: int = 3
    frame_count: int = 40
    image_size: int = 16
    n_annotators: int = 4
    jitter: int = 2
    seed: int = 0


def _clamped_jitter(rng, value: int, jitter: int, lo: int, hi: int) -> int:
    return int(np.clip(value + rng.integers(-jitter, jitter + 1), lo, hi))


def make_synthetic_dataset(root: Path, spec: SyntheticSpec = SyntheticSpec()) -> dict[str, EventInterval]:
    """Write a toy dataset under `root`; returns the true event per video."""
    root = Path(root)
    rng = np.random.default_rng(spec.seed)
    for sub in ("videos", "scores", "annotations", "splits"):
        (root / sub).mkdir(parents=True, exist_ok=True)

    n_total = spec.n_videos_a + spec.n_videos_b
    video_ids = [f"v{i:02d}" for i in range(n_total)]
    scenes = [Scene.A] * spec.n_videos_a + [Scene.B] * spec.n_videos_b
    ioutils.write_csv(
        root / "videos" / "scenes.csv",
        ["video", "scene"],
        [(vid, scene.value) for vid, scene in zip(video_ids, scenes)],
    )

    size = spec.image_size
    truths: dict[str, EventInterval] = {}
    for vid in video_ids:
        T = spec.frame_count
        start = int(rng.integers(T // 4, T // 2))
        end = int(rng.integers(start + T // 5, min(T - 2, start + T // 2)))
        truths[vid] = EventInterval(start, end)

        frame_dir = root / "videos" / vid / "frames"
        frame_dir.mkdir(parents=True, exist_ok=True)
        background = rng.integers(20, 60, size=(size, size)).astype(np.uint8)
        for t in range(T):
            frame = background.copy()
            if start <= t <= end:
                frame[size // 4 : 3 * size // 4, size // 4 : 3 * size // 4] = 220
            Image.fromarray(frame, mode="L").save(frame_dir / f"{t:06d}.png")

    for a in range(spec.n_annotators):
        annotator_id = f"U{a + 1:02d}"
        records = []
        for vid in video_ids:
            truth = truths[vid]
            T = spec.frame_count
            s = _clamped_jitter(rng, truth.start, spec.jitter, 0, T - 1)
            e = _clamped_jitter(rng, truth.end, spec.jitter, s, T - 1)
            records.append(AnnotationRecord(vid, annotator_id, EventInterval(s, e)))
        write_annotation_file(root / "annotations", annotator_id, records)

    ids_a = [vid for vid, scene in zip(video_ids, scenes) if scene == Scene.A]
    ids_b = [vid for vid, scene in zip(video_ids, scenes) if scene == Scene.B]
    lines = []
    if ids_a:
        lines.append(f"scene_a = {','.join(ids_a[: max(1, len(ids_a) // 2)])}")
    if ids_b:
        lines.append(f"scene_b = {','.join(ids_b[: max(1, len(ids_b) // 2)])}")
    ioutils.atomic_write_text(root / "splits" / "split1.cfg", "\n".join(lines) + "\n")

    return truths


def boxcar_scores(frame_count: int, event: EventInterval, noise_amplitude: float,
                  rng: np.random.Generator, amplitude: float = 1.0) -> np.ndarray:
    """Boxcar score signal plus uniform noise, as emitted by an ideal scorer."""
    scores = rng.uniform(0.0, noise_amplitude, size=frame_count)
    scores[event.start : event.end + 1] += amplitude
    return scores
