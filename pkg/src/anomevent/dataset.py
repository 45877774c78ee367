"""Core domain types and on-disk dataset ingestion.

Dataset layout (all indices 0-based, inclusive):

    root/
      videos/scenes.csv               header `video,scene`, scene in {A, B}
      videos/<video_id>/frames/       zero-padded numeric frame images (jpg/png)
      scores/<video_id>.<model>.csv   header `frame,score`, frame ascending from 0
      annotations/<annotator>.csv     header `video,start,end`, one row per video
      splits/<split_id>.cfg           lines `scene_a = v02,v03` / `scene_b = ...`
"""

import enum
import math
import re
import shutil
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadToken,
    DuplicateAnnotation,
    LengthMismatch,
    MissingFile,
    OutOfRange,
)
from . import ioutils

_TOKEN_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_-]*$")
_FRAME_SUFFIXES = (".jpg", ".jpeg", ".png")


def check_token(value: str, what: str) -> str:
    if not _TOKEN_RE.match(value):
        raise BadToken(f"invalid {what} token: {value!r}")
    return value


class Scene(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True, order=True)
class EventInterval:
    """Inclusive frame interval [start, end], 0-based."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.start > self.end:
            raise OutOfRange(f"invalid interval [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class VideoMeta:
    video_id: str
    scene: Scene
    frame_count: int
    frame_dir: Path

    def __post_init__(self):
        check_token(self.video_id, "video_id")
        if self.frame_count < 2:
            raise OutOfRange(f"{self.video_id}: frame_count must be >= 2, got {self.frame_count}")

    def frame_paths(self) -> list[Path]:
        return sorted(
            p for p in Path(self.frame_dir).iterdir()
            if p.suffix.lower() in _FRAME_SUFFIXES
        )


@dataclass(frozen=True, eq=False)
class ScoreSeries:
    """Per-frame anomaly scores for one video, one score per frame."""

    video_id: str
    scores: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "scores", np.asarray(self.scores, dtype=float))
        self.scores.setflags(write=False)
        if self.scores.ndim != 1 or len(self.scores) == 0:
            raise LengthMismatch(f"{self.video_id}: scores must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(self.scores)):
            raise OutOfRange(f"{self.video_id}: scores contain non-finite values")

    def __len__(self) -> int:
        return len(self.scores)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScoreSeries)
            and self.video_id == other.video_id
            and np.array_equal(self.scores, other.scores)
        )


@dataclass(frozen=True)
class AnnotationRecord:
    video_id: str
    annotator_id: str
    interval: EventInterval

    def __post_init__(self):
        check_token(self.video_id, "video_id")
        check_token(self.annotator_id, "annotator_id")


@dataclass(frozen=True)
class SplitConfig:
    split_id: str
    scene: Scene
    train_video_ids: tuple[str, ...]

    def __post_init__(self):
        check_token(self.split_id, "split_id")
        if not self.train_video_ids:
            raise OutOfRange(f"{self.split_id}/{self.scene.value}: empty training video list")


def binary_label_vector(rec: AnnotationRecord, frame_count: int) -> np.ndarray:
    """Expand a (start, end) annotation into a 0/1 vector of length `frame_count`."""
    if rec.interval.end > frame_count - 1:
        raise OutOfRange(
            f"{rec.video_id}/{rec.annotator_id}: interval "
            f"[{rec.interval.start}, {rec.interval.end}] exceeds last frame {frame_count - 1}"
        )
    vec = np.zeros(frame_count, dtype=np.int64)
    vec[rec.interval.start : rec.interval.end + 1] = 1
    return vec


@dataclass(frozen=True)
class Dataset:
    """Immutable in-memory view of a dataset root. Safe for concurrent reads."""

    root: Path
    videos: dict[str, VideoMeta]
    scores: dict[tuple[str, str], ScoreSeries] = field(default_factory=dict)
    annotations: tuple[AnnotationRecord, ...] = ()
    splits: tuple[SplitConfig, ...] = ()

    def video_ids(self) -> list[str]:
        return sorted(self.videos)

    def videos_in_scene(self, scene: Scene) -> list[str]:
        return sorted(v for v, meta in self.videos.items() if meta.scene == scene)

    def score_models(self) -> list[str]:
        return sorted({model for (_vid, model) in self.scores})

    def annotator_ids(self) -> list[str]:
        return sorted({rec.annotator_id for rec in self.annotations})

    def annotations_for_video(self, video_id: str) -> list[AnnotationRecord]:
        recs = [r for r in self.annotations if r.video_id == video_id]
        return sorted(recs, key=lambda r: r.annotator_id)

    def annotation(self, video_id: str, annotator_id: str) -> AnnotationRecord | None:
        for rec in self.annotations:
            if rec.video_id == video_id and rec.annotator_id == annotator_id:
                return rec
        return None


def _load_scene_map(videos_dir: Path) -> dict[str, Scene]:
    scenes_file = videos_dir / "scenes.csv"
    if not scenes_file.is_file():
        raise MissingFile(f"missing scene map: {scenes_file}")
    mapping: dict[str, Scene] = {}
    for vid, scene in ioutils.read_csv(scenes_file, ["video", "scene"]):
        check_token(vid, "video_id")
        if scene not in Scene.__members__:
            raise BadToken(f"{scenes_file}: unknown scene {scene!r} for {vid}")
        if vid in mapping:
            raise DuplicateAnnotation(f"{scenes_file}: duplicate video {vid}")
        mapping[vid] = Scene[scene]
    return mapping


def _load_videos(videos_dir: Path) -> dict[str, VideoMeta]:
    scene_map = _load_scene_map(videos_dir)
    videos: dict[str, VideoMeta] = {}
    for entry in sorted(videos_dir.iterdir()):
        if not entry.is_dir():
            continue
        vid = check_token(entry.name, "video_id")
        frame_dir = entry / "frames"
        if not frame_dir.is_dir():
            raise MissingFile(f"missing frames directory: {frame_dir}")
        frames = sorted(
            p for p in frame_dir.iterdir() if p.suffix.lower() in _FRAME_SUFFIXES
        )
        if vid not in scene_map:
            raise MissingFile(f"video {vid} has no entry in scenes.csv")
        videos[vid] = VideoMeta(
            video_id=vid,
            scene=scene_map[vid],
            frame_count=len(frames),
            frame_dir=frame_dir,
        )
    missing = set(scene_map) - set(videos)
    if missing:
        raise MissingFile(f"scenes.csv lists videos without directories: {sorted(missing)}")
    return videos


def _parse_score_file(path: Path, videos: dict[str, VideoMeta]) -> ScoreSeries:
    parts = path.name.split(".")
    if len(parts) != 3 or parts[2] != "csv":
        raise BadToken(f"score file name must be <video>.<model>.csv: {path.name}")
    vid, model = check_token(parts[0], "video_id"), check_token(parts[1], "model")
    if vid not in videos:
        raise BadToken(f"{path.name}: unknown video {vid}")
    rows = ioutils.read_csv(path, ["frame", "score"])
    frame_count = videos[vid].frame_count
    if len(rows) != frame_count:
        raise LengthMismatch(
            f"{path.name}: {len(rows)} score rows for a {frame_count}-frame video"
        )
    scores = np.empty(frame_count, dtype=float)
    for i, (frame, score) in enumerate(rows):
        if int(frame) != i:
            raise OutOfRange(f"{path.name}: frame column must ascend from 0, got {frame} at row {i}")
        value = float(score)
        if not math.isfinite(value):
            raise OutOfRange(f"{path.name}: non-finite score at frame {i}")
        scores[i] = value
    return ScoreSeries(video_id=vid, scores=scores)


def parse_annotation_file(path: Path, videos: dict[str, VideoMeta]) -> list[AnnotationRecord]:
    annotator_id = check_token(path.stem, "annotator_id")
    records: list[AnnotationRecord] = []
    seen: set[str] = set()
    for vid, start, end in ioutils.read_csv(path, ["video", "start", "end"]):
        check_token(vid, "video_id")
        if vid not in videos:
            raise BadToken(f"{path.name}: unknown video {vid}")
        if vid in seen:
            raise DuplicateAnnotation(f"{path.name}: duplicate annotation for video {vid}")
        seen.add(vid)
        interval = EventInterval(int(start), int(end))
        if interval.end > videos[vid].frame_count - 1:
            raise OutOfRange(
                f"{path.name}: interval [{interval.start}, {interval.end}] "
                f"exceeds last frame of {vid}"
            )
        records.append(AnnotationRecord(vid, annotator_id, interval))
    return records


def _parse_split_file(path: Path, videos: dict[str, VideoMeta]) -> list[SplitConfig]:
    split_id = check_token(path.stem, "split_id")
    configs: list[SplitConfig] = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in ("scene_a", "scene_b"):
            raise BadToken(f"{path.name}: unknown split key {key!r}")
        scene = Scene.A if key == "scene_a" else Scene.B
        ids = tuple(tok.strip() for tok in value.split(",") if tok.strip())
        for vid in ids:
            check_token(vid, "video_id")
            if vid not in videos:
                raise BadToken(f"{path.name}: unknown training video {vid}")
        configs.append(SplitConfig(split_id=split_id, scene=scene, train_video_ids=ids))
    return configs


def load_dataset(root: Path) -> Dataset:
    """Load and cross-validate a dataset root. Deterministic for a fixed tree."""
    root = Path(root)
    for sub in ("videos", "scores", "annotations", "splits"):
        if not (root / sub).is_dir():
            raise MissingFile(f"missing required directory: {root / sub}")

    videos = _load_videos(root / "videos")

    scores: dict[tuple[str, str], ScoreSeries] = {}
    for path in sorted((root / "scores").glob("*.csv")):
        series = _parse_score_file(path, videos)
        model = path.name.split(".")[1]
        scores[(series.video_id, model)] = series

    annotations: list[AnnotationRecord] = []
    for path in sorted((root / "annotations").glob("*.csv")):
        annotations.extend(parse_annotation_file(path, videos))

    splits: list[SplitConfig] = []
    for path in sorted((root / "splits").glob("*.cfg")):
        splits.extend(_parse_split_file(path, videos))

    return Dataset(
        root=root,
        videos=videos,
        scores=scores,
        annotations=tuple(annotations),
        splits=tuple(splits),
    )


def write_score_file(scores_dir: Path, series: ScoreSeries, model: str) -> Path:
    check_token(model, "model")
    path = Path(scores_dir) / f"{series.video_id}.{model}.csv"
    ioutils.write_csv(path, ["frame", "score"], [(i, repr(float(v))) for i, v in enumerate(series.scores)])
    return path


def write_annotation_file(annotations_dir: Path, annotator_id: str,
                          records: list[AnnotationRecord]) -> Path:
    check_token(annotator_id, "annotator_id")
    rows = [
        (rec.video_id, rec.interval.start, rec.interval.end)
        for rec in sorted(records, key=lambda r: r.video_id)
    ]
    path = Path(annotations_dir) / f"{annotator_id}.csv"
    ioutils.write_csv(path, ["video", "start", "end"], rows)
    return path


def save_dataset(dataset: Dataset, root: Path, copy_frames: bool = True) -> None:
    """Write a dataset back to disk in the canonical layout (round-trip safe)."""
    root = Path(root)
    for sub in ("videos", "scores", "annotations", "splits"):
        (root / sub).mkdir(parents=True, exist_ok=True)

    ioutils.write_csv(
        root / "videos" / "scenes.csv",
        ["video", "scene"],
        [(vid, dataset.videos[vid].scene.value) for vid in dataset.video_ids()],
    )
    for vid in dataset.video_ids():
        frame_dir = root / "videos" / vid / "frames"
        frame_dir.mkdir(parents=True, exist_ok=True)
        if copy_frames:
            for src in dataset.videos[vid].frame_paths():
                dst = frame_dir / src.name
                if not dst.exists():
                    shutil.copyfile(src, dst)

    for (vid, model), series in dataset.scores.items():
        write_score_file(root / "scores", series, model)

    by_annotator: dict[str, list[AnnotationRecord]] = {}
    for rec in dataset.annotations:
        by_annotator.setdefault(rec.annotator_id, []).append(rec)
    for annotator_id, records in by_annotator.items():
        write_annotation_file(root / "annotations", annotator_id, records)

    by_split: dict[str, list[SplitConfig]] = {}
    for cfg in dataset.splits:
        by_split.setdefault(cfg.split_id, []).append(cfg)
    for split_id, configs in by_split.items():
        lines = []
        for cfg in sorted(configs, key=lambda c: c.scene.value):
            key = "scene_a" if cfg.scene == Scene.A else "scene_b"
            lines.append(f"{key} = {','.join(cfg.train_video_ids)}")
        ioutils.atomic_write_text(root / "splits" / f"{split_id}.cfg", "\n".join(lines) + "\n")
