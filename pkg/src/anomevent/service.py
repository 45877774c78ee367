"""HTTP backend for the browser annotation tool.

Serves the video list and raw frame images, and persists start/end
annotations in the same per-annotator CSV files the dataset loader reads,
so anything saved through the API is immediately loadable. Writes are
serialized per annotator and rewritten atomically.
"""

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .dataset import (
    AnnotationRecord,
    EventInterval,
    check_token,
    load_dataset,
    parse_annotation_file,
    write_annotation_file,
)
from .errors import BadToken, OutOfRange, ToolkitError

LOCK_TIMEOUT_S = 5.0


class AnnotationBody(BaseModel):
    start: int
    end: int


class AnnotationStore:
    """File-backed annotation persistence, one lock per annotator file."""

    def __init__(self, annotations_dir: Path, videos):
        self._dir = Path(annotations_dir)
        self._videos = videos
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, annotator_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(annotator_id, threading.Lock())

    def records(self, annotator_id: str) -> dict[str, AnnotationRecord]:
        path = self._dir / f"{annotator_id}.csv"
        if not path.is_file():
            return {}
        return {rec.video_id: rec for rec in parse_annotation_file(path, self._videos)}

    def upsert(self, annotator_id: str, video_id: str, interval: EventInterval) -> AnnotationRecord:
        lock = self._lock_for(annotator_id)
        if not lock.acquire(timeout=LOCK_TIMEOUT_S):
            raise HTTPException(status_code=409, detail="annotation file busy, retry")
        try:
            records = self.records(annotator_id)
            record = AnnotationRecord(video_id, annotator_id, interval)
            records[video_id] = record
            write_annotation_file(self._dir, annotator_id, list(records.values()))
            return record
        finally:
            lock.release()


def create_app(dataset_root: Path, ui_dir: Path | None = None) -> FastAPI:
    dataset_root = Path(dataset_root)
    try:
        dataset = load_dataset(dataset_root)
    except ToolkitError as exc:
        raise RuntimeError(f"cannot serve dataset at {dataset_root}: {exc}") from exc

    store = AnnotationStore(dataset_root / "annotations", dataset.videos)
    frame_paths = {vid: meta.frame_paths() for vid, meta in dataset.videos.items()}

    app = FastAPI(title="anomevent annotation service")

    def _video_or_404(video_id: str):
        meta = dataset.videos.get(video_id)
        if meta is None:
            raise HTTPException(status_code=404, detail=f"unknown video {video_id}")
        return meta

    def _token_or_400(value: str, what: str) -> str:
        try:
            return check_token(value, what)
        except BadToken as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/api/videos")
    def list_videos(annotator: str | None = None):
        annotated = store.records(_token_or_400(annotator, "annotator_id")) if annotator else {}
        return [
            {
                "video_id": vid,
                "scene": dataset.videos[vid].scene.value,
                "frame_count": dataset.videos[vid].frame_count,
                "annotated_by_me": vid in annotated,
            }
            for vid in dataset.video_ids()
        ]

    @app.get("/api/videos/{video_id}/frames/{frame_index}")
    def get_frame(video_id: str, frame_index: int):
        meta = _video_or_404(video_id)
        if frame_index < 0 or frame_index >= meta.frame_count:
            raise HTTPException(status_code=404,
                                detail=f"frame {frame_index} out of range for {video_id}")
        path = frame_paths[video_id][frame_index]
        media_type = "image/png" if path.suffix.lower() == ".png" else "image/jpeg"
        return FileResponse(path, media_type=media_type,
                            headers={"Cache-Control": "public, max-age=86400, immutable"})

    @app.get("/api/videos/{video_id}/annotations/{annotator_id}")
    def get_annotation(video_id: str, annotator_id: str):
        _video_or_404(video_id)
        record = store.records(_token_or_400(annotator_id, "annotator_id")).get(video_id)
        if record is None:
            raise HTTPException(status_code=404,
                                detail=f"no annotation by {annotator_id} for {video_id}")
        return {"video_id": video_id, "annotator_id": annotator_id,
                "start": record.interval.start, "end": record.interval.end}

    @app.put("/api/videos/{video_id}/annotations/{annotator_id}")
    def put_annotation(video_id: str, annotator_id: str, body: AnnotationBody):
        meta = _video_or_404(video_id)
        annotator_id = _token_or_400(annotator_id, "annotator_id")
        try:
            interval = EventInterval(body.start, body.end)
        except OutOfRange as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if interval.end > meta.frame_count - 1:
            raise HTTPException(status_code=400,
                                detail=f"end {interval.end} exceeds last frame "
                                       f"{meta.frame_count - 1} of {video_id}")
        record = store.upsert(annotator_id, video_id, interval)
        return {"video_id": record.video_id, "annotator_id": record.annotator_id,
                "start": record.interval.start, "end": record.interval.end}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
