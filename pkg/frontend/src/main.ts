/**
 * Annotation frontend: video list, frame viewer with playback, timeline
 * scrubber with start/end markers, keyboard shortcuts, and save-through to
 * the annotation service.
 */

import {
  Annotation,
  VideoInfo,
  frameUrl,
  getAnnotation,
  listVideos,
  putAnnotation,
} from "./api.js";
import {
  TimelineState,
  canSave,
  handleKey,
  initialState,
  markEnd,
  markStart,
  playbackTick,
  seekFrame,
  validationMessage,
} from "./timeline.js";

const PREFETCH_AHEAD = 8;
const MAX_PLAYBACK_FPS = 20;

let annotator = "";
let videos: VideoInfo[] = [];
let activeVideo: VideoInfo | null = null;
let state: TimelineState | null = null;
let playTimer: number | null = null;
let saving = false;
const prefetched = new Map<string, HTMLImageElement>();

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

function setBanner(message: string, kind: "ok" | "error" | ""): void {
  const banner = $("banner");
  banner.textContent = message;
  banner.className = kind;
  banner.style.display = message ? "block" : "none";
}

function playSaveCue(): void {
  try {
    const ctx = new AudioContext();
    const osc = ctx.createOscillator();
    const gain = ctx.createGain();
    osc.frequency.value = 880;
    gain.gain.setValueAtTime(0.15, ctx.currentTime);
    gain.gain.exponentialRampToValueAtTime(0.001, ctx.currentTime + 0.15);
    osc.connect(gain).connect(ctx.destination);
    osc.start();
    osc.stop(ctx.currentTime + 0.16);
    osc.onended = () => ctx.close();
  } catch {
    // audio unavailable (e.g. no user gesture yet); visual feedback suffices
  }
}

function prefetchFrames(videoId: string, from: number, frameCount: number): void {
  for (let i = from + 1; i <= Math.min(from + PREFETCH_AHEAD, frameCount - 1); i++) {
    const url = frameUrl(videoId, i);
    if (!prefetched.has(url)) {
      const img = new Image();
      img.src = url;
      prefetched.set(url, img);
      if (prefetched.size > 200) {
        const oldest = prefetched.keys().next().value as string;
        prefetched.delete(oldest);
      }
    }
  }
}

function render(): void {
  if (!activeVideo || !state) return;
  const frame = $("frame") as unknown as HTMLImageElement;
  frame.src = frameUrl(activeVideo.video_id, state.currentFrame);
  $("frame-label").textContent =
    `frame ${state.currentFrame} / ${state.frameCount - 1}`;

  const scrub = $("scrub") as unknown as HTMLInputElement;
  scrub.max = String(state.frameCount - 1);
  scrub.value = String(state.currentFrame);

  $("marker-start-label").textContent =
    state.markerStart === null ? "-" : String(state.markerStart);
  $("marker-end-label").textContent =
    state.markerEnd === null ? "-" : String(state.markerEnd);

  const markerBar = $("marker-bar");
  markerBar.innerHTML = "";
  for (const [value, cls] of [
    [state.markerStart, "marker-start"],
    [state.markerEnd, "marker-end"],
  ] as const) {
    if (value !== null) {
      const tick = document.createElement("div");
      tick.className = `marker ${cls}`;
      tick.style.left = `${(value / (state.frameCount - 1)) * 100}%`;
      markerBar.appendChild(tick);
    }
  }

  const message = validationMessage(state);
  const saveButton = $("save") as unknown as HTMLButtonElement;
  saveButton.disabled = !canSave(state) || saving;
  $("validation").textContent =
    state.markerStart !== null && state.markerEnd !== null && message ? message : "";

  $("play").textContent = state.playing ? "pause" : "play";
  prefetchFrames(activeVideo.video_id, state.currentFrame, state.frameCount);
}

function update(next: TimelineState): void {
  state = next;
  syncPlayback();
  render();
}

function syncPlayback(): void {
  if (!state) return;
  if (state.playing && playTimer === null) {
    const fps = Math.min(state.playbackFps, MAX_PLAYBACK_FPS);
    playTimer = window.setInterval(() => {
      if (state) update(playbackTick(state));
    }, 1000 / fps);
  } else if (!state.playing && playTimer !== null) {
    window.clearInterval(playTimer);
    playTimer = null;
  }
}

function renderVideoList(): void {
  const list = $("video-list");
  list.innerHTML = "";
  for (const video of videos) {
    const item = document.createElement("li");
    const done = video.annotated_by_me ? " done" : "";
    item.className = `video-item${done}`;
    item.textContent =
      `${video.video_id} (scene ${video.scene}, ${video.frame_count} frames)` +
      (video.annotated_by_me ? " ✓" : "");
    item.onclick = () => openVideo(video);
    if (activeVideo && activeVideo.video_id === video.video_id) {
      item.classList.add("active");
    }
    list.appendChild(item);
  }
}

async function openVideo(video: VideoInfo): Promise<void> {
  activeVideo = video;
  let next = initialState(video.frame_count);
  let existing: Annotation | null = null;
  try {
    existing = await getAnnotation(video.video_id, annotator);
  } catch {
    existing = null;
  }
  if (existing) {
    next = { ...next, markerStart: existing.start, markerEnd: existing.end };
  }
  update(next);
  renderVideoList();
}

async function save(): Promise<void> {
  if (!activeVideo || !state || !canSave(state) || saving) return;
  saving = true;
  render();
  try {
    const saved = await putAnnotation(
      activeVideo.video_id,
      annotator,
      state.markerStart as number,
      state.markerEnd as number,
    );
    setBanner(`saved ${saved.video_id}: [${saved.start}, ${saved.end}]`, "ok");
    playSaveCue();
    videos = await listVideos(annotator);
    renderVideoList();
  } catch (err) {
    // keep markers so the user can retry
    setBanner(`save failed: ${err instanceof Error ? err.message : err}`, "error");
  } finally {
    saving = false;
    render();
  }
}

function bindEvents(): void {
  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    if (!state) return;
    const handled = ["ArrowLeft", "ArrowRight", " ", "s", "e", "Enter"];
    if (!handled.includes(event.key)) return;
    event.preventDefault();
    const action = handleKey(state, event.key, event.shiftKey);
    update(action.state);
    if (action.save) void save();
  });

  ($("scrub") as unknown as HTMLInputElement).addEventListener("input", (event) => {
    if (!state) return;
    update(seekFrame(state, Number((event.target as HTMLInputElement).value)));
  });

  $("play").onclick = () => state && update(handleKey(state, " ", false).state);
  $("mark-start").onclick = () => state && update(markStart(state));
  $("mark-end").onclick = () => state && update(markEnd(state));
  $("save").onclick = () => void save();

  $("annotator-form").onsubmit = (event) => {
    event.preventDefault();
    void start();
  };
}

async function start(): Promise<void> {
  const input = $("annotator") as unknown as HTMLInputElement;
  const token = input.value.trim();
  if (!token) {
    setBanner("enter an annotator id first", "error");
    return;
  }
  annotator = token;
  setBanner("", "");
  try {
    videos = await listVideos(annotator);
  } catch (err) {
    setBanner(`cannot load videos: ${err instanceof Error ? err.message : err}`, "error");
    return;
  }
  $("workspace").style.display = "flex";
  renderVideoList();
  if (videos.length > 0 && !activeVideo) {
    void openVideo(videos[0]);
  }
}

bindEvents();
