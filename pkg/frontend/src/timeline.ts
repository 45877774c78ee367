/**
 * Pure timeline/marker state logic, kept DOM-free so it can be unit tested.
 *
 * Navigation always clamps to [0, frameCount - 1]; it never wraps. Markers
 * are set to the current frame (last write wins) and saving is only allowed
 * when both markers are set and ordered.
 */

export interface TimelineState {
  frameCount: number;
  currentFrame: number;
  playing: boolean;
  playbackFps: number;
  markerStart: number | null;
  markerEnd: number | null;
}

export const SMALL_STEP = 1;
export const LARGE_STEP = 10;

export function initialState(frameCount: number, playbackFps = 10): TimelineState {
  if (frameCount < 1) {
    throw new Error(`frameCount must be >= 1, got ${frameCount}`);
  }
  return {
    frameCount,
    currentFrame: 0,
    playing: false,
    playbackFps,
    markerStart: null,
    markerEnd: null,
  };
}

export function clampFrame(state: TimelineState, frame: number): number {
  return Math.min(state.frameCount - 1, Math.max(0, Math.round(frame)));
}

export function seekFrame(state: TimelineState, frame: number): TimelineState {
  return { ...state, currentFrame: clampFrame(state, frame) };
}

export function stepFrame(state: TimelineState, delta: number): TimelineState {
  return seekFrame(state, state.currentFrame + delta);
}

export function togglePlay(state: TimelineState): TimelineState {
  return { ...state, playing: !state.playing };
}

export function stopPlayback(state: TimelineState): TimelineState {
  return { ...state, playing: false };
}

/** Advance one frame during playback; stops at the last frame. */
export function playbackTick(state: TimelineState): TimelineState {
  if (!state.playing) return state;
  if (state.currentFrame >= state.frameCount - 1) return stopPlayback(state);
  return stepFrame(state, 1);
}

export function markStart(state: TimelineState): TimelineState {
  return { ...state, markerStart: state.currentFrame };
}

export function markEnd(state: TimelineState): TimelineState {
  return { ...state, markerEnd: state.currentFrame };
}

export function clearMarkers(state: TimelineState): TimelineState {
  return { ...state, markerStart: null, markerEnd: null };
}

/** Inline validation message, or null when the marker pair is acceptable. */
export function validationMessage(state: TimelineState): string | null {
  if (state.markerStart === null || state.markerEnd === null) {
    return "set both start and end markers";
  }
  if (state.markerStart > state.markerEnd) {
    return `start (${state.markerStart}) must not be after end (${state.markerEnd})`;
  }
  return null;
}

export function canSave(state: TimelineState): boolean {
  return validationMessage(state) === null;
}

export function savePayload(state: TimelineState): { start: number; end: number } | null {
  if (!canSave(state)) return null;
  return { start: state.markerStart as number, end: state.markerEnd as number };
}

export type KeyAction = { state: TimelineState; save: boolean };

/**
 * Default keybindings: arrows step 1 frame, shift+arrows jump 10, space
 * toggles playback, s/e set markers, Enter requests a save.
 */
export function handleKey(state: TimelineState, key: string, shift: boolean): KeyAction {
  switch (key) {
    case "ArrowLeft":
      return { state: stepFrame(state, shift ? -LARGE_STEP : -SMALL_STEP), save: false };
    case "ArrowRight":
      return { state: stepFrame(state, shift ? LARGE_STEP : SMALL_STEP), save: false };
    case " ":
      return { state: togglePlay(state), save: false };
    case "s":
      return { state: markStart(state), save: false };
    case "e":
      return { state: markEnd(state), save: false };
    case "Enter":
      return { state, save: canSave(state) };
    default:
      return { state, save: false };
  }
}
