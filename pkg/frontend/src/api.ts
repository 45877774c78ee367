/** Thin client for the annotation service HTTP/JSON API. */

export interface VideoInfo {
  video_id: string;
  scene: string;
  frame_count: number;
  annotated_by_me: boolean;
}

export interface Annotation {
  video_id: string;
  annotator_id: string;
  start: number;
  end: number;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function checkOk(resp: Response): Promise<Response> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return resp;
}

export async function listVideos(annotator: string): Promise<VideoInfo[]> {
  const resp = await fetch(`/api/videos?annotator=${encodeURIComponent(annotator)}`);
  return (await checkOk(resp)).json();
}

export function frameUrl(videoId: string, frameIndex: number): string {
  return `/api/videos/${encodeURIComponent(videoId)}/frames/${frameIndex}`;
}

export async function getAnnotation(
  videoId: string,
  annotator: string,
): Promise<Annotation | null> {
  const resp = await fetch(
    `/api/videos/${encodeURIComponent(videoId)}/annotations/${encodeURIComponent(annotator)}`,
  );
  if (resp.status === 404) return null;
  return (await checkOk(resp)).json();
}

export async function putAnnotation(
  videoId: string,
  annotator: string,
  start: number,
  end: number,
): Promise<Annotation> {
  const resp = await fetch(
    `/api/videos/${encodeURIComponent(videoId)}/annotations/${encodeURIComponent(annotator)}`,
    {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ start, end }),
    },
  );
  return (await checkOk(resp)).json();
}
