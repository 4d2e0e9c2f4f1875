/**
 * Typed client for the calibration service. Every artifact fetch keeps
 * the X-Config-Hash header so the UI can detect stale views; errors map
 * to typed exceptions the widgets render inline.
 */

export interface SessionCreated {
  session_id: string;
  width: number;
  height: number;
  channels: number;
}

export interface ResolvedParams {
  shift_gray: number;
  span_gray: number;
  a: number;
  b: number;
  c: number;
  alpha: number;
  beta: number;
  v_dark: number;
  v_gray: number;
  v_bright: number;
  lower_cut: number;
  upper_cut: number;
  lb: number;
  nav: number;
  randomness: number;
  patch_size: number;
  green_cut: number;
  classify_on: string;
  variogram_distance: string;
  profile_name: string;
  config_hash: string;
}

export interface ParamsUpdate {
  shift_gray?: number;
  span_gray?: number;
  lb?: number;
  nav?: number;
  randomness?: number;
  green_cut?: number;
  patch_size?: number;
  classify_on?: string;
  variogram_distance?: string;
}

export interface SegmentResponse {
  config_hash: string;
  duration_ms: number;
  uncertain_pixels: number;
  provenance_counts: Record<string, number>;
}

export interface DenoiseResponse {
  config_hash: string;
  duration_ms: number;
  foreground_pixels: number;
}

export interface StepSpec {
  type: string;
  [param: string]: unknown;
}

export interface Artifact {
  bytes: ArrayBuffer;
  configHash: string;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

/** 422: a parameter was rejected; rendered inline at the control. */
export class ValidationError extends ApiError {
  constructor(detail: string) {
    super(detail, 422);
  }
}

/** 409: a run is already in flight on this session. */
export class BusyError extends ApiError {
  constructor() {
    super("run in progress", 409);
  }
}

export class NotFoundError extends ApiError {
  constructor(detail: string) {
    super(detail, 404);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function raise(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail) detail = JSON.stringify(body.detail);
  } catch {
    /* non-JSON error body */
  }
  if (response.status === 422) throw new ValidationError(detail);
  if (response.status === 409) throw new BusyError();
  if (response.status === 404) throw new NotFoundError(detail);
  throw new ApiError(detail, response.status);
}

export class BrightsegClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.url(path), init);
    if (!response.ok) await raise(response);
    return (await response.json()) as T;
  }

  private async artifact(path: string): Promise<Artifact> {
    const response = await this.fetchImpl(this.url(path));
    if (!response.ok) await raise(response);
    return {
      bytes: await response.arrayBuffer(),
      configHash: response.headers.get("X-Config-Hash") ?? "",
    };
  }

  health(): Promise<{ status: string }> {
    return this.json("/healthz");
  }

  async createSession(file: Blob, filename = "image.png"): Promise<SessionCreated> {
    const form = new FormData();
    form.append("file", file, filename);
    return this.json("/sessions", { method: "POST", body: form });
  }

  getParams(sessionId: string): Promise<ResolvedParams> {
    return this.json(`/sessions/${sessionId}/params`);
  }

  putParams(sessionId: string, update: ParamsUpdate): Promise<ResolvedParams> {
    return this.json(`/sessions/${sessionId}/params`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(update),
    });
  }

  segment(sessionId: string): Promise<SegmentResponse> {
    return this.json(`/sessions/${sessionId}/segment`, { method: "POST" });
  }

  putProfile(sessionId: string, steps: StepSpec[], name?: string): Promise<ResolvedParams> {
    return this.json(`/sessions/${sessionId}/profile`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ name, steps }),
    });
  }

  denoise(sessionId: string): Promise<DenoiseResponse> {
    return this.json(`/sessions/${sessionId}/denoise`, { method: "POST" });
  }

  image(sessionId: string): Promise<Artifact> {
    return this.artifact(`/sessions/${sessionId}/image`);
  }

  mask(sessionId: string): Promise<Artifact> {
    return this.artifact(`/sessions/${sessionId}/mask`);
  }

  uncertainty(sessionId: string, overlay = false): Promise<Artifact> {
    const suffix = overlay ? "?overlay=true" : "";
    return this.artifact(`/sessions/${sessionId}/uncertainty${suffix}`);
  }

  provenance(sessionId: string): Promise<Artifact> {
    return this.artifact(`/sessions/${sessionId}/provenance`);
  }

  export(sessionId: string): Promise<Artifact> {
    return this.artifact(`/sessions/${sessionId}/export`);
  }
}
