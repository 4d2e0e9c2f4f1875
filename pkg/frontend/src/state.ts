/**
 * UI state and the transitions the widgets drive. Pure functions so the
 * stale-banner invariant is testable without a DOM: a displayed
 * artifact is stale exactly when its config hash differs from the
 * server's hash for the currently tuned configuration.
 */
import type { ResolvedParams, SegmentResponse, StepSpec } from "./api.js";

export type ViewMode = "original" | "mask" | "uncertainty" | "provenance" | "side-by-side";

export interface SliderValues {
  shiftGray: number;
  spanGray: number;
  nav: number;
  randomness: number;
  lb: number;
  greenCut: number;
}

export interface RunInfo {
  configHash: string;
  durationMs: number;
  uncertainPixels: number;
}

export interface UiState {
  sessionId: string | null;
  sliders: SliderValues;
  sliderErrors: Partial<Record<keyof SliderValues, string>>;
  viewMode: ViewMode;
  steps: StepSpec[];
  profileName: string;
  /** hash of the configuration currently tuned on the server */
  currentHash: string | null;
  /** hash carried by the artifacts the view is showing */
  displayedHash: string | null;
  lastRun: RunInfo | null;
  running: boolean;
  statusMessage: string;
}

export const DEFAULT_SLIDERS: SliderValues = {
  shiftGray: 110,
  spanGray: 30,
  nav: 2.0,
  randomness: 0.0,
  lb: 4.23,
  greenCut: 100,
};

export const SLIDER_BOUNDS: Record<keyof SliderValues, [number, number]> = {
  shiftGray: [0, 255],
  spanGray: [1, 255],
  nav: [0, 10],
  randomness: [-1, 1],
  lb: [0, 50],
  greenCut: [0, 255],
};

export function initialState(): UiState {
  return {
    sessionId: null,
    sliders: { ...DEFAULT_SLIDERS },
    sliderErrors: {},
    viewMode: "original",
    steps: [],
    profileName: "profile1",
    currentHash: null,
    displayedHash: null,
    lastRun: null,
    running: false,
    statusMessage: "upload an image to begin",
  };
}

/** The view must show a "stale - re-run" banner when this is true. */
export function isStale(state: UiState): boolean {
  return (
    state.displayedHash !== null &&
    state.currentHash !== null &&
    state.displayedHash !== state.currentHash
  );
}

export function sessionOpened(state: UiState, sessionId: string,
                              resolved: ResolvedParams): UiState {
  return {
    ...initialState(),
    sessionId,
    sliders: slidersFrom(resolved),
    profileName: resolved.profile_name,
    currentHash: resolved.config_hash,
    statusMessage: "session ready",
  };
}

export function slidersFrom(resolved: ResolvedParams): SliderValues {
  return {
    shiftGray: resolved.shift_gray,
    spanGray: resolved.span_gray,
    nav: resolved.nav,
    randomness: resolved.randomness,
    lb: resolved.lb,
    greenCut: resolved.green_cut,
  };
}

/** Server accepted a parameter change; artifacts keep their old hash. */
export function paramsAccepted(state: UiState, resolved: ResolvedParams): UiState {
  return {
    ...state,
    sliders: slidersFrom(resolved),
    sliderErrors: {},
    profileName: resolved.profile_name,
    currentHash: resolved.config_hash,
    statusMessage: "parameters updated",
  };
}

/** Server rejected the change (422); the error renders at the slider. */
export function paramsRejected(state: UiState, field: keyof SliderValues,
                               message: string): UiState {
  return {
    ...state,
    sliderErrors: { ...state.sliderErrors, [field]: message },
    statusMessage: `invalid ${String(field)}`,
  };
}

export function runStarted(state: UiState): UiState {
  return { ...state, running: true, statusMessage: "running..." };
}

export function runCompleted(state: UiState, response: SegmentResponse): UiState {
  return {
    ...state,
    running: false,
    currentHash: response.config_hash,
    displayedHash: response.config_hash,
    lastRun: {
      configHash: response.config_hash,
      durationMs: response.duration_ms,
      uncertainPixels: response.uncertain_pixels,
    },
    statusMessage: `run finished in ${response.duration_ms.toFixed(0)} ms`,
  };
}

/** 409 from a concurrent run; the view shows "run in progress". */
export function runConflicted(state: UiState): UiState {
  return { ...state, running: false, statusMessage: "run in progress" };
}

export function runFailed(state: UiState, message: string): UiState {
  return { ...state, running: false, statusMessage: message };
}

export function profileReplaced(state: UiState, resolved: ResolvedParams,
                                steps: StepSpec[]): UiState {
  return {
    ...state,
    steps,
    profileName: resolved.profile_name,
    currentHash: resolved.config_hash,
    statusMessage: `profile ${resolved.profile_name} applied`,
  };
}

export function viewChanged(state: UiState, mode: ViewMode): UiState {
  return { ...state, viewMode: mode };
}

/** Built-in presets mirrored for the pipeline editor. */
export const PRESET_STEPS: Record<string, StepSpec[]> = {
  profile1: [
    { type: "fill_below_area", max_area: 100 },
    { type: "erode", kernel: 3 },
    { type: "circularity_filter", area_min: 0, area_max: 71,
      circ_min: 0.0, circ_max: 1.0, mode: "remove" },
    { type: "median_blur", kernel: 5 },
  ],
  profile2: [
    { type: "fill_below_area", max_area: 100 },
    { type: "erode", kernel: 3 },
    { type: "circularity_filter", area_min: 0, area_max: 71,
      circ_min: 0.0, circ_max: 1.0, mode: "remove" },
    { type: "median_blur", kernel: 5 },
  ],
  profile_d1: [
    { type: "fill_below_area", max_area: 100 },
    { type: "erode", kernel: 3 },
    { type: "circularity_filter", area_min: 5, area_max: 293,
      circ_min: 0.0, circ_max: 1.0, mode: "remove" },
    { type: "circularity_filter", area_min: 253, area_max: 1800,
      circ_min: 0.0, circ_max: 0.31, mode: "remove" },
    { type: "median_blur", kernel: 5 },
  ],
};
