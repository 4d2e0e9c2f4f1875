/**
 * DOM wiring for the calibration window: upload, sliders with a live
 * membership plot, run/inspect views, denoise pipeline editing and
 * export. All pixels come from the service; the client never segments.
 */
import { BrightsegClient, BusyError, ValidationError } from "./api.js";
import type { ParamsUpdate, StepSpec } from "./api.js";
import { resolveSliders } from "./membership.js";
import { colorizeProvenance, drawMembershipPlot, provenanceName } from "./plot.js";
import {
  initialState, isStale, paramsAccepted, paramsRejected, profileReplaced,
  runCompleted, runConflicted, runFailed, runStarted, sessionOpened,
  viewChanged, PRESET_STEPS, type SliderValues, type UiState, type ViewMode,
} from "./state.js";

const client = new BrightsegClient("");
let state: UiState = initialState();

const SLIDER_PARAM_KEYS: Record<keyof SliderValues, keyof ParamsUpdate> = {
  shiftGray: "shift_gray",
  spanGray: "span_gray",
  nav: "nav",
  randomness: "randomness",
  lb: "lb",
  greenCut: "green_cut",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function render(): void {
  el<HTMLDivElement>("status").textContent = state.statusMessage;
  const banner = el<HTMLDivElement>("stale-banner");
  banner.hidden = !isStale(state);
  el<HTMLButtonElement>("run").disabled = state.running || !state.sessionId;
  el<HTMLButtonElement>("export").disabled = !state.lastRun;
  el<HTMLButtonElement>("apply-profile").disabled = !state.sessionId;
  for (const name of Object.keys(SLIDER_PARAM_KEYS) as (keyof SliderValues)[]) {
    const err = el<HTMLSpanElement>(`err-${String(name)}`);
    err.textContent = state.sliderErrors[name] ?? "";
    el<HTMLInputElement>(`slider-${String(name)}`).value =
      String(state.sliders[name]);
    el<HTMLSpanElement>(`val-${String(name)}`).textContent =
      String(state.sliders[name]);
  }
  if (state.lastRun) {
    el<HTMLDivElement>("run-info").textContent =
      `last run ${state.lastRun.durationMs.toFixed(0)} ms, ` +
      `${state.lastRun.uncertainPixels} uncertain px, ` +
      `config ${state.lastRun.configHash.slice(0, 12)}`;
  }
  try {
    drawMembershipPlot(el<HTMLCanvasElement>("membership"),
                       resolveSliders(state.sliders.shiftGray,
                                      state.sliders.spanGray));
  } catch {
    /* out-of-range slider combination; the inline error already shows */
  }
  document.querySelectorAll<HTMLButtonElement>("[data-view]").forEach(btn => {
    btn.classList.toggle("active", btn.dataset.view === state.viewMode);
  });
}

async function showArtifact(mode: ViewMode): Promise<void> {
  if (!state.sessionId) return;
  const stage = el<HTMLDivElement>("stage");
  const hover = el<HTMLDivElement>("hover-info");
  hover.textContent = "";
  stage.innerHTML = "";
  const sid = state.sessionId;

  const toImg = async (artifact: { bytes: ArrayBuffer }) => {
    const img = document.createElement("img");
    img.src = URL.createObjectURL(new Blob([artifact.bytes], { type: "image/png" }));
    return img;
  };

  try {
    if (mode === "original") {
      stage.append(await toImg(await client.image(sid)));
    } else if (mode === "mask") {
      stage.append(await toImg(await client.mask(sid)));
    } else if (mode === "uncertainty") {
      stage.append(await toImg(await client.uncertainty(sid, true)));
    } else if (mode === "side-by-side") {
      const raw = await toImg(await client.mask(sid));
      const final = await toImg(await client.export(sid));
      raw.title = "raw mask";
      final.title = "after denoising";
      stage.append(raw, final);
    } else {
      await showProvenance(stage, hover, sid);
    }
  } catch (err) {
    state = runFailed(state, err instanceof Error ? err.message : String(err));
  }
  render();
}

async function showProvenance(stage: HTMLElement, hover: HTMLElement,
                              sid: string): Promise<void> {
  const artifact = await client.provenance(sid);
  const bitmap = await createImageBitmap(
    new Blob([artifact.bytes], { type: "image/png" }));
  const canvas = document.createElement("canvas");
  canvas.width = bitmap.width;
  canvas.height = bitmap.height;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.drawImage(bitmap, 0, 0);
  const data = ctx.getImageData(0, 0, canvas.width, canvas.height);
  const levels = new Uint8Array(canvas.width * canvas.height);
  for (let i = 0; i < levels.length; i++) levels[i] = data.data[i * 4];
  colorizeProvenance(data.data);
  ctx.putImageData(data, 0, 0);
  canvas.addEventListener("mousemove", event => {
    const rect = canvas.getBoundingClientRect();
    const x = Math.floor((event.clientX - rect.left) * canvas.width / rect.width);
    const y = Math.floor((event.clientY - rect.top) * canvas.height / rect.height);
    if (x >= 0 && y >= 0 && x < canvas.width && y < canvas.height) {
      hover.textContent =
        `(${x}, ${y}): ${provenanceName(levels[y * canvas.width + x])}`;
    }
  });
  stage.append(canvas);
}

async function onUpload(input: HTMLInputElement): Promise<void> {
  const file = input.files?.[0];
  if (!file) return;
  try {
    const created = await client.createSession(file, file.name);
    const resolved = await client.getParams(created.session_id);
    state = sessionOpened(state, created.session_id, resolved);
    render();
    await showArtifact("original");
  } catch (err) {
    state = runFailed(state, err instanceof Error ? err.message : String(err));
    render();
  }
}

async function onSlider(name: keyof SliderValues, raw: string): Promise<void> {
  if (!state.sessionId) return;
  const value = Number(raw);
  try {
    const resolved = await client.putParams(state.sessionId,
                                            { [SLIDER_PARAM_KEYS[name]]: value });
    state = paramsAccepted(state, resolved);
  } catch (err) {
    if (err instanceof ValidationError) {
      state = paramsRejected(state, name, err.message);
    } else {
      state = runFailed(state, err instanceof Error ? err.message : String(err));
    }
  }
  render();
}

async function onRun(): Promise<void> {
  const sid = state.sessionId;
  if (!sid) return;
  state = runStarted(state);
  render();
  try {
    const response = await client.segment(sid);
    state = runCompleted(state, response);
    render();
    await showArtifact(state.viewMode === "original" ? "mask" : state.viewMode);
    state = viewChanged(state, state.viewMode === "original" ? "mask" : state.viewMode);
  } catch (err) {
    state = err instanceof BusyError
      ? runConflicted(state)
      : runFailed(state, err instanceof Error ? err.message : String(err));
  }
  render();
}

async function onApplyProfile(): Promise<void> {
  const sid = state.sessionId;
  if (!sid) return;
  let steps: StepSpec[];
  const text = el<HTMLTextAreaElement>("steps-editor").value;
  try {
    steps = JSON.parse(text) as StepSpec[];
  } catch {
    state = runFailed(state, "steps editor does not contain valid JSON");
    render();
    return;
  }
  try {
    const name = el<HTMLSelectElement>("preset").value;
    const resolved = await client.putProfile(sid, steps,
                                             name === "custom" ? "custom" : name);
    state = profileReplaced(state, resolved, steps);
    if (state.lastRun) {
      await client.denoise(sid);
      state = viewChanged(state, "side-by-side");
      render();
      await showArtifact("side-by-side");
      return;
    }
  } catch (err) {
    state = runFailed(state, err instanceof Error ? err.message : String(err));
  }
  render();
}

async function onExport(): Promise<void> {
  if (!state.sessionId) return;
  try {
    const artifact = await client.export(state.sessionId);
    const link = document.createElement("a");
    link.href = URL.createObjectURL(new Blob([artifact.bytes], { type: "image/png" }));
    link.download = "mask.png";
    link.click();
  } catch (err) {
    state = runFailed(state, err instanceof Error ? err.message : String(err));
    render();
  }
}

function onPreset(select: HTMLSelectElement): void {
  const steps = PRESET_STEPS[select.value];
  if (steps) {
    el<HTMLTextAreaElement>("steps-editor").value = JSON.stringify(steps, null, 2);
  }
}

export function boot(): void {
  el<HTMLInputElement>("upload").addEventListener("change", event =>
    void onUpload(event.target as HTMLInputElement));
  for (const name of Object.keys(SLIDER_PARAM_KEYS) as (keyof SliderValues)[]) {
    el<HTMLInputElement>(`slider-${String(name)}`).addEventListener(
      "change", event =>
        void onSlider(name, (event.target as HTMLInputElement).value));
  }
  el<HTMLButtonElement>("run").addEventListener("click", () => void onRun());
  el<HTMLButtonElement>("export").addEventListener("click", () => void onExport());
  el<HTMLButtonElement>("apply-profile").addEventListener(
    "click", () => void onApplyProfile());
  const preset = el<HTMLSelectElement>("preset");
  preset.addEventListener("change", () => onPreset(preset));
  onPreset(preset);
  document.querySelectorAll<HTMLButtonElement>("[data-view]").forEach(btn =>
    btn.addEventListener("click", () => {
      state = viewChanged(state, btn.dataset.view as ViewMode);
      render();
      void showArtifact(state.viewMode);
    }));
  render();
}

if (typeof document !== "undefined" && document.getElementById("upload")) {
  boot();
}
