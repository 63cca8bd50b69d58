import { ApiClient, ApiError, StaleResponseGuard } from "./api.js";
import { memoryBarHtml, sweepChartSvg, SweepMetric } from "./charts.js";
import { CSV_HEADER, parseVariantToken, seriesToCsv } from "./csv.js";
import { ANALYZE_DEBOUNCE_MS, debounce } from "./debounce.js";
import { formatCount, formatSeconds } from "./format.js";
import { rooflineGeometry, rooflineSvg } from "./roofline.js";
import { analyzeRequestBody, Tab, ViewState } from "./state.js";
import { layerRows, layerTableHtml, sortRows, SortKey } from "./table.js";
import type { HardwareDocument, Series, SweepRequest } from "./types.js";

const client = new ApiClient();
const state = new ViewState();
const guard = new StaleResponseGuard();
let hardwareDoc: HardwareDocument | null = null;
let lastSweep: Series[] | null = null;
let layerSort: { key: SortKey; descending: boolean } = { key: "time", descending: true };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function toast(message: string) {
  const node = el<HTMLDivElement>("toast");
  node.textContent = message;
  node.classList.add("visible");
  setTimeout(() => node.classList.remove("visible"), 4000);
}

async function refreshHardwareDoc() {
  const hardware = state.knobs.hardware;
  if (typeof hardware === "string") {
    hardwareDoc = await client.hardwareDocument(hardware);
  } else {
    hardwareDoc = hardware as unknown as HardwareDocument;
  }
  const select = el<HTMLSelectElement>("offload");
  const current = state.knobs.offloadLink ?? "";
  const links = hardwareDoc.links ?? [];
  select.innerHTML =
    '<option value="">none</option>' +
    links.map((l) => `<option value="${l.name}">${l.name}</option>`).join("");
  select.value = links.some((l) => l.name === current) ? current : "";
  state.knobs.offloadLink = select.value || null;
}

async function analyzeNow() {
  const id = guard.issue();
  try {
    const report = await client.analyze(analyzeRequestBody(state.knobs));
    if (!guard.isCurrent(id)) return; // a newer request superseded this one
    state.report = report;
    render();
  } catch (error) {
    if (!guard.isCurrent(id)) return;
    state.report = null;
    render();
    if (error instanceof ApiError) {
      toast(`${error.body.error}${error.body.field ? `: ${error.body.field}` : ""}`);
    } else {
      toast(String(error));
    }
  }
}

const scheduleAnalyze = debounce(() => void analyzeNow(), ANALYZE_DEBOUNCE_MS);

function knobChanged() {
  scheduleAnalyze();
}

function renderSummary() {
  const summary = el<HTMLDivElement>("summary");
  if (!state.report) {
    summary.innerHTML = '<span class="empty">no report yet</span>';
    return;
  }
  const r = state.report;
  const pieces = [
    `prefill ${formatSeconds(r.prefill_latency)}`,
    r.decode_latency_first !== null
      ? `decode/token ${formatSeconds(r.decode_latency_first)}`
      : "",
    `total ${formatSeconds(r.total_latency)}`,
    r.throughput !== null ? `${r.throughput.toFixed(1)} tok/s` : "",
    `memory ${formatCount(r.memory.total)}B${r.capacity_exceeded ? " (over capacity!)" : ""}`,
    `bottleneck ${r.bottleneck} (${r.bottleneck_bound})`,
    `compute dtype ${r.compute_dtype}`,
  ].filter(Boolean);
  summary.innerHTML = pieces.map((p) => `<span>${p}</span>`).join(" &middot; ");
}

function renderRoofline() {
  const panel = el<HTMLDivElement>("panel-roofline");
  if (!state.report || !hardwareDoc) {
    panel.innerHTML = '<p class="empty">adjust a knob to analyze</p>';
    return;
  }
  panel.innerHTML = rooflineSvg(rooflineGeometry(state.report, hardwareDoc));
}

function renderLayers() {
  const panel = el<HTMLDivElement>("panel-layers");
  if (!state.report) {
    panel.innerHTML = '<p class="empty">no report</p>';
    return;
  }
  const rows = sortRows(layerRows(state.report), layerSort.key, layerSort.descending);
  panel.innerHTML = layerTableHtml(rows, state.report.bottleneck);
  const keys: (SortKey | null)[] = ["op_name", "stage", "ops", "total_bytes",
                                    "intensity", null, null, "time", null];
  panel.querySelectorAll<HTMLTableCellElement>("th").forEach((th, index) => {
    const key = keys[index];
    if (!key) return;
    th.classList.add("sortable");
    th.addEventListener("click", () => {
      layerSort = {
        key,
        descending: layerSort.key === key ? !layerSort.descending : true,
      };
      renderLayers();
    });
  });
}

function renderMemory() {
  const panel = el<HTMLDivElement>("panel-memory");
  if (!state.report) {
    panel.innerHTML = '<p class="empty">no report</p>';
    return;
  }
  panel.innerHTML = memoryBarHtml(state.report.memory, state.report.capacity_exceeded);
}

function renderSweep() {
  const panel = el<HTMLDivElement>("sweep-chart");
  if (!lastSweep) {
    panel.innerHTML = '<p class="empty">run a sweep to see curves</p>';
    return;
  }
  const metric = el<HTMLSelectElement>("sweep-metric").value as SweepMetric;
  panel.innerHTML = sweepChartSvg(lastSweep, metric);
}

function render() {
  renderSummary();
  switch (state.tab) {
    case "roofline":
      renderRoofline();
      break;
    case "layers":
      renderLayers();
      break;
    case "memory":
      renderMemory();
      break;
    case "sweeps":
      renderSweep();
      break;
  }
}

function selectTab(tab: Tab) {
  state.tab = tab;
  document.querySelectorAll<HTMLElement>(".tab").forEach((button) => {
    button.classList.toggle("active", button.dataset.tab === tab);
  });
  document.querySelectorAll<HTMLElement>(".panel").forEach((panel) => {
    panel.classList.toggle("hidden", panel.dataset.tab !== tab);
  });
  render();
}

async function runSweep() {
  try {
    const values = el<HTMLInputElement>("sweep-values")
      .value.split(",")
      .map((v) => v.trim())
      .filter(Boolean)
      .map(Number);
    const variantsText = el<HTMLInputElement>("sweep-variants").value.trim();
    const variants = variantsText
      ? variantsText.split(/\s+/).map(parseVariantToken)
      : [];
    const body = analyzeRequestBody(state.knobs);
    const request: SweepRequest = {
      axis: el<HTMLSelectElement>("sweep-axis").value as SweepRequest["axis"],
      values,
      model: body.model,
      hardware: body.hardware,
      shape: body.shape,
      optimization: body.optimization,
      variants,
    };
    lastSweep = await client.sweep(request);
    renderSweep();
  } catch (error) {
    if (error instanceof ApiError) {
      toast(`${error.body.error}${error.body.field ? `: ${error.body.field}` : ""}`);
    } else {
      toast(String(error));
    }
  }
}

function downloadCsv() {
  if (!lastSweep) {
    toast("no sweep to download");
    return;
  }
  const blob = new Blob([seriesToCsv(lastSweep)], { type: "text/csv" });
  const anchor = document.createElement("a");
  anchor.href = URL.createObjectURL(blob);
  anchor.download = "sweep.csv";
  anchor.click();
  URL.revokeObjectURL(anchor.href);
}

function bindKnobs() {
  const batchSlider = el<HTMLInputElement>("batch");
  const batchLabel = el<HTMLSpanElement>("batch-label");
  batchSlider.addEventListener("input", () => {
    state.knobs.batchSize = 2 ** Number(batchSlider.value);
    batchLabel.textContent = String(state.knobs.batchSize);
    knobChanged();
  });

  const numeric: [string, (v: number) => void][] = [
    ["prompt-len", (v) => (state.knobs.promptLen = v)],
    ["gen-len", (v) => (state.knobs.genLen = v)],
    ["layer-fraction", (v) => (state.knobs.layerFraction = v)],
  ];
  for (const [id, apply] of numeric) {
    const input = el<HTMLInputElement>(id);
    input.addEventListener("input", () => {
      apply(Number(input.value));
      knobChanged();
    });
  }

  const selects: [string, (v: string) => void][] = [
    ["w-bits", (v) => (state.knobs.wBits = Number(v))],
    ["a-bits", (v) => (state.knobs.aBits = Number(v))],
    ["kv-bits", (v) => (state.knobs.kvBits = Number(v))],
    ["offload", (v) => (state.knobs.offloadLink = v || null)],
  ];
  for (const [id, apply] of selects) {
    const select = el<HTMLSelectElement>(id);
    select.addEventListener("change", () => {
      apply(select.value);
      knobChanged();
    });
  }

  el<HTMLInputElement>("flash-attn").addEventListener("change", (event) => {
    state.knobs.flashAttention = (event.target as HTMLInputElement).checked;
    knobChanged();
  });

  el<HTMLSelectElement>("model").addEventListener("change", (event) => {
    state.knobs.model = (event.target as HTMLSelectElement).value;
    el<HTMLTextAreaElement>("model-inline").value = "";
    knobChanged();
  });

  el<HTMLSelectElement>("hardware").addEventListener("change", async (event) => {
    state.knobs.hardware = (event.target as HTMLSelectElement).value;
    try {
      await refreshHardwareDoc();
    } catch (error) {
      toast(String(error));
    }
    knobChanged();
  });

  // inline JSON paste overrides the model preset while it parses cleanly
  const inline = el<HTMLTextAreaElement>("model-inline");
  inline.addEventListener("input", () => {
    const text = inline.value.trim();
    if (!text) {
      state.knobs.model = el<HTMLSelectElement>("model").value;
      knobChanged();
      return;
    }
    try {
      state.knobs.model = JSON.parse(text);
      inline.classList.remove("invalid");
      knobChanged();
    } catch {
      inline.classList.add("invalid");
    }
  });

  document.querySelectorAll<HTMLElement>(".tab").forEach((button) => {
    button.addEventListener("click", () => selectTab(button.dataset.tab as Tab));
  });
  el<HTMLButtonElement>("sweep-run").addEventListener("click", () => void runSweep());
  el<HTMLButtonElement>("sweep-download").addEventListener("click", downloadCsv);
  el<HTMLSelectElement>("sweep-metric").addEventListener("change", renderSweep);
}

async function init() {
  try {
    const presets = await client.presets();
    el<HTMLSelectElement>("model").innerHTML = presets.models
      .map((name) => `<option>${name}</option>`)
      .join("");
    el<HTMLSelectElement>("hardware").innerHTML = presets.hardware
      .map((name) => `<option>${name}</option>`)
      .join("");
    el<HTMLSelectElement>("model").value = String(state.knobs.model);
    el<HTMLSelectElement>("hardware").value = String(state.knobs.hardware);
    await refreshHardwareDoc();
  } catch (error) {
    toast(`failed to load presets: ${error}`);
  }
  bindKnobs();
  selectTab("roofline");
  void analyzeNow();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void init());
}

export { CSV_HEADER };
