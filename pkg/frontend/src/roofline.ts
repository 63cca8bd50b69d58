import { formatCount, formatIntensity, formatSeconds } from "./format.js";
import type { HardwareDocument, LayerReport, NetworkReport } from "./types.js";

// Chart geometry for the log-log roofline view. Marker positions come
// verbatim from the report (arithmetic intensity, attainable); the ceiling
// and diagonal are the hardware's own capability lines.

export interface CeilingLine {
  dtype: string;
  ops: number;
  active: boolean;
}

export interface Marker {
  op: string;
  stage: string;
  ai: number;
  attainable: number;
  bound: string;
  tooltip: string;
}

export interface RooflineGeometry {
  ceilings: CeilingLine[];
  bandwidth: number;
  markers: Marker[];
}

function tooltipFor(row: LayerReport): string {
  return [
    `${row.op_name} (${row.stage})`,
    `OPs ${formatCount(row.ops)}`,
    `Memory Access ${formatCount(row.total_bytes)}`,
    `Arithmetic Intensity ${formatIntensity(row.arithmetic_intensity)}`,
    `Max Performance ${formatCount(row.attainable)}`,
    `Bound ${row.bound}`,
    `Time ${formatSeconds(row.time)}`,
  ].join("\n");
}

export function rooflineGeometry(
  report: NetworkReport,
  hardware: HardwareDocument,
): RooflineGeometry {
  const ceilings = Object.entries(hardware.compute)
    .map(([dtype, ops]) => ({ dtype, ops, active: dtype === report.compute_dtype }))
    .sort((a, b) => a.ops - b.ops);
  const markers = report.per_op
    .filter((row) => row.arithmetic_intensity > 0 && row.attainable > 0)
    .map((row) => ({
      op: row.op_name,
      stage: row.stage,
      ai: row.arithmetic_intensity,
      attainable: row.attainable,
      bound: row.bound,
      tooltip: tooltipFor(row),
    }));
  return { ceilings, bandwidth: hardware.bandwidth_bytes_per_s, markers };
}

export interface LogScale {
  (value: number): number;
}

export function logScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number,
): LogScale {
  const lo = Math.log10(domainMin);
  const hi = Math.log10(domainMax);
  return (value: number) =>
    rangeMin + ((Math.log10(value) - lo) / (hi - lo)) * (rangeMax - rangeMin);
}

const BOUND_COLOR: Record<string, string> = { compute: "#2e7d32", memory: "#c62828" };

export function rooflineSvg(
  geometry: RooflineGeometry,
  width = 720,
  height = 440,
): string {
  const pad = { left: 64, right: 16, top: 16, bottom: 40 };
  const ais = geometry.markers.map((m) => m.ai);
  const xMin = Math.min(0.1, ...ais) / 2;
  const xMax = Math.max(2048, ...ais) * 4;
  const peaks = geometry.ceilings.map((c) => c.ops);
  const lows = geometry.markers.map((m) => m.attainable);
  const yMax = Math.max(...peaks, 1) * 4;
  const yMin = Math.min(xMin * geometry.bandwidth, ...lows) / 2;
  const sx = logScale(xMin, xMax, pad.left, width - pad.right);
  const sy = logScale(yMin, yMax, height - pad.bottom, pad.top);

  const parts: string[] = [
    `<svg viewBox="0 0 ${width} ${height}" class="roofline" role="img">`,
  ];

  // decade gridlines and tick labels
  for (let e = Math.ceil(Math.log10(xMin)); 10 ** e <= xMax; e += 1) {
    const x = sx(10 ** e);
    parts.push(
      `<line x1="${x}" y1="${pad.top}" x2="${x}" y2="${height - pad.bottom}" class="grid"/>`,
      `<text x="${x}" y="${height - pad.bottom + 16}" class="tick" text-anchor="middle">1e${e}</text>`,
    );
  }
  for (let e = Math.ceil(Math.log10(yMin)); 10 ** e <= yMax; e += 1) {
    const y = sy(10 ** e);
    parts.push(
      `<line x1="${pad.left}" y1="${y}" x2="${width - pad.right}" y2="${y}" class="grid"/>`,
      `<text x="${pad.left - 6}" y="${y + 4}" class="tick" text-anchor="end">1e${e}</text>`,
    );
  }

  // bandwidth diagonal: ops = ai x bandwidth, clipped to the plot area
  const diagonalStartX = Math.max(xMin, yMin / geometry.bandwidth);
  const diagonalEndX = Math.min(xMax, yMax / geometry.bandwidth);
  parts.push(
    `<line x1="${sx(diagonalStartX)}" y1="${sy(diagonalStartX * geometry.bandwidth)}" ` +
      `x2="${sx(diagonalEndX)}" y2="${sy(diagonalEndX * geometry.bandwidth)}" class="diagonal"/>`,
  );

  // one ceiling per datatype; the resolved compute datatype is highlighted
  for (const ceiling of geometry.ceilings) {
    const y = sy(ceiling.ops);
    const cls = ceiling.active ? "ceiling active" : "ceiling";
    parts.push(
      `<line x1="${pad.left}" y1="${y}" x2="${width - pad.right}" y2="${y}" class="${cls}"/>`,
      `<text x="${width - pad.right - 4}" y="${y - 4}" class="ceiling-label" ` +
        `text-anchor="end">${ceiling.dtype} ${formatCount(ceiling.ops)}</text>`,
    );
  }

  for (const marker of geometry.markers) {
    const color = BOUND_COLOR[marker.bound] ?? "#555";
    parts.push(
      `<circle cx="${sx(marker.ai)}" cy="${sy(marker.attainable)}" r="5" ` +
        `fill="${color}" class="marker" data-op="${marker.op}" data-stage="${marker.stage}">` +
        `<title>${marker.tooltip}</title></circle>`,
    );
  }

  parts.push(
    `<text x="${(pad.left + width - pad.right) / 2}" y="${height - 6}" class="axis" ` +
      `text-anchor="middle">arithmetic intensity (ops/byte)</text>`,
    `<text x="14" y="${(pad.top + height - pad.bottom) / 2}" class="axis" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${(pad.top + height - pad.bottom) / 2})">attainable (ops/s)</text>`,
    "</svg>",
  );
  return parts.join("");
}
