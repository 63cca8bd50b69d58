import { formatCount, formatSeconds } from "./format.js";
import type { MemoryBreakdown, Series } from "./types.js";

// Small hand-rolled SVG charts: a stacked memory bar and multi-series
// sweep lines. Values are displayed exactly as received.

const SEGMENT_COLORS = ["#3949ab", "#00897b", "#fb8c00"];
const SERIES_COLORS = ["#3949ab", "#c62828", "#2e7d32", "#fb8c00", "#6d4c41", "#00838f"];

export function memoryBarHtml(memory: MemoryBreakdown, capacityExceeded: boolean): string {
  const segments = [
    { label: "weights", value: memory.weights },
    { label: "kv cache", value: memory.kv_cache },
    { label: "activations", value: memory.activations_peak },
  ];
  const total = memory.total || 1;
  let offset = 0;
  const bars = segments
    .map((segment, index) => {
      const width = (segment.value / total) * 100;
      const rect =
        `<rect x="${offset}%" y="0" width="${width}%" height="28" ` +
        `fill="${SEGMENT_COLORS[index]}"><title>${segment.label}: ` +
        `${formatCount(segment.value)}B</title></rect>`;
      offset += width;
      return rect;
    })
    .join("");
  const legend = segments
    .map(
      (segment, index) =>
        `<span class="legend-item"><span class="swatch" style="background:${SEGMENT_COLORS[index]}"></span>` +
        `${segment.label} ${formatCount(segment.value)}B</span>`,
    )
    .join(" ");
  const warning = capacityExceeded
    ? '<p class="warning">device capacity exceeded</p>'
    : "";
  return (
    `<svg viewBox="0 0 100 28" preserveAspectRatio="none" class="memory-bar">${bars}</svg>` +
    `<p>${legend} &mdash; total ${formatCount(memory.total)}B</p>${warning}`
  );
}

export type SweepMetric = "latency_s" | "throughput_tps" | "memory_bytes";

export function sweepChartSvg(
  series: Series[],
  metric: SweepMetric,
  width = 720,
  height = 380,
): string {
  const pad = { left: 70, right: 16, top: 16, bottom: 40 };
  const points = series.flatMap((s) =>
    s.points
      .filter((p) => p[metric] !== null)
      .map((p) => ({ x: p.x, y: p[metric] as number })),
  );
  if (!points.length) return '<p class="empty">no data points</p>';
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys) * 1.05;
  const sx = (x: number) =>
    pad.left +
    ((xMax === xMin ? 0.5 : (x - xMin) / (xMax - xMin)) * (width - pad.left - pad.right));
  const sy = (y: number) =>
    height - pad.bottom - (y / yMax) * (height - pad.top - pad.bottom);

  const parts = [`<svg viewBox="0 0 ${width} ${height}" class="sweep" role="img">`];
  parts.push(
    `<line x1="${pad.left}" y1="${height - pad.bottom}" x2="${width - pad.right}" ` +
      `y2="${height - pad.bottom}" class="axis-line"/>`,
    `<line x1="${pad.left}" y1="${pad.top}" x2="${pad.left}" y2="${height - pad.bottom}" class="axis-line"/>`,
  );
  series.forEach((s, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    const path = s.points
      .filter((p) => p[metric] !== null)
      .map((p, i) => `${i ? "L" : "M"}${sx(p.x)},${sy(p[metric] as number)}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    for (const p of s.points) {
      if (p[metric] === null) continue;
      const label =
        metric === "latency_s"
          ? formatSeconds(p[metric] as number)
          : formatCount(p[metric] as number);
      parts.push(
        `<circle cx="${sx(p.x)}" cy="${sy(p[metric] as number)}" r="3.5" fill="${color}">` +
          `<title>${s.name} @ ${p.x}: ${label}</title></circle>`,
      );
    }
  });
  for (const x of [...new Set(xs)]) {
    parts.push(
      `<text x="${sx(x)}" y="${height - pad.bottom + 16}" class="tick" text-anchor="middle">${x}</text>`,
    );
  }
  parts.push("</svg>");
  const legend = series
    .map(
      (s, index) =>
        `<span class="legend-item"><span class="swatch" ` +
        `style="background:${SERIES_COLORS[index % SERIES_COLORS.length]}"></span>${s.name}</span>`,
    )
    .join(" ");
  return parts.join("") + `<p>${legend}</p>`;
}
