import { formatCount, formatIntensity, formatSeconds } from "./format.js";
import type { LayerReport, NetworkReport } from "./types.js";

// The layer table shows the same columns as the CLI table, with identical
// cell strings, plus the stage and instance multiplicity.

export const LAYER_COLUMNS = [
  "Layer Name",
  "Stage",
  "OPs",
  "Memory Access",
  "Arithmetic Intensity",
  "Max Performance",
  "Bound",
  "Time",
  "Instances",
] as const;

export interface LayerRow {
  cells: string[];
  raw: LayerReport;
}

export function layerRows(report: NetworkReport): LayerRow[] {
  return report.per_op.map((row) => ({
    raw: row,
    cells: [
      row.op_name,
      row.stage,
      formatCount(row.ops),
      formatCount(row.total_bytes),
      formatIntensity(row.arithmetic_intensity),
      formatCount(row.attainable),
      row.bound,
      formatSeconds(row.time),
      String(row.instances),
    ],
  }));
}

export type SortKey = "op_name" | "ops" | "total_bytes" | "intensity" | "time" | "stage";

/**
 * Time sorts by total contribution (per-instance time x instances), so the
 * network bottleneck rises to the top; other keys sort on the raw value.
 */
export function sortRows(rows: LayerRow[], key: SortKey, descending = true): LayerRow[] {
  const value = (row: LayerRow): number | string => {
    switch (key) {
      case "op_name":
        return row.raw.op_name;
      case "stage":
        return row.raw.stage;
      case "ops":
        return row.raw.ops;
      case "total_bytes":
        return row.raw.total_bytes;
      case "intensity":
        return row.raw.arithmetic_intensity;
      case "time":
        return row.raw.time * row.raw.instances;
    }
  };
  const sign = descending ? 1 : -1;
  return [...rows].sort((a, b) => {
    const va = value(a);
    const vb = value(b);
    if (va < vb) return sign;
    if (va > vb) return -sign;
    return 0;
  });
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function layerTableHtml(rows: LayerRow[], bottleneck: string): string {
  const head = LAYER_COLUMNS.map(
    (column, index) => `<th data-col="${index}">${column}</th>`,
  ).join("");
  const body = rows
    .map((row) => {
      const highlight = row.raw.op_name === bottleneck ? ' class="bottleneck"' : "";
      const cells = row.cells.map((cell) => `<td>${escapeHtml(cell)}</td>`).join("");
      return `<tr${highlight}>${cells}</tr>`;
    })
    .join("");
  return `<table class="layers"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}
