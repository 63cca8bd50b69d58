import type { Series } from "./types.js";

export const CSV_HEADER = "variant,x,latency_s,throughput_tps,memory_bytes,bound";

/** Re-serializes a sweep payload to the service's CSV schema, exactly. */
export function seriesToCsv(series: Series[]): string {
  const lines = [CSV_HEADER];
  for (const s of series) {
    for (const p of s.points) {
      lines.push(
        [
          s.name,
          String(p.x),
          String(p.latency_s),
          p.throughput_tps === null ? "" : String(p.throughput_tps),
          String(p.memory_bytes),
          p.bound,
        ].join(","),
      );
    }
  }
  return lines.join("\n") + "\n";
}

/** Sweep variant syntax shared with the CLI: NAME[:k=v,...]. */
export function parseVariantToken(token: string): {
  name: string;
  w_bits?: number;
  a_bits?: number;
  kv_bits?: number;
  fused_attention?: boolean;
  offload_weights?: string;
  active_layer_fraction?: number;
} {
  const colon = token.indexOf(":");
  const name = colon < 0 ? token.trim() : token.slice(0, colon).trim();
  if (!name) throw new Error(`malformed variant ${JSON.stringify(token)}`);
  const variant: ReturnType<typeof parseVariantToken> = { name };
  if (colon < 0) return variant;
  for (const part of token.slice(colon + 1).split(",")) {
    const [key, value] = part.split("=", 2);
    if (value === undefined || value === "") {
      throw new Error(`malformed variant ${JSON.stringify(token)} (near ${JSON.stringify(part)})`);
    }
    switch (key.trim()) {
      case "w":
        variant.w_bits = Number(value);
        break;
      case "a":
        variant.a_bits = Number(value);
        break;
      case "kv":
        variant.kv_bits = Number(value);
        break;
      case "flash":
        variant.fused_attention = ["1", "true", "yes", "on"].includes(value.toLowerCase());
        break;
      case "offload":
        variant.offload_weights = value.trim();
        break;
      case "fraction":
        variant.active_layer_fraction = Number(value);
        break;
      default:
        throw new Error(`malformed variant ${JSON.stringify(token)} (near ${JSON.stringify(part)})`);
    }
  }
  return variant;
}
