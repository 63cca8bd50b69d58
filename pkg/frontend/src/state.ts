import type { AnalyzeRequest, NetworkReport, OptimizationIn, ShapeIn } from "./types.js";

export type Tab = "roofline" | "layers" | "memory" | "sweeps";

export interface Knobs {
  model: string | Record<string, unknown>;
  hardware: string | Record<string, unknown>;
  batchSize: number;
  promptLen: number;
  genLen: number;
  wBits: number;
  aBits: number;
  kvBits: number;
  flashAttention: boolean;
  offloadLink: string | null;
  layerFraction: number;
}

export const DEFAULT_KNOBS: Knobs = {
  model: "llama-2-7b",
  hardware: "nvidia-a6000",
  batchSize: 1,
  promptLen: 2048,
  genLen: 16,
  wBits: 16,
  aBits: 16,
  kvBits: 16,
  flashAttention: false,
  offloadLink: null,
  layerFraction: 1.0,
};

/** Knob values serialized into the documented analyze request schema. */
export function analyzeRequestBody(knobs: Knobs): AnalyzeRequest {
  const shape: ShapeIn = {
    batch_size: knobs.batchSize,
    prompt_len: knobs.promptLen,
    gen_len: knobs.genLen,
  };
  const optimization: OptimizationIn = {
    w_bits: knobs.wBits,
    a_bits: knobs.aBits,
    kv_bits: knobs.kvBits,
    fused_attention: knobs.flashAttention,
    offload_weights: knobs.offloadLink,
    active_layer_fraction: knobs.layerFraction,
  };
  return { model: knobs.model, hardware: knobs.hardware, shape, optimization };
}

/** Displayed numbers come only from the last response held here. */
export class ViewState {
  knobs: Knobs = { ...DEFAULT_KNOBS };
  report: NetworkReport | null = null;
  tab: Tab = "roofline";
}
