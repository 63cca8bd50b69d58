// Wire types for the analysis service. The viewer displays these payloads
// verbatim; it never recomputes any analysis quantity client-side.

export interface Presets {
  models: string[];
  hardware: string[];
}

export interface HardwareDocument {
  name: string;
  bandwidth_bytes_per_s: number;
  capacity_bytes: number;
  compute: Record<string, number>;
  links?: { name: string; bandwidth_bytes_per_s: number }[];
  notes?: string;
}

export interface ShapeIn {
  batch_size: number;
  prompt_len: number;
  gen_len: number;
}

export interface OptimizationIn {
  w_bits: number;
  a_bits: number;
  kv_bits: number;
  fused_attention: boolean;
  offload_weights: string | null;
  active_layer_fraction: number;
}

export interface AnalyzeRequest {
  model: string | Record<string, unknown>;
  hardware: string | Record<string, unknown>;
  shape: ShapeIn;
  optimization: OptimizationIn;
}

export interface LayerReport {
  op_name: string;
  stage: string;
  ops: number;
  total_bytes: number;
  arithmetic_intensity: number;
  attainable: number;
  bound: string;
  time: number;
  instances: number;
}

export interface MemoryBreakdown {
  weights: number;
  kv_cache: number;
  activations_peak: number;
  total: number;
}

export interface NetworkReport {
  prefill_latency: number;
  decode_latency_first: number | null;
  decode_latency_last: number | null;
  total_latency: number;
  throughput: number | null;
  memory: MemoryBreakdown;
  per_op: LayerReport[];
  bottleneck: string;
  bottleneck_bound: string;
  capacity_exceeded: boolean;
  compute_dtype: string;
}

export interface SweepVariantIn {
  name: string;
  w_bits?: number;
  a_bits?: number;
  kv_bits?: number;
  fused_attention?: boolean;
  offload_weights?: string;
  active_layer_fraction?: number;
}

export interface SweepRequest {
  axis: "batch" | "prompt_len" | "context_len" | "bandwidth";
  values: number[];
  model: string | Record<string, unknown>;
  hardware: string | Record<string, unknown>;
  shape: ShapeIn;
  optimization: OptimizationIn;
  variants: SweepVariantIn[];
}

export interface SweepPoint {
  x: number;
  latency_s: number;
  throughput_tps: number | null;
  memory_bytes: number;
  bound: string;
}

export interface Series {
  name: string;
  points: SweepPoint[];
}

export interface ApiErrorBody {
  error: string;
  field?: string | null;
  known?: string[];
}
