"""Network-level roofline analysis.

Combines op graphs with a hardware spec to produce per-op reports, stage
latencies, end-to-end generation time, throughput, and a memory breakdown
with liveness-based peak tracking. Within an op, compute and memory traffic
fully overlap (time = max of the two, never the sum); across ops execution
is serialized. Decode time is an exact per-step sum over the growing
context, not an average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidValue
from .hardware import HardwareSpec, attainable_performance, resolve_compute_dtype
from .model import (
    ATTENTION_OP_NAMES,
    PER_LAYER,
    InferenceShape,
    ModelConfig,
    OpProfile,
    QuantSpec,
    Stage,
    attention_ops,
    build_op_graph,
    count_params,
)

OFFLOAD_WEIGHTS = "weights"


@dataclass(frozen=True)
class OffloadSpec:
    """Streams one tensor class from a slower memory tier during inference."""

    what: str
    link: str

    def __post_init__(self):
        if self.what != OFFLOAD_WEIGHTS:
            raise InvalidValue("offload.what", f"unsupported target {self.what!r}")


@dataclass(frozen=True)
class DeploymentConfig:
    """Inference shape plus the optimization knobs under study."""

    shape: InferenceShape
    quant: QuantSpec = QuantSpec()
    fused_attention: bool = False
    offload: OffloadSpec | None = None
    active_layer_fraction: float = 1.0

    def __post_init__(self):
        if not 0 < self.active_layer_fraction <= 1:
            raise InvalidValue("active_layer_fraction", "must be in (0, 1]")


@dataclass(frozen=True)
class LayerReport:
    """Roofline result for one op instance; time is per instance."""

    op_name: str
    stage: str
    ops: int
    total_bytes: float
    arithmetic_intensity: float
    attainable: float
    bound: str
    time: float
    instances: int


@dataclass(frozen=True)
class MemoryBreakdown:
    weights: float
    kv_cache: float
    activations_peak: float

    @property
    def total(self) -> float:
        return self.weights + self.kv_cache + self.activations_peak


@dataclass(frozen=True)
class NetworkReport:
    """Aggregated analysis of one deployment configuration."""

    prefill_latency: float
    decode_latency_first: float | None
    decode_latency_last: float | None
    total_latency: float
    throughput: float | None
    memory: MemoryBreakdown
    per_op: list[LayerReport]
    bottleneck: str
    bottleneck_bound: str
    capacity_exceeded: bool
    compute_dtype: str


def active_layers(model: ModelConfig, fraction: float) -> int:
    """Layers actually executed under a layer-skip fraction, at least one."""
    if model.num_layers == 0:
        return 0
    return max(1, int(math.floor(fraction * model.num_layers + 0.5)))


def analyze_op(op: OpProfile, hw: HardwareSpec, cfg: DeploymentConfig) -> LayerReport:
    """Roofline-analyze a single op profile.

    Weight bytes stream over the offload link when one is configured; the
    op's time is the max of compute time, resident-traffic time, and link
    time (perfect prefetch overlap).
    """
    dtype = resolve_compute_dtype(cfg.quant, hw)
    peak = hw.peak(dtype)
    total = op.total_bytes

    offloaded = op.bytes_weights if cfg.offload is not None else 0.0
    memory_time = (total - offloaded) / hw.bandwidth
    if cfg.offload is not None:
        link = hw.link(cfg.offload.link)
        memory_time = max(memory_time, offloaded / link.bandwidth)

    compute_time = op.ops / peak
    ai = op.ops / total if total > 0 else 0.0
    binding_bandwidth = total / memory_time if memory_time > 0 else hw.bandwidth
    point = attainable_performance(hw, dtype, ai, binding_bandwidth)
    return LayerReport(
        op_name=op.op_name,
        stage=op.stage.name,
        ops=op.ops,
        total_bytes=total,
        arithmetic_intensity=ai,
        attainable=point.attainable,
        bound=point.bound,
        time=max(compute_time, memory_time),
        instances=op.instances_per_layer,
    )


class _Aggregator:
    """Tracks total time per op name across both stages for bottleneck pick."""

    def __init__(self):
        self._totals: dict[str, list] = {}

    def add(self, report: LayerReport, weighted_time: float):
        entry = self._totals.get(report.op_name)
        if entry is None:
            self._totals[report.op_name] = [weighted_time, len(self._totals), report.bound]
        else:
            entry[0] += weighted_time

    def bottleneck(self) -> tuple[str, str]:
        best_name, best_bound, best_time = "", "", -1.0
        for name, (time, order, bound) in sorted(
            self._totals.items(), key=lambda item: item[1][1]
        ):
            if time > best_time:
                best_name, best_bound, best_time = name, bound, time
        return best_name, best_bound


@dataclass
class _RunResult:
    prefill_time: float
    prefill_bytes: float
    decode_time: float
    decode_bytes: float
    decode_first: float | None
    decode_last: float | None
    per_op: list[LayerReport]
    bottleneck: str
    bottleneck_bound: str


def _multiplicity(op: OpProfile, l_active: int) -> int:
    return op.instances_per_layer * (l_active if op.layer_scope == PER_LAYER else 1)


def _run(model: ModelConfig, hw: HardwareSpec, cfg: DeploymentConfig) -> _RunResult:
    shape = cfg.shape
    if cfg.offload is not None:
        hw.link(cfg.offload.link)
    l_active = active_layers(model, cfg.active_layer_fraction)
    agg = _Aggregator()
    per_op: list[LayerReport] = []

    prefill_time = 0.0
    prefill_bytes = 0.0
    if shape.prompt_len:
        for op in build_op_graph(model, shape, Stage.prefill(), cfg.quant, cfg.fused_attention):
            report = analyze_op(op, hw, cfg)
            mult = _multiplicity(op, l_active)
            prefill_time += report.time * mult
            prefill_bytes += report.total_bytes * mult
            per_op.append(replace(report, instances=mult))
            agg.add(report, report.time * mult)

    decode_time = 0.0
    decode_bytes = 0.0
    decode_first = decode_last = None
    if shape.gen_len:
        # Ops that do not read the KV cache cost the same every step; only
        # the attention ops are re-evaluated as the context grows.
        static_time = 0.0
        static_bytes = 0.0
        first_stage = Stage.decode(shape.prompt_len)
        for op in build_op_graph(model, shape, first_stage, cfg.quant, cfg.fused_attention):
            report = analyze_op(op, hw, cfg)
            mult = _multiplicity(op, l_active)
            per_op.append(replace(report, instances=mult))
            if op.op_name not in ATTENTION_OP_NAMES:
                static_time += report.time * mult
                static_bytes += report.total_bytes * mult
                agg.add(report, report.time * mult * shape.gen_len)

        step_attention: list[float] = []
        for i in range(shape.gen_len):
            stage = Stage.decode(shape.prompt_len + i)
            att_time = 0.0
            for op in attention_ops(model, shape.batch_size, stage, cfg.quant, cfg.fused_attention):
                report = analyze_op(op, hw, cfg)
                mult = _multiplicity(op, l_active)
                att_time += report.time * mult
                decode_bytes += report.total_bytes * mult
                agg.add(report, report.time * mult)
            step_attention.append(att_time)

        decode_first = static_time + step_attention[0]
        decode_last = static_time + step_attention[-1]
        decode_time = static_time * shape.gen_len + sum(step_attention)
        decode_bytes += static_bytes * shape.gen_len

    bottleneck, bottleneck_bound = agg.bottleneck()
    return _RunResult(
        prefill_time=prefill_time,
        prefill_bytes=prefill_bytes,
        decode_time=decode_time,
        decode_bytes=decode_bytes,
        decode_first=decode_first,
        decode_last=decode_last,
        per_op=per_op,
        bottleneck=bottleneck,
        bottleneck_bound=bottleneck_bound,
    )


def analyze_network(model: ModelConfig, hw: HardwareSpec, cfg: DeploymentConfig) -> NetworkReport:
    """Full-network analysis of one deployment configuration.

    Prefill runs once over the prompt; each of the gen_len decode steps is
    costed at its exact context (prompt_len + i). Capacity overflow is a
    flag, never an error, so infeasible configurations stay inspectable.
    """
    shape = cfg.shape
    result = _run(model, hw, cfg)
    memory = memory_footprint(model, cfg, shape.prompt_len + shape.gen_len)
    resident = memory.total - (memory.weights if cfg.offload is not None else 0.0)
    throughput = None
    if shape.gen_len and result.decode_time > 0:
        throughput = shape.batch_size * shape.gen_len / result.decode_time
    return NetworkReport(
        prefill_latency=result.prefill_time,
        decode_latency_first=result.decode_first,
        decode_latency_last=result.decode_last,
        total_latency=result.prefill_time + result.decode_time,
        throughput=throughput,
        memory=memory,
        per_op=result.per_op,
        bottleneck=result.bottleneck,
        bottleneck_bound=result.bottleneck_bound,
        capacity_exceeded=resident > hw.capacity,
        compute_dtype=resolve_compute_dtype(cfg.quant, hw).value,
    )


def peak_activation_bytes(
    model: ModelConfig,
    quant: QuantSpec,
    batch_size: int,
    tokens: int,
    span: int,
    fused_attention: bool,
) -> float:
    """Peak live temporary-activation bytes during one stage pass.

    A tensor is live from production until its last consumer; each
    residual input stays live until its add. The closed form below is the
    maximum over the per-layer dataflow walk (layer input + norm output +
    q/k/v outputs, the score tensors around softmax, both MLP branches
    before down_proj, the residual triple at each add) plus the output
    head holding the final hidden states and logits.
    """
    if tokens <= 0:
        return 0.0
    hidden = batch_size * tokens * model.hidden_size * quant.a_bytes
    scores = batch_size * model.num_heads * tokens * span * quant.a_bytes
    mlp = batch_size * tokens * model.intermediate_size * quant.a_bytes
    if model.num_layers == 0:
        layer_peak = 0.0
    elif fused_attention:
        layer_peak = max(3 * hidden, 2 * hidden + 2 * mlp)
    else:
        layer_peak = max(3 * hidden, 2 * hidden + scores, hidden + 2 * scores, 2 * hidden + 2 * mlp)
    head_peak = hidden
    if model.include_lm_head:
        head_peak += batch_size * model.vocab_size * quant.a_bytes
    return max(hidden, layer_peak, head_peak)


def memory_footprint(model: ModelConfig, cfg: DeploymentConfig, context: int) -> MemoryBreakdown:
    """Memory snapshot with the KV cache filled to ``context`` tokens.

    Weights cover every parameter at the weight bit width (skipped layers
    still reside in memory); the KV cache spans only the active layers.
    The activation peak is taken over whichever stages the shape actually
    runs.
    """
    if context < 0:
        raise InvalidValue("context", "must be >= 0")
    shape = cfg.shape
    weights = count_params(model) * cfg.quant.w_bytes
    l_active = active_layers(model, cfg.active_layer_fraction)
    kv_cache = (
        2.0 * l_active * shape.batch_size * context * model.kv_row_elements * cfg.quant.kv_bytes
    )
    peaks = [0.0]
    if shape.prompt_len:
        peaks.append(
            peak_activation_bytes(
                model, cfg.quant, shape.batch_size, shape.prompt_len, shape.prompt_len,
                cfg.fused_attention,
            )
        )
    if shape.gen_len:
        peaks.append(
            peak_activation_bytes(
                model, cfg.quant, shape.batch_size, 1, max(context, 1), cfg.fused_attention
            )
        )
    return MemoryBreakdown(weights=weights, kv_cache=kv_cache, activations_peak=max(peaks))


@dataclass(frozen=True)
class StageSavings:
    """Unfused-minus-fused totals for one stage."""

    time_unfused: float
    time_fused: float
    bytes_unfused: float
    bytes_fused: float

    @property
    def time_saved(self) -> float:
        return self.time_unfused - self.time_fused

    @property
    def bytes_saved(self) -> float:
        return self.bytes_unfused - self.bytes_fused

    @property
    def relative_time_reduction(self) -> float:
        return self.time_saved / self.time_unfused if self.time_unfused > 0 else 0.0

    @property
    def relative_bytes_reduction(self) -> float:
        return self.bytes_saved / self.bytes_unfused if self.bytes_unfused > 0 else 0.0


@dataclass(frozen=True)
class FusionComparison:
    prefill: StageSavings
    decode: StageSavings


def compare_fusion(model: ModelConfig, hw: HardwareSpec, cfg: DeploymentConfig) -> FusionComparison:
    """Time and memory-access totals with and without fused attention."""
    unfused = _run(model, hw, replace(cfg, fused_attention=False))
    fused = _run(model, hw, replace(cfg, fused_attention=True))
    return FusionComparison(
        prefill=StageSavings(
            time_unfused=unfused.prefill_time,
            time_fused=fused.prefill_time,
            bytes_unfused=unfused.prefill_bytes,
            bytes_fused=fused.prefill_bytes,
        ),
        decode=StageSavings(
            time_unfused=unfused.decode_time,
            time_fused=fused.decode_time,
            bytes_unfused=unfused.decode_bytes,
            bytes_fused=fused.decode_bytes,
        ),
    )
