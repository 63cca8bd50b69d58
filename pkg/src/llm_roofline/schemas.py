"""Pydantic request/response models for the HTTP API and the CLI client."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

from .analysis import LayerReport, MemoryBreakdown, NetworkReport
from .sweeps import Series


class ShapeIn(BaseModel):
    batch_size: int = Field(1, ge=1)
    prompt_len: int = Field(0, ge=0)
    gen_len: int = Field(0, ge=0)


class OptimizationIn(BaseModel):
    w_bits: int = 16
    a_bits: int = 16
    kv_bits: int = 16
    fused_attention: bool = False
    offload_weights: Optional[str] = None
    active_layer_fraction: float = 1.0


class AnalyzeRequest(BaseModel):
    """Analysis input: preset names or inline documents, shape, knobs."""

    model: Union[str, dict[str, Any]]
    hardware: Union[str, dict[str, Any]]
    shape: ShapeIn
    optimization: OptimizationIn = OptimizationIn()


class SweepVariantIn(BaseModel):
    name: str
    w_bits: Optional[int] = None
    a_bits: Optional[int] = None
    kv_bits: Optional[int] = None
    fused_attention: Optional[bool] = None
    offload_weights: Optional[str] = None
    active_layer_fraction: Optional[float] = None


class SweepRequestIn(BaseModel):
    axis: Literal["batch", "prompt_len", "context_len", "bandwidth"]
    values: list[float] = Field(min_length=1)
    model: Union[str, dict[str, Any]]
    hardware: Union[str, dict[str, Any]]
    shape: ShapeIn
    optimization: OptimizationIn = OptimizationIn()
    variants: list[SweepVariantIn] = []


class MemoryOut(BaseModel):
    weights: float
    kv_cache: float
    activations_peak: float
    total: float


class LayerReportOut(BaseModel):
    op_name: str
    stage: str
    ops: int
    total_bytes: float
    arithmetic_intensity: float
    attainable: float
    bound: str
    time: float
    instances: int


class NetworkReportOut(BaseModel):
    prefill_latency: float
    decode_latency_first: Optional[float]
    decode_latency_last: Optional[float]
    total_latency: float
    throughput: Optional[float]
    memory: MemoryOut
    per_op: list[LayerReportOut]
    bottleneck: str
    bottleneck_bound: str
    capacity_exceeded: bool
    compute_dtype: str


class SweepPointOut(BaseModel):
    x: float
    latency_s: float
    throughput_tps: Optional[float]
    memory_bytes: float
    bound: str


class SeriesOut(BaseModel):
    name: str
    points: list[SweepPointOut]


class PresetsOut(BaseModel):
    models: list[str]
    hardware: list[str]


def layer_report_out(report: LayerReport) -> LayerReportOut:
    return LayerReportOut(
        op_name=report.op_name,
        stage=report.stage,
        ops=report.ops,
        total_bytes=report.total_bytes,
        arithmetic_intensity=report.arithmetic_intensity,
        attainable=report.attainable,
        bound=report.bound,
        time=report.time,
        instances=report.instances,
    )


def memory_out(memory: MemoryBreakdown) -> MemoryOut:
    return MemoryOut(
        weights=memory.weights,
        kv_cache=memory.kv_cache,
        activations_peak=memory.activations_peak,
        total=memory.total,
    )


def network_report_out(report: NetworkReport) -> NetworkReportOut:
    return NetworkReportOut(
        prefill_latency=report.prefill_latency,
        decode_latency_first=report.decode_latency_first,
        decode_latency_last=report.decode_latency_last,
        total_latency=report.total_latency,
        throughput=report.throughput,
        memory=memory_out(report.memory),
        per_op=[layer_report_out(r) for r in report.per_op],
        bottleneck=report.bottleneck,
        bottleneck_bound=report.bottleneck_bound,
        capacity_exceeded=report.capacity_exceeded,
        compute_dtype=report.compute_dtype,
    )


def series_out(series: Series) -> SeriesOut:
    return SeriesOut(
        name=series.name,
        points=[
            SweepPointOut(
                x=p.x,
                latency_s=p.latency_s,
                throughput_tps=p.throughput_tps,
                memory_bytes=p.memory_bytes,
                bound=p.bound,
            )
            for p in series.points
        ],
    )
