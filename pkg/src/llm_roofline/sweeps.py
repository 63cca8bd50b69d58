"""What-if comparison curves as data series.

Each sweep point is a full, independent network analysis with one axis
value substituted; output ordering follows the request deterministically.
Figures are reproduced as data, not images; plotting belongs to the viewer
or external tools.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace

from .analysis import DeploymentConfig, OffloadSpec, analyze_network
from .errors import AnalyzerError, InvalidValue, SweepError
from .hardware import HardwareSpec
from .model import ModelConfig, QuantSpec

AXIS_BATCH = "batch"
AXIS_PROMPT_LEN = "prompt_len"
AXIS_CONTEXT_LEN = "context_len"
AXIS_BANDWIDTH = "bandwidth"
AXES = (AXIS_BATCH, AXIS_PROMPT_LEN, AXIS_CONTEXT_LEN, AXIS_BANDWIDTH)

CSV_HEADER = "variant,x,latency_s,throughput_tps,memory_bytes,bound"
_POINT_FIELDS = ("latency_s", "throughput_tps", "memory_bytes", "bound")


@dataclass(frozen=True)
class VariantSpec:
    """A named delta applied on top of the base deployment config."""

    name: str
    w_bits: int | None = None
    a_bits: int | None = None
    kv_bits: int | None = None
    fused_attention: bool | None = None
    offload_link: str | None = None
    active_layer_fraction: float | None = None

    def apply(self, base: DeploymentConfig) -> DeploymentConfig:
        quant = QuantSpec(
            w_bits=self.w_bits if self.w_bits is not None else base.quant.w_bits,
            a_bits=self.a_bits if self.a_bits is not None else base.quant.a_bits,
            kv_bits=self.kv_bits if self.kv_bits is not None else base.quant.kv_bits,
        )
        offload = base.offload
        if self.offload_link is not None:
            offload = OffloadSpec(what="weights", link=self.offload_link)
        return replace(
            base,
            quant=quant,
            fused_attention=(
                base.fused_attention if self.fused_attention is None else self.fused_attention
            ),
            offload=offload,
            active_layer_fraction=(
                base.active_layer_fraction
                if self.active_layer_fraction is None
                else self.active_layer_fraction
            ),
        )


@dataclass(frozen=True)
class SweepRequest:
    """One axis, its values, and the variants to trace over it.

    ``prompt_len`` and ``context_len`` both substitute the prompt length;
    the latter names decode-stage studies where the prompt is the context
    already cached when generation starts.
    """

    axis: str
    values: tuple
    model: ModelConfig
    hardware: HardwareSpec
    base: DeploymentConfig
    variants: tuple[VariantSpec, ...] = ()

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidValue("axis", f"must be one of {AXES}")
        if not self.values:
            raise InvalidValue("values", "must be nonempty")
        if any(v <= 0 for v in self.values):
            raise InvalidValue("values", "must be positive")
        if any(b >= a for a, b in zip(self.values[1:], self.values)):
            raise InvalidValue("values", "must be strictly increasing")


@dataclass(frozen=True)
class SweepPoint:
    x: float
    latency_s: float
    throughput_tps: float | None
    memory_bytes: float
    bound: str


@dataclass(frozen=True)
class Series:
    name: str
    points: tuple[SweepPoint, ...]


def _substituted(req: SweepRequest, cfg: DeploymentConfig, x):
    hw = req.hardware
    if req.axis == AXIS_BANDWIDTH:
        hw = replace(hw, bandwidth=float(x))
        return hw, cfg
    value = int(x)
    if value != x:
        raise InvalidValue("values", f"{req.axis} values must be integers, got {x}")
    if req.axis == AXIS_BATCH:
        shape = replace(cfg.shape, batch_size=value)
    else:
        shape = replace(cfg.shape, prompt_len=value)
    return hw, replace(cfg, shape=shape)


def run_sweep(req: SweepRequest) -> list[Series]:
    """Evaluate every (variant, axis value) pair with analyze_network.

    Results are pointwise identical to direct analyze_network calls; no
    caching or reuse across points.
    """
    variants = req.variants or (VariantSpec(name="base"),)
    out = []
    for variant in variants:
        try:
            cfg = variant.apply(req.base)
            points = []
            for x in req.values:
                hw, cfg_x = _substituted(req, cfg, x)
                report = analyze_network(req.model, hw, cfg_x)
                points.append(
                    SweepPoint(
                        x=x,
                        latency_s=report.total_latency,
                        throughput_tps=report.throughput,
                        memory_bytes=report.memory.total,
                        bound=report.bottleneck_bound,
                    )
                )
        except AnalyzerError as exc:
            raise SweepError(variant.name, exc) from exc
        out.append(Series(name=variant.name, points=tuple(points)))
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def export_series(series: list[Series], format: str = "csv") -> str:
    """Serialize series to CSV or JSONL with full-precision numbers."""
    if format == "csv":
        lines = [CSV_HEADER]
        for s in series:
            for p in s.points:
                lines.append(
                    ",".join(
                        (
                            s.name,
                            _cell(p.x),
                            _cell(p.latency_s),
                            _cell(p.throughput_tps),
                            _cell(p.memory_bytes),
                            p.bound,
                        )
                    )
                )
        return "\n".join(lines) + "\n"
    if format == "jsonl":
        lines = []
        for s in series:
            for p in s.points:
                lines.append(
                    json.dumps(
                        {
                            "variant": s.name,
                            "x": p.x,
                            "latency_s": p.latency_s,
                            "throughput_tps": p.throughput_tps,
                            "memory_bytes": p.memory_bytes,
                            "bound": p.bound,
                        }
                    )
                )
        return "\n".join(lines) + "\n"
    raise InvalidValue("format", f"unknown export format {format!r}")


def _parse_number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_series_csv(text: str) -> list[Series]:
    """Inverse of the CSV export, for round-tripping sweep results."""
    reader = csv.DictReader(io.StringIO(text))
    by_name: dict[str, list[SweepPoint]] = {}
    for row in reader:
        by_name.setdefault(row["variant"], []).append(
            SweepPoint(
                x=_parse_number(row["x"]),
                latency_s=float(row["latency_s"]),
                throughput_tps=float(row["throughput_tps"]) if row["throughput_tps"] else None,
                memory_bytes=float(row["memory_bytes"]),
                bound=row["bound"],
            )
        )
    return [Series(name=name, points=tuple(points)) for name, points in by_name.items()]
