"""Hardware capability model and the roofline math.

Attainable performance is min(peak compute, arithmetic intensity x memory
bandwidth); the turning point peak/bandwidth separates memory-bound from
compute-bound operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidValue, MissingField, UnknownLink, UnsupportedDatatype
from .model import QuantSpec

MEMORY_BOUND = "memory"
COMPUTE_BOUND = "compute"


class Datatype(str, Enum):
    """Computation datatypes a device may declare peaks for, narrowest first."""

    INT4 = "int4"
    FP4 = "fp4"
    INT8 = "int8"
    FP8 = "fp8"
    FP16 = "fp16"
    FP32 = "fp32"

    @property
    def bits(self) -> int:
        return {"int4": 4, "fp4": 4, "int8": 8, "fp8": 8, "fp16": 16, "fp32": 32}[self.value]

    @property
    def is_integer(self) -> bool:
        return self.value.startswith("int")


_INT_BY_WIDTH = {4: Datatype.INT4, 8: Datatype.INT8}


@dataclass(frozen=True)
class Link:
    """One offload path (e.g. the host interconnect) and its bandwidth."""

    name: str
    bandwidth: float

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise InvalidValue("link.bandwidth", "must be > 0")


@dataclass(frozen=True)
class HardwareSpec:
    """Peak compute per datatype, main-memory bandwidth, capacity, links."""

    name: str
    bandwidth: float
    capacity: float
    compute: dict[Datatype, float]
    links: tuple[Link, ...] = ()

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise InvalidValue("bandwidth", "must be > 0")
        for dtype, peak in self.compute.items():
            if peak <= 0:
                raise InvalidValue(f"compute.{dtype.value}", "peak must be > 0")

    def supports(self, dtype: Datatype) -> bool:
        return dtype in self.compute

    def peak(self, dtype: Datatype) -> float:
        if dtype not in self.compute:
            raise UnsupportedDatatype(dtype.value, [d.value for d in self.compute])
        return self.compute[dtype]

    def link(self, name: str) -> Link:
        for link in self.links:
            if link.name == name:
                return link
        raise UnknownLink(name, [link.name for link in self.links])


@dataclass(frozen=True)
class RooflinePoint:
    """One operation's position on the roofline."""

    arithmetic_intensity: float
    attainable: float
    bound: str


def load_hardware_spec(document: dict) -> HardwareSpec:
    """Build a HardwareSpec from a document with keys name,
    bandwidth_bytes_per_s, capacity_bytes, compute (dtype -> ops/s), and an
    optional links list of {name, bandwidth_bytes_per_s}."""
    for key in ("name", "bandwidth_bytes_per_s", "capacity_bytes", "compute"):
        if key not in document:
            raise MissingField(key)
    compute = {}
    for key, peak in document["compute"].items():
        try:
            dtype = Datatype(key.lower())
        except ValueError:
            raise UnsupportedDatatype(key, [d.value for d in Datatype])
        compute[dtype] = float(peak)
    links = tuple(
        Link(entry["name"], float(entry["bandwidth_bytes_per_s"]))
        for entry in document.get("links", [])
    )
    return HardwareSpec(
        name=document["name"],
        bandwidth=float(document["bandwidth_bytes_per_s"]),
        capacity=float(document["capacity_bytes"]),
        compute=compute,
        links=links,
    )


def turning_point(hw: HardwareSpec, dtype: Datatype) -> float:
    """Arithmetic intensity at which the compute ceiling takes over."""
    return hw.peak(dtype) / hw.bandwidth


def attainable_performance(
    hw: HardwareSpec,
    dtype: Datatype,
    ai: float,
    effective_bandwidth: float | None = None,
) -> RooflinePoint:
    """Roofline position at arithmetic intensity ``ai``.

    ``effective_bandwidth`` substitutes the device bandwidth when part of
    the traffic streams over a slower tier; an op exactly at the turning
    point classifies as compute-bound.
    """
    if ai < 0:
        raise InvalidValue("ai", "must be >= 0")
    bandwidth = hw.bandwidth if effective_bandwidth is None else effective_bandwidth
    peak = hw.peak(dtype)
    memory_roof = ai * bandwidth
    if memory_roof < peak:
        return RooflinePoint(ai, memory_roof, MEMORY_BOUND)
    return RooflinePoint(ai, peak, COMPUTE_BOUND)


def resolve_compute_dtype(quant: QuantSpec, hw: HardwareSpec) -> Datatype:
    """Datatype the hardware actually computes in under a quantization choice.

    Matching weight/activation widths use the integer unit of that width
    when the device has one; anything else casts up to the narrowest
    supported type at least as wide as both operands, preferring integer
    units while everything stays quantized and float once an operand is
    16-bit. FP16 is the guaranteed fallback.
    """
    if quant.w_bits == quant.a_bits:
        matching = _INT_BY_WIDTH.get(quant.w_bits)
        if matching is not None and hw.supports(matching):
            return matching
    need = max(quant.w_bits, quant.a_bits)
    prefer_integer = need <= 8
    candidates = [d for d in hw.compute if d.bits >= need]
    if not candidates:
        return Datatype.FP16
    return min(candidates, key=lambda d: (d.bits, d.is_integer != prefer_integer))
