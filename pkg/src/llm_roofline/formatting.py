"""Number rendering for tables and the canonical JSON wire form.

Counts use K/M/G/T suffixes at powers of 1000, rounded to an integer in
the chosen unit; JSON payloads keep raw SI values, with floats fixed at 6
significant digits and exact integers untouched so that identical inputs
always serialize to identical bytes.
"""

from __future__ import annotations

import json
import math

_UNITS = (
    (1e18, "E"),
    (1e15, "P"),
    (1e12, "T"),
    (1e9, "G"),
    (1e6, "M"),
    (1e3, "K"),
)


def format_count(value: float) -> str:
    """Render an op or byte count like 69G, 302M, 328K."""
    if value < 0:
        return "-" + format_count(-value)
    for scale, suffix in _UNITS:
        if value >= scale:
            return f"{int(value / scale + 0.5)}{suffix}"
    return str(int(value + 0.5))


def format_intensity(value: float) -> str:
    """Arithmetic intensity: integer above 100, else two decimals."""
    if value >= 100:
        return str(int(value + 0.5))
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return text or "0"


def format_seconds(value: float) -> str:
    for scale, suffix in ((1.0, "s"), (1e-3, "ms"), (1e-6, "us"), (1e-9, "ns")):
        if value >= scale:
            return f"{value / scale:.3g}{suffix}"
    return f"{value:.3g}s"


def canonical_json(value) -> str:
    """Deterministic JSON: sorted keys, compact separators, floats at 6
    significant digits."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("non-finite numbers are not representable in JSON")
        return format(value, ".6g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(canonical_json(item) for item in value) + "]"
    if isinstance(value, dict):
        parts = (
            f"{json.dumps(str(key))}:{canonical_json(value[key])}" for key in sorted(value)
        )
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot canonicalize {type(value).__name__}")
