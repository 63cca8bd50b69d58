"""Command-line client: analyze, sweep, serve.

The CLI builds the same request models the HTTP API accepts and calls the
same handlers in process, so ``analyze --format json`` is byte-identical
to a POST /api/analyze response for the same inputs.

Exit codes: 0 success, 2 bad flags or invalid input, 3 unknown preset.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from pydantic import ValidationError

from .errors import AnalyzerError, SweepError, UnknownPreset
from .formatting import canonical_json, format_count, format_intensity, format_seconds
from .schemas import AnalyzeRequest, OptimizationIn, ShapeIn, SweepRequestIn, SweepVariantIn
from .service import create_app, execute_sweep, run_analysis
from .sweeps import export_series

_TABLE_COLUMNS = (
    "Layer Name",
    "OPs",
    "Memory Access",
    "Arithmetic Intensity",
    "Max Performance",
    "Bound",
    "Time",
)

_VARIANT_KEYS = {
    "w": "w_bits",
    "a": "a_bits",
    "kv": "kv_bits",
    "flash": "fused_attention",
    "offload": "offload_weights",
    "fraction": "active_layer_fraction",
}


def _spec_argument(value: str):
    """A preset name, or a path to a JSON document used inline."""
    if os.path.isfile(value):
        with open(value) as fh:
            return json.load(fh)
    return value


def _add_analysis_flags(parser):
    parser.add_argument("--model", required=True, help="model preset name or JSON file")
    parser.add_argument("--hardware", required=True, help="hardware preset name or JSON file")
    parser.add_argument("--batch", type=int, default=1)
    parser.add_argument("--prompt-len", type=int, default=0)
    parser.add_argument("--gen-len", type=int, default=0)
    parser.add_argument("--w-bits", type=int, default=16)
    parser.add_argument("--a-bits", type=int, default=16)
    parser.add_argument("--kv-bits", type=int, default=16)
    parser.add_argument("--flash-attn", action="store_true", help="fuse the attention ops")
    parser.add_argument("--offload-weights", metavar="LINK", help="stream weights over a link")
    parser.add_argument("--layer-fraction", type=float, default=1.0)


def _shape_and_optimization(args) -> tuple[ShapeIn, OptimizationIn]:
    shape = ShapeIn(batch_size=args.batch, prompt_len=args.prompt_len, gen_len=args.gen_len)
    optimization = OptimizationIn(
        w_bits=args.w_bits,
        a_bits=args.a_bits,
        kv_bits=args.kv_bits,
        fused_attention=args.flash_attn,
        offload_weights=args.offload_weights,
        active_layer_fraction=args.layer_fraction,
    )
    return shape, optimization


def _render_table(result: dict) -> str:
    rows_by_stage: dict[str, list[list[str]]] = {}
    for op in result["per_op"]:
        rows_by_stage.setdefault(op["stage"], []).append(
            [
                op["op_name"],
                format_count(op["ops"]),
                format_count(op["total_bytes"]),
                format_intensity(op["arithmetic_intensity"]),
                format_count(op["attainable"]),
                op["bound"],
                format_seconds(op["time"]),
            ]
        )
    widths = [len(c) for c in _TABLE_COLUMNS]
    for rows in rows_by_stage.values():
        for row in rows:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]

    def line(cells):
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    out = []
    for stage in ("prefill", "decode"):
        if stage not in rows_by_stage:
            continue
        out.append(stage.capitalize())
        out.append(line(_TABLE_COLUMNS))
        out.extend(line(row) for row in rows_by_stage[stage])
        out.append("")

    memory = result["memory"]
    out.append("Network")
    out.append(f"  prefill latency     {format_seconds(result['prefill_latency'])}")
    if result["decode_latency_first"] is not None:
        out.append(f"  decode step first   {format_seconds(result['decode_latency_first'])}")
        out.append(f"  decode step last    {format_seconds(result['decode_latency_last'])}")
    out.append(f"  total latency       {format_seconds(result['total_latency'])}")
    if result["throughput"] is not None:
        out.append(f"  throughput          {result['throughput']:.1f} tokens/s")
    capacity = "  (CAPACITY EXCEEDED)" if result["capacity_exceeded"] else ""
    out.append(
        "  memory              "
        f"weights {format_count(memory['weights'])}B"
        f" + kv {format_count(memory['kv_cache'])}B"
        f" + activations {format_count(memory['activations_peak'])}B"
        f" = {format_count(memory['total'])}B{capacity}"
    )
    out.append(f"  bottleneck          {result['bottleneck']} ({result['bottleneck_bound']})")
    return "\n".join(out)


def _render_csv(result: dict) -> str:
    lines = ["op_name,stage,ops,total_bytes,arithmetic_intensity,attainable,bound,time,instances"]
    for op in result["per_op"]:
        lines.append(
            ",".join(
                (
                    op["op_name"],
                    op["stage"],
                    str(op["ops"]),
                    repr(float(op["total_bytes"])),
                    repr(float(op["arithmetic_intensity"])),
                    repr(float(op["attainable"])),
                    op["bound"],
                    repr(float(op["time"])),
                    str(op["instances"]),
                )
            )
        )
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    shape, optimization = _shape_and_optimization(args)
    request = AnalyzeRequest(
        model=_spec_argument(args.model),
        hardware=_spec_argument(args.hardware),
        shape=shape,
        optimization=optimization,
    )
    result = run_analysis(request)
    if args.format == "json":
        print(canonical_json(result))
    elif args.format == "csv":
        print(_render_csv(result))
    else:
        print(_render_table(result))
    return 0


def _parse_variant(token: str) -> SweepVariantIn:
    name, _, rest = token.partition(":")
    if not name:
        raise ValueError(f"malformed variant {token!r}")
    fields = {}
    if rest:
        for part in rest.split(","):
            key, sep, value = part.partition("=")
            field = _VARIANT_KEYS.get(key.strip())
            if not sep or field is None or not value:
                raise ValueError(f"malformed variant {token!r} (near {part!r})")
            if field == "fused_attention":
                fields[field] = value.strip().lower() in ("1", "true", "yes", "on")
            elif field == "offload_weights":
                fields[field] = value.strip()
            elif field == "active_layer_fraction":
                fields[field] = float(value)
            else:
                fields[field] = int(value)
    return SweepVariantIn(name=name, **fields)


def _cmd_sweep(args) -> int:
    values = [v for v in (part.strip() for part in args.values.split(",")) if v]
    if not values:
        print("error: --values must list at least one number", file=sys.stderr)
        return 2
    shape, optimization = _shape_and_optimization(args)
    request = SweepRequestIn(
        axis=args.axis.replace("-", "_"),
        values=[float(v) for v in values],
        model=_spec_argument(args.model),
        hardware=_spec_argument(args.hardware),
        shape=shape,
        optimization=optimization,
        variants=[_parse_variant(token) for token in args.variant or []],
    )
    series = execute_sweep(request)
    print(export_series(series, "csv"), end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llm-roofline",
        description="Roofline-based cost analysis for transformer inference",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyze one deployment configuration")
    _add_analysis_flags(p_analyze)
    p_analyze.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_sweep = sub.add_parser("sweep", help="sweep an axis and print CSV series")
    _add_analysis_flags(p_sweep)
    p_sweep.add_argument(
        "--axis", required=True, choices=("batch", "prompt-len", "context-len", "bandwidth")
    )
    p_sweep.add_argument("--values", required=True, help="comma-separated axis values")
    p_sweep.add_argument(
        "--variant",
        action="append",
        metavar="NAME[:k=v,...]",
        help="named config delta, keys: w,a,kv,flash,offload,fraction (repeatable)",
    )
    p_sweep.set_defaults(func=_cmd_sweep)

    p_serve = sub.add_parser("serve", help="run the HTTP JSON service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", help="directory with the built web viewer")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UnknownPreset as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3 if isinstance(exc.cause, UnknownPreset) else 2
    except (AnalyzerError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
