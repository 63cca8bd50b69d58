"""HTTP JSON service and the shared request handlers the CLI reuses.

The service is stateless: every request is resolved, analyzed, and
serialized independently, so identical requests always produce
byte-identical responses.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .analysis import DeploymentConfig, OffloadSpec, analyze_network
from .errors import AnalyzerError, SweepError, UnknownPreset
from .formatting import canonical_json
from .model import InferenceShape, QuantSpec
from .presets import (
    hardware_preset_document,
    list_hardware_presets,
    list_model_presets,
    model_preset_document,
    resolve_hardware,
    resolve_model,
)
from .schemas import (
    AnalyzeRequest,
    OptimizationIn,
    ShapeIn,
    SweepRequestIn,
    network_report_out,
    series_out,
)
from .sweeps import SweepRequest, VariantSpec, run_sweep


def deployment_config(shape: ShapeIn, optimization: OptimizationIn) -> DeploymentConfig:
    offload = None
    if optimization.offload_weights is not None:
        offload = OffloadSpec(what="weights", link=optimization.offload_weights)
    return DeploymentConfig(
        shape=InferenceShape(shape.batch_size, shape.prompt_len, shape.gen_len),
        quant=QuantSpec(optimization.w_bits, optimization.a_bits, optimization.kv_bits),
        fused_attention=optimization.fused_attention,
        offload=offload,
        active_layer_fraction=optimization.active_layer_fraction,
    )


def run_analysis(request: AnalyzeRequest) -> dict:
    """Resolve an analyze request and return the report as a plain dict."""
    model = resolve_model(request.model)
    hardware = resolve_hardware(request.hardware)
    cfg = deployment_config(request.shape, request.optimization)
    report = analyze_network(model, hardware, cfg)
    return network_report_out(report).model_dump()


def execute_sweep(request: SweepRequestIn):
    """Resolve a sweep request and run it, returning Series objects."""
    req = SweepRequest(
        axis=request.axis,
        values=tuple(int(v) if float(v).is_integer() else float(v) for v in request.values),
        model=resolve_model(request.model),
        hardware=resolve_hardware(request.hardware),
        base=deployment_config(request.shape, request.optimization),
        variants=tuple(
            VariantSpec(
                name=v.name,
                w_bits=v.w_bits,
                a_bits=v.a_bits,
                kv_bits=v.kv_bits,
                fused_attention=v.fused_attention,
                offload_link=v.offload_weights,
                active_layer_fraction=v.active_layer_fraction,
            )
            for v in request.variants
        ),
    )
    return run_sweep(req)


def presets_payload() -> dict:
    return {"models": list_model_presets(), "hardware": list_hardware_presets()}


def _canonical_response(payload) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")


def _error_payload(exc: AnalyzerError) -> dict:
    payload = {"error": type(exc).__name__, "field": getattr(exc, "field", None)}
    if isinstance(exc, UnknownPreset):
        payload["field"] = exc.name
        payload["known"] = exc.known
    return payload


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="llm-roofline", version="0.1.0")

    @app.exception_handler(AnalyzerError)
    async def analyzer_error_handler(request: Request, exc: AnalyzerError):
        cause = exc.cause if isinstance(exc, SweepError) else exc
        status = 422 if isinstance(cause, UnknownPreset) else 400
        return JSONResponse(status_code=status, content=_error_payload(cause))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        field = ".".join(str(part) for part in errors[0]["loc"]) if errors else None
        return JSONResponse(status_code=400, content={"error": "ValidationError", "field": field})

    @app.get("/api/presets")
    def get_presets():
        return _canonical_response(presets_payload())

    # raw preset documents, consumed by the viewer for roofline geometry,
    # offload-link choices, and as inline-edit starting points
    @app.get("/api/presets/models/{name}")
    def get_model_preset(name: str):
        return _canonical_response(model_preset_document(name))

    @app.get("/api/presets/hardware/{name}")
    def get_hardware_preset(name: str):
        return _canonical_response(hardware_preset_document(name))

    @app.post("/api/analyze")
    def post_analyze(request: AnalyzeRequest):
        return _canonical_response(run_analysis(request))

    @app.post("/api/sweep")
    def post_sweep(request: SweepRequestIn):
        series = execute_sweep(request)
        return _canonical_response([series_out(s).model_dump() for s in series])

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="viewer")

    return app
