"""Roofline-based analytical cost model for transformer inference."""

from .analysis import (
    DeploymentConfig,
    FusionComparison,
    LayerReport,
    MemoryBreakdown,
    NetworkReport,
    OffloadSpec,
    StageSavings,
    analyze_network,
    analyze_op,
    compare_fusion,
    memory_footprint,
    peak_activation_bytes,
)
from .errors import (
    AnalyzerError,
    InvalidDimension,
    InvalidValue,
    MissingField,
    SweepError,
    UnknownLink,
    UnknownPreset,
    UnsupportedDatatype,
)
from .hardware import (
    COMPUTE_BOUND,
    MEMORY_BOUND,
    Datatype,
    HardwareSpec,
    Link,
    RooflinePoint,
    attainable_performance,
    load_hardware_spec,
    resolve_compute_dtype,
    turning_point,
)
from .model import (
    InferenceShape,
    ModelConfig,
    OpProfile,
    QuantSpec,
    Stage,
    build_op_graph,
    count_params,
    load_model_config,
)
from .presets import (
    list_hardware_presets,
    list_model_presets,
    preset_hardware,
    preset_model,
    resolve_hardware,
    resolve_model,
)
from .sweeps import Series, SweepPoint, SweepRequest, VariantSpec, export_series, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AnalyzerError",
    "COMPUTE_BOUND",
    "Datatype",
    "DeploymentConfig",
    "FusionComparison",
    "HardwareSpec",
    "InferenceShape",
    "InvalidDimension",
    "InvalidValue",
    "LayerReport",
    "Link",
    "MEMORY_BOUND",
    "MemoryBreakdown",
    "MissingField",
    "ModelConfig",
    "NetworkReport",
    "OffloadSpec",
    "OpProfile",
    "QuantSpec",
    "RooflinePoint",
    "Series",
    "Stage",
    "StageSavings",
    "SweepError",
    "SweepPoint",
    "SweepRequest",
    "UnknownLink",
    "UnknownPreset",
    "UnsupportedDatatype",
    "VariantSpec",
    "analyze_network",
    "analyze_op",
    "attainable_performance",
    "build_op_graph",
    "compare_fusion",
    "count_params",
    "export_series",
    "list_hardware_presets",
    "list_model_presets",
    "load_hardware_spec",
    "load_model_config",
    "memory_footprint",
    "peak_activation_bytes",
    "preset_hardware",
    "preset_model",
    "resolve_compute_dtype",
    "resolve_hardware",
    "resolve_model",
    "run_sweep",
    "turning_point",
]
