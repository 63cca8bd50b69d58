"""Transformer architecture description and analytical operation profiles.

Expands a (model, inference shape, stage) triple into a dataflow-ordered list
of operation profiles, each carrying exact operation counts and byte traffic
split by tensor class (weights / activations / KV cache). These profiles are
the raw material for roofline analysis; no tensor math happens here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDimension, InvalidValue, MissingField

# Elementwise cost model, in operations per tensor element. Softmax is
# max-subtract, exp, accumulate, divide plus one pass of bookkeeping (5);
# normalization is square, accumulate, mean, rsqrt, scale, shift and one
# pass of bookkeeping (7); a residual add is a single op. Each elementwise
# op streams one read and one write per element; the second operand of the
# residual add is modeled as already resident on chip.
SOFTMAX_OPS_PER_ELEMENT = 5
NORM_OPS_PER_ELEMENT = 7
ADD_OPS_PER_ELEMENT = 1
ELEMENTWISE_TENSORS_MOVED = 2

PER_LAYER = "layer"
GLOBAL = "global"

PREFILL = "prefill"
DECODE = "decode"

# Ops whose cost depends on the attention span (grow with context in decode).
ATTENTION_OP_NAMES = ("qk_matmul", "softmax", "sv_matmul", "fused_attention")

_VALID_WEIGHT_BITS = (1, 2, 4, 8, 16)
_VALID_ACT_BITS = (4, 8, 16)


@dataclass(frozen=True)
class ModelConfig:
    """Architectural hyperparameters of a decoder-only transformer."""

    name: str
    hidden_size: int
    intermediate_size: int
    num_layers: int
    num_heads: int
    num_kv_heads: int
    vocab_size: int
    include_lm_head: bool = True

    def __post_init__(self):
        for key in ("hidden_size", "intermediate_size", "num_heads", "num_kv_heads", "vocab_size"):
            if getattr(self, key) < 1:
                raise InvalidDimension(key, "must be >= 1")
        if self.num_layers < 0:
            raise InvalidDimension("num_layers", "must be >= 0")
        if self.hidden_size % self.num_heads != 0:
            raise InvalidDimension(
                "hidden_size",
                f"{self.hidden_size} not divisible by num_heads={self.num_heads}",
            )
        if self.num_heads % self.num_kv_heads != 0:
            raise InvalidDimension(
                "num_kv_heads",
                f"num_heads={self.num_heads} not divisible by num_kv_heads={self.num_kv_heads}",
            )

    @property
    def head_dim(self) -> int:
        return self.hidden_size // self.num_heads

    @property
    def kv_row_elements(self) -> int:
        """Elements per token in one cached tensor (K or V) of one layer."""
        return self.head_dim * self.num_kv_heads


@dataclass(frozen=True)
class InferenceShape:
    """Batch size and token counts of one inference request."""

    batch_size: int
    prompt_len: int
    gen_len: int

    def __post_init__(self):
        if self.batch_size < 1:
            raise InvalidValue("batch_size", "must be >= 1")
        if self.prompt_len < 0:
            raise InvalidValue("prompt_len", "must be >= 0")
        if self.gen_len < 0:
            raise InvalidValue("gen_len", "must be >= 0")
        if self.prompt_len + self.gen_len < 1:
            raise InvalidValue("prompt_len", "prompt_len + gen_len must be >= 1")


@dataclass(frozen=True)
class Stage:
    """Inference stage: the full-prompt pass or one autoregressive step.

    A decode step with ``context_len`` tokens already cached first appends
    the new token's K/V, then attends over ``context_len + 1`` positions.
    """

    name: str
    context_len: int = 0

    def __post_init__(self):
        if self.name not in (PREFILL, DECODE):
            raise InvalidValue("stage", f"unknown stage {self.name!r}")
        if self.context_len < 0:
            raise InvalidValue("context_len", "must be >= 0")

    @classmethod
    def prefill(cls) -> "Stage":
        return cls(PREFILL)

    @classmethod
    def decode(cls, context_len: int) -> "Stage":
        return cls(DECODE, context_len)

    @property
    def is_prefill(self) -> bool:
        return self.name == PREFILL


@dataclass(frozen=True)
class QuantSpec:
    """Bit widths for weights, activations, and the KV cache."""

    w_bits: int = 16
    a_bits: int = 16
    kv_bits: int = 16

    def __post_init__(self):
        if self.w_bits not in _VALID_WEIGHT_BITS:
            raise InvalidValue("w_bits", f"must be one of {_VALID_WEIGHT_BITS}")
        if self.a_bits not in _VALID_ACT_BITS:
            raise InvalidValue("a_bits", f"must be one of {_VALID_ACT_BITS}")
        if self.kv_bits not in _VALID_WEIGHT_BITS:
            raise InvalidValue("kv_bits", f"must be one of {_VALID_WEIGHT_BITS}")

    # Bytes per element; fractional for sub-byte widths (4 bits -> 0.5).
    @property
    def w_bytes(self) -> float:
        return self.w_bits / 8

    @property
    def a_bytes(self) -> float:
        return self.a_bits / 8

    @property
    def kv_bytes(self) -> float:
        return self.kv_bits / 8


@dataclass(frozen=True)
class OpProfile:
    """Analytical cost of one operation instance.

    ``ops`` counts individual operations (one multiply-accumulate = 2 ops).
    Byte fields classify traffic by tensor kind; ``instances_per_layer``
    carries multiplicity for ops that appear more than once per layer.
    """

    op_name: str
    stage: Stage
    ops: int
    bytes_weights: float = 0.0
    bytes_act_in: float = 0.0
    bytes_act_out: float = 0.0
    bytes_kv: float = 0.0
    instances_per_layer: int = 1
    layer_scope: str = PER_LAYER

    @property
    def total_bytes(self) -> float:
        return self.bytes_weights + self.bytes_act_in + self.bytes_act_out + self.bytes_kv


def load_model_config(document: dict) -> ModelConfig:
    """Build a validated ModelConfig from a model-card style document.

    Required keys: hidden_size, intermediate_size, num_hidden_layers,
    num_attention_heads, vocab_size. Optional: num_key_value_heads
    (defaults to num_attention_heads), tie_word_embeddings (defaults to
    false; a tied head is dropped from the op graph and parameter count),
    name.
    """
    required = (
        "hidden_size",
        "intermediate_size",
        "num_hidden_layers",
        "num_attention_heads",
        "vocab_size",
    )
    for key in required:
        if key not in document:
            raise MissingField(key)
    num_heads = document["num_attention_heads"]
    return ModelConfig(
        name=document.get("name", "custom"),
        hidden_size=document["hidden_size"],
        intermediate_size=document["intermediate_size"],
        num_layers=document["num_hidden_layers"],
        num_heads=num_heads,
        num_kv_heads=document.get("num_key_value_heads", num_heads),
        vocab_size=document["vocab_size"],
        include_lm_head=not document.get("tie_word_embeddings", False),
    )


def count_params(cfg: ModelConfig) -> int:
    """Total weight count: attention + MLP + two norms per layer, final
    norm, embedding, and the untied output head when present."""
    d = cfg.hidden_size
    d_i = cfg.intermediate_size
    per_layer = 4 * d * d + 3 * d * d_i + 2 * d
    total = cfg.num_layers * per_layer + d + cfg.vocab_size * d
    if cfg.include_lm_head:
        total += cfg.vocab_size * d
    return total


def _linear(name, stage, b, t, d_in, d_out, quant, out_elem_bytes=None):
    out_bytes = quant.a_bytes if out_elem_bytes is None else out_elem_bytes
    return OpProfile(
        op_name=name,
        stage=stage,
        ops=2 * b * t * d_in * d_out,
        bytes_weights=float(d_in * d_out) * quant.w_bytes,
        bytes_act_in=float(b * t * d_in) * quant.a_bytes,
        bytes_act_out=float(b * t * d_out) * out_bytes,
    )


def _elementwise(name, stage, ops_per_elem, elems, quant, instances):
    moved = float(elems) * quant.a_bytes * ELEMENTWISE_TENSORS_MOVED
    return OpProfile(
        op_name=name,
        stage=stage,
        ops=ops_per_elem * elems,
        bytes_act_in=moved / 2,
        bytes_act_out=moved / 2,
        instances_per_layer=instances,
    )


def attention_ops(
    cfg: ModelConfig,
    batch_size: int,
    stage: Stage,
    quant: QuantSpec,
    fused_attention: bool = False,
) -> list[OpProfile]:
    """Span-dependent attention ops of one layer for a decode step.

    Exposed separately from :func:`build_op_graph` because these are the
    only ops whose cost changes from one decode step to the next.
    """
    if stage.is_prefill:
        raise InvalidValue("stage", "use build_op_graph for prefill attention")
    return _attention_ops(
        cfg, batch_size, 1, stage.context_len + 1, stage, quant, fused_attention
    )


def _attention_ops(cfg, b, t, span, stage, quant, fused_attention):
    matmul_ops = 2 * b * t * span * cfg.hidden_size
    score_elems = b * cfg.num_heads * t * span
    q_bytes = float(b * t * cfg.hidden_size) * quant.a_bytes
    kv_one = float(b * span * cfg.kv_row_elements) * quant.kv_bytes
    score_bytes = float(score_elems) * quant.a_bytes
    out_bytes = float(b * t * cfg.hidden_size) * quant.a_bytes
    if fused_attention:
        # One operator covering both matmuls and the softmax; the score
        # tensor stays on chip and never reaches main memory.
        return [
            OpProfile(
                op_name="fused_attention",
                stage=stage,
                ops=2 * matmul_ops + SOFTMAX_OPS_PER_ELEMENT * score_elems,
                bytes_act_in=q_bytes,
                bytes_kv=2 * kv_one,
                bytes_act_out=out_bytes,
            )
        ]
    return [
        OpProfile(
            op_name="qk_matmul",
            stage=stage,
            ops=matmul_ops,
            bytes_act_in=q_bytes,
            bytes_kv=kv_one,
            bytes_act_out=score_bytes,
        ),
        OpProfile(
            op_name="softmax",
            stage=stage,
            ops=SOFTMAX_OPS_PER_ELEMENT * score_elems,
            bytes_act_in=score_bytes,
            bytes_act_out=score_bytes,
        ),
        OpProfile(
            op_name="sv_matmul",
            stage=stage,
            ops=matmul_ops,
            bytes_act_in=score_bytes,
            bytes_kv=kv_one,
            bytes_act_out=out_bytes,
        ),
    ]


def build_op_graph(
    cfg: ModelConfig,
    shape: InferenceShape,
    stage: Stage,
    quant: QuantSpec = QuantSpec(),
    fused_attention: bool = False,
) -> list[OpProfile]:
    """Emit the per-operation cost profiles for one stage pass.

    Returns ops in dataflow order: embedding, then per-layer
    norm -> q/k/v -> attention -> o -> add -> gate/up -> down (norm and add
    carry instances_per_layer=2 for their pre-attention and pre-MLP
    occurrences), then the output head. Prefill processes t = prompt_len
    tokens attending over the full prompt; a decode step processes one
    token attending over context_len + 1 positions.
    """
    b = shape.batch_size
    if stage.is_prefill:
        t = shape.prompt_len
        span = shape.prompt_len
    else:
        t = 1
        span = stage.context_len + 1
    d = cfg.hidden_size
    d_i = cfg.intermediate_size

    graph = [
        # Embedding is a row gather: weight bytes for the rows touched, no MACs.
        OpProfile(
            op_name="embedding",
            stage=stage,
            ops=0,
            bytes_weights=float(b * t * d) * quant.w_bytes,
            bytes_act_out=float(b * t * d) * quant.a_bytes,
            layer_scope=GLOBAL,
        ),
        _elementwise("norm", stage, NORM_OPS_PER_ELEMENT, b * t * d, quant, instances=2),
        _linear("q_proj", stage, b, t, d, d, quant),
        # K/V projections write straight into the KV cache at its bit width.
        _linear("k_proj", stage, b, t, d, d, quant, out_elem_bytes=quant.kv_bytes),
        _linear("v_proj", stage, b, t, d, d, quant, out_elem_bytes=quant.kv_bytes),
        *_attention_ops(cfg, b, t, span, stage, quant, fused_attention),
        _linear("o_proj", stage, b, t, d, d, quant),
        _elementwise("add", stage, ADD_OPS_PER_ELEMENT, b * t * d, quant, instances=2),
        _linear("gate_proj", stage, b, t, d, d_i, quant),
        _linear("up_proj", stage, b, t, d, d_i, quant),
        _linear("down_proj", stage, b, t, d_i, d, quant),
    ]
    if cfg.include_lm_head:
        # Evaluated at one output position per sequence per step.
        graph.append(
            OpProfile(
                op_name="lm_head",
                stage=stage,
                ops=2 * b * d * cfg.vocab_size,
                bytes_weights=float(d * cfg.vocab_size) * quant.w_bytes,
                bytes_act_in=float(b * d) * quant.a_bytes,
                bytes_act_out=float(b * cfg.vocab_size) * quant.a_bytes,
                layer_scope=GLOBAL,
            )
        )
    return graph
