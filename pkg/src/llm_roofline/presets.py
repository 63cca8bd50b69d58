"""Bundled model and hardware presets, one JSON document per entry.

The directory can be overridden with the LLM_ROOFLINE_PRESET_DIR
environment variable; it must contain ``models/`` and ``hardware/``
subdirectories with the same document schemas as the bundled files.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import UnknownPreset
from .hardware import HardwareSpec, load_hardware_spec
from .model import ModelConfig, load_model_config

PRESET_DIR_ENV = "LLM_ROOFLINE_PRESET_DIR"

_BUNDLED = Path(__file__).parent / "presets"


def _preset_dir() -> Path:
    override = os.environ.get(PRESET_DIR_ENV)
    return Path(override) if override else _BUNDLED


def _load_documents(kind: str) -> dict[str, dict]:
    directory = _preset_dir() / kind
    documents = {}
    if directory.is_dir():
        for path in sorted(directory.glob("*.json")):
            with open(path) as fh:
                documents[path.stem] = json.load(fh)
    return documents


def list_model_presets() -> list[str]:
    return sorted(_load_documents("models"))


def list_hardware_presets() -> list[str]:
    return sorted(_load_documents("hardware"))


def model_preset_document(name: str) -> dict:
    """The raw bundled document, e.g. as a starting point for inline edits."""
    documents = _load_documents("models")
    if name not in documents:
        raise UnknownPreset(name, sorted(documents))
    return documents[name]


def hardware_preset_document(name: str) -> dict:
    documents = _load_documents("hardware")
    if name not in documents:
        raise UnknownPreset(name, sorted(documents))
    return documents[name]


def preset_model(name: str) -> ModelConfig:
    return load_model_config(model_preset_document(name))


def preset_hardware(name: str) -> HardwareSpec:
    return load_hardware_spec(hardware_preset_document(name))


def resolve_model(spec: str | dict | ModelConfig) -> ModelConfig:
    """Accept a preset name, an inline document, or an already-built config."""
    if isinstance(spec, ModelConfig):
        return spec
    if isinstance(spec, str):
        return preset_model(spec)
    return load_model_config(spec)


def resolve_hardware(spec: str | dict | HardwareSpec) -> HardwareSpec:
    if isinstance(spec, HardwareSpec):
        return spec
    if isinstance(spec, str):
        return preset_hardware(spec)
    return load_hardware_spec(spec)
