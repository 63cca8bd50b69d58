"""Exception types shared across the package."""

from __future__ import annotations


class AnalyzerError(Exception):
    """Base class for all errors raised by this package."""


class MissingField(AnalyzerError):
    """A required key is absent from a model or hardware document."""

    def __init__(self, field: str):
        self.field = field
        super().__init__(f"missing required field: {field}")


class InvalidValue(AnalyzerError):
    """A field is present but violates an invariant."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InvalidDimension(InvalidValue):
    """A model dimension violates an architectural invariant."""


class UnknownPreset(AnalyzerError):
    """A preset name does not exist in the registry."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = list(known)
        super().__init__(f"unknown preset: {name} (known: {', '.join(self.known)})")


class UnsupportedDatatype(AnalyzerError):
    """The hardware does not declare a peak for the requested datatype."""

    def __init__(self, dtype: str, supported: list[str]):
        self.dtype = dtype
        self.supported = list(supported)
        super().__init__(
            f"datatype {dtype} not supported (supported: {', '.join(self.supported)})"
        )


class UnknownLink(AnalyzerError):
    """An offload link name does not exist on the hardware."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = list(known)
        super().__init__(f"unknown link: {name} (known: {', '.join(self.known) or 'none'})")


class SweepError(AnalyzerError):
    """An error raised while evaluating one sweep variant."""

    def __init__(self, variant: str, cause: Exception):
        self.variant = variant
        self.cause = cause
        super().__init__(f"variant '{variant}': {cause}")
