"""Custom exceptions for the Bianchi p-adic L-function toolkit."""

from __future__ import annotations


class _ToolkitError(RuntimeError):
    """Base class carrying a human readable message."""
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class ArithmeticDomainError(_ToolkitError):
    """Raised for undefined exact arithmetic (division by zero, no simple root)."""


class PrecisionError(_ToolkitError):
    """Raised when a p-adic or complex computation cannot reach the requested precision."""


class EmbeddingError(_ToolkitError):
    """Raised when a cyclotomic value cannot be represented through the fixed p-adic embedding."""


class FieldError(_ToolkitError):
    """Raised for invalid quadratic field data or unsupported ideal operations."""


class CharacterError(_ToolkitError):
    """Raised when a Hecke character is malformed or used outside its domain."""


class LValueError(_ToolkitError):
    """Raised when an L-value cannot be computed or vanishes where it must not."""


class RecognitionError(_ToolkitError):
    """Raised when a complex number cannot be recognized as an algebraic value."""


class SymbolError(_ToolkitError):
    """Raised when a partial modular symbol value cannot be produced."""


class LiftError(_ToolkitError):
    """Raised when the overconvergent lifting iteration fails."""


class MellinError(_ToolkitError):
    """Raised when a Mellin transform evaluation is outside the supported range."""


class ConfigError(_ToolkitError):
    """Raised when the pipeline configuration is invalid."""


class CacheError(_ToolkitError):
    """Raised when the persistent L-value cache cannot be read or written."""


class StageError(_ToolkitError):
    """Raised by the pipeline when a stage fails; wraps the underlying domain error."""
    def __init__(self, stage: str, cause: BaseException) -> None:
        super().__init__(f"stage={stage} error={cause}")
        self.stage = stage
        self.cause = cause


DOMAIN_ERRORS = (
    ArithmeticDomainError,
    PrecisionError,
    EmbeddingError,
    FieldError,
    CharacterError,
    LValueError,
    RecognitionError,
    SymbolError,
    LiftError,
    MellinError,
    ConfigError,
    CacheError,
)
