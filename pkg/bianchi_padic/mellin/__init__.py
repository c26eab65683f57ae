"""Mellin transform of the eigensymbol and the interpolation checks built on it."""

from .checks import VerificationRecord, interpolation_check, interpolation_rhs, katz_check
from .rayclass import RayClassStructure
from .transform import (
    PadicLValue,
    PrecisionLedger,
    RefinementCheck,
    UnitInvarianceCheck,
    disc_sum,
    mellin_eval,
    refinement_check,
    unit_invariance_check,
)

__all__ = [
    "PadicLValue",
    "PrecisionLedger",
    "RayClassStructure",
    "RefinementCheck",
    "UnitInvarianceCheck",
    "VerificationRecord",
    "disc_sum",
    "interpolation_check",
    "interpolation_rhs",
    "katz_check",
    "mellin_eval",
    "refinement_check",
    "unit_invariance_check",
]
