"""Arithmetic of the imaginary quadratic field K: elements, ideals, residue groups and cusps."""

from .cusps import (
    CStabilityReport,
    Cusp,
    Matrix2,
    c_stability_check,
    cusp_in_C,
    gamma1_samples,
    sample_cusps,
    stabilization_matrices,
)
from .field import ElemK, FieldK, is_fundamental
from .ideals import (
    IdealK,
    PrimeSplitting,
    canonical_associate,
    class_representatives,
    crt_idempotent,
    crt_lift,
    factor_ideal,
    factor_prime,
    ideal_from_factors,
    ideal_lcm,
    ideals_of_norm,
)
from .residues import ResidueGroup, residue_group

__all__ = [
    "CStabilityReport",
    "Cusp",
    "ElemK",
    "FieldK",
    "IdealK",
    "Matrix2",
    "PrimeSplitting",
    "ResidueGroup",
    "c_stability_check",
    "canonical_associate",
    "class_representatives",
    "crt_idempotent",
    "crt_lift",
    "cusp_in_C",
    "factor_ideal",
    "factor_prime",
    "gamma1_samples",
    "ideal_from_factors",
    "ideal_lcm",
    "ideals_of_norm",
    "is_fundamental",
    "residue_group",
    "sample_cusps",
    "stabilization_matrices",
]
