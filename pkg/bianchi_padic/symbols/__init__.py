"""Classical partial Bianchi modular symbols with values in V_{k,k}^*."""

from .divisors import CuspDivisor
from .dualpoly import ClassicalScalars, DualPoly, PadicScalars, centered_coefficients, gamma_action, substitution_matrix
from .hecke import GoodPrimeValues, coset_representatives, eigen_check, good_prime, hecke_T, hecke_T_check, hecke_U
from .inversion import (
    LValueRecord,
    LValueSums,
    TableSums,
    TwistedSums,
    family,
    level_modulus,
    level_of,
    symbol_coefficient,
)
from .partial import ForwardCheck, PartialSymbol

__all__ = [
    "ClassicalScalars",
    "CuspDivisor",
    "DualPoly",
    "ForwardCheck",
    "GoodPrimeValues",
    "LValueRecord",
    "LValueSums",
    "PadicScalars",
    "PartialSymbol",
    "TableSums",
    "TwistedSums",
    "centered_coefficients",
    "coset_representatives",
    "eigen_check",
    "family",
    "gamma_action",
    "good_prime",
    "hecke_T",
    "hecke_T_check",
    "hecke_U",
    "level_modulus",
    "level_of",
    "substitution_matrix",
    "symbol_coefficient",
]
