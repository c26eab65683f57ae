"""Exact cyclotomic arithmetic, capped p-adic numbers and the fixed embedding iota_p."""

from .cyclotomic import CycNum, cyclotomic_coefficients, euler_phi
from .embedding import PadicEmbedding, embed_padic, gauss_sqrt, kronecker, omega_polynomial
from .padic import PadicNum, hensel_root, p_valuation

__all__ = [
    "CycNum",
    "PadicEmbedding",
    "PadicNum",
    "cyclotomic_coefficients",
    "embed_padic",
    "euler_phi",
    "gauss_sqrt",
    "hensel_root",
    "kronecker",
    "omega_polynomial",
    "p_valuation",
]
