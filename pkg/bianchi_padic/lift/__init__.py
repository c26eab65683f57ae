"""Ordinary overconvergent lifting of partial Bianchi modular symbols."""

from .eigenlift import (
    EigenLifter,
    LiftCheck,
    LiftResult,
    LiftState,
    SweepRecord,
    default_moments,
    eigen_check,
    eigen_lift,
    initial_lift,
    measure_check,
    random_filler,
    uniqueness_check,
)
from .tree import PRIME, PRIME_BAR, DivisorTree, TreeNode

__all__ = [
    "DivisorTree",
    "EigenLifter",
    "LiftCheck",
    "LiftResult",
    "LiftState",
    "PRIME",
    "PRIME_BAR",
    "SweepRecord",
    "TreeNode",
    "default_moments",
    "eigen_check",
    "eigen_lift",
    "initial_lift",
    "measure_check",
    "random_filler",
    "uniqueness_check",
]
