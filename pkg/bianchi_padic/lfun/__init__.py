"""Complex-analytic side: coefficients, Hecke L-values, critical values, periods and recognition."""

from .afe import AFEData, ComplexVal, afe_data, brute_force_lvalue, hecke_lvalue, reflection_pair
from .coefficients import (
    BianchiCoefficients,
    CoeffStream,
    bianchi_ideal_coefficient,
    coeffs_of_bianchi,
    dirichlet_convolve,
    divisors_of,
    hecke_stream,
    ideals_with_norm,
    stream_from_values,
)
from .katz import KatzValue, euler_cancellation, katz_euler_factor, katz_rhs, real_sqrt, target_conductor, z_factor
from .lambdas import (
    StabilizationData,
    completed_lambda,
    factor_characters,
    gamma_factor,
    stabilization,
    stabilization_factor,
    stabilized_lambda,
)
from .periods import Periods, cm_periods, curve_trace, normalization_constant, real_period
from .recognition import Recognition, rationalize, recognize

__all__ = [
    "AFEData",
    "BianchiCoefficients",
    "CoeffStream",
    "ComplexVal",
    "KatzValue",
    "Periods",
    "Recognition",
    "StabilizationData",
    "afe_data",
    "bianchi_ideal_coefficient",
    "brute_force_lvalue",
    "cm_periods",
    "coeffs_of_bianchi",
    "completed_lambda",
    "curve_trace",
    "dirichlet_convolve",
    "divisors_of",
    "euler_cancellation",
    "factor_characters",
    "gamma_factor",
    "hecke_lvalue",
    "hecke_stream",
    "ideals_with_norm",
    "katz_euler_factor",
    "katz_rhs",
    "normalization_constant",
    "rationalize",
    "real_period",
    "real_sqrt",
    "recognize",
    "reflection_pair",
    "stabilization",
    "stabilization_factor",
    "stabilized_lambda",
    "stream_from_values",
    "target_conductor",
    "z_factor",
]
