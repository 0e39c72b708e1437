"""Exact verification of Kloosterman-moment and ternary-code identities
for the matrix groups SO(3, q), O(3, q) and Sp(2, q) over GF(3^r).

Everything is integer or rational arithmetic; no identity is ever checked
with a tolerance.
"""

from .charsums import (MomentTable, a_r_closed_form, a_r_sum, delta, delta_table,
                       kloosterman, kloosterman_all, kloosterman_gl,
                       kloosterman_gl_brute, moment_table, prop_e_check, salie_check)
from .codes import (WeightDistribution, code_dimension, code_length, dual_codeword,
                    dual_spectrum, dual_weight_formula, dual_weights, pless_check,
                    stirling2, weight_distribution_dp, weight_distribution_macwilliams)
from .eisenstein import CycInt, additive_char, zeta_pow
from .errors import FieldConfigError, UnsupportedScaleError, VerificationError
from .field import Field, default_modulus, is_irreducible
from .groups import (brute_force_orthogonal, check_gauss_sum, check_trace_spectrum,
                     closure_spot_check, coset_count, enumerate_group, gauss_sum,
                     gauss_sum_closed, group_order, iter_group, mat_mul, mat_trace,
                     q_binomial, trace_spectrum, trace_spectrum_closed)
from .moments import (RecursionReport, corollary_n, predict_t12sk, solve_sk,
                      theorem_a1, theorem_a2, theorem_l)

__version__ = "0.1.0"

__all__ = [
    "CycInt", "Field", "MomentTable", "RecursionReport", "WeightDistribution",
    "FieldConfigError", "UnsupportedScaleError", "VerificationError",
    "a_r_closed_form", "a_r_sum", "additive_char", "brute_force_orthogonal",
    "check_gauss_sum", "check_trace_spectrum", "closure_spot_check",
    "code_dimension", "code_length", "corollary_n", "coset_count",
    "default_modulus", "delta", "delta_table", "dual_codeword", "dual_spectrum",
    "dual_weight_formula", "dual_weights", "enumerate_group", "gauss_sum",
    "gauss_sum_closed", "group_order", "is_irreducible", "iter_group",
    "kloosterman", "kloosterman_all", "kloosterman_gl", "kloosterman_gl_brute",
    "mat_mul", "mat_trace", "moment_table", "pless_check", "predict_t12sk",
    "prop_e_check", "q_binomial", "salie_check", "solve_sk", "stirling2",
    "theorem_a1", "theorem_a2", "theorem_l", "trace_spectrum",
    "trace_spectrum_closed", "weight_distribution_dp",
    "weight_distribution_macwilliams", "zeta_pow",
]
