"""Exact solution counting over finite fields with p-adic divisibility
certificates: value-set invariants of univariate polynomials, substituted
polynomial systems, theorem-backed guaranteed valuations, and truncated
p-adic verification of the supporting congruences."""

from .counting import (CountResult, SystemInstance, substituted_power_sum,
                       count_auto, count_bruteforce, count_diagonal,
                       count_system, count_weighted, ord_p, system)
from .gf import FieldCtx, field
from .multipoly import (IndexSet, MultiPoly, NEG_INFINITY, deg_I,
                        full_index_set, index_set, multipoly, reduce_function,
                        w_pI)
from .padic import (PadicCtx, padic_ctx, teichmuller_power_sum,
                    verify_lift_lemma, verify_unit_power, check_power_sum_closed_form)
from .theorems import (Guarantee, VerificationReport, all_guarantees,
                       best_guarantee, check_axkatz_general, check_main,
                       check_moreno_general, search_sharpness, verify)
from .unipoly import (FAnalysis, INF, UniPoly, WscClass, analyze,
                      reciprocal_derivative_sum, eval_map, monomial, phi_pair,
                      power_sum, u_invariant, unipoly, value_fibers,
                      wsc_classify)
from .weights import DigitProfile, digit_profile, digit_sum, omega_invariant, ord_p_factorial, p_weight

__version__ = "0.1.0"

__all__ = [
    "CountResult", "DigitProfile", "FAnalysis", "FieldCtx", "Guarantee",
    "INF", "IndexSet", "MultiPoly", "NEG_INFINITY", "PadicCtx",
    "SystemInstance", "UniPoly", "VerificationReport", "WscClass",
    "all_guarantees", "substituted_power_sum", "analyze", "reciprocal_derivative_sum",
    "best_guarantee", "check_axkatz_general", "check_main",
    "check_moreno_general", "count_auto", "count_bruteforce",
    "count_diagonal", "count_system", "count_weighted", "deg_I",
    "digit_profile", "digit_sum", "eval_map", "field", "full_index_set",
    "index_set", "monomial", "multipoly", "omega_invariant", "ord_p",
    "ord_p_factorial", "p_weight", "padic_ctx", "phi_pair", "power_sum",
    "reduce_function", "search_sharpness", "system", "u_invariant",
    "unipoly", "value_fibers", "verify", "verify_lift_lemma",
    "verify_unit_power", "w_pI", "wsc_classify", "check_power_sum_closed_form",
]
