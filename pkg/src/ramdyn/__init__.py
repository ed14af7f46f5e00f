"""Iteration of power series over F_p and F_p((t)): ramification numbers,
closed-form iterate coefficients, p-adic double-factorial sums and Newton
polygons of periodic points."""

from .closed_form import lambda_, norm_bound, thmB_coeffs
from .errors import RamdynError
from .newton import check_corollary_C, check_theorem_A, periodic_valuations
from .padic_sums import SumFamily, eval_sum, reduce_family
from .parsing import parse_series
from .ramification import classify, profile, ram_number
from .recurrences import hat_induction_step, verify_main_lemma_symbolic
from .rings import FpElem, LaurentScalar
from .series import TruncatedSeries, compose, iterate_p_power, reduce_series

__version__ = "0.1.0"

__all__ = [
    "FpElem", "LaurentScalar", "RamdynError", "SumFamily", "TruncatedSeries",
    "check_corollary_C", "check_theorem_A", "classify", "compose", "eval_sum",
    "hat_induction_step", "iterate_p_power", "lambda_", "norm_bound", "parse_series",
    "periodic_valuations", "profile", "ram_number", "reduce_family", "reduce_series",
    "thmB_coeffs", "verify_main_lemma_symbolic",
]
