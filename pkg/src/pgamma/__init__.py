"""Exact p-adic arithmetic, q-adic factorials, and the generalized p-adic gamma function."""

from .factorial import (
    FactorialVariant,
    NormReport,
    WilsonVerdict,
    corollary_norms,
    factorial_p,
    factorial_p_mod,
    factorial_q,
    range_product,
    ratio_congruence,
    wilson_check,
)
from .gamma import *  # noqa: F401,F403
from .gamma import __all__ as _gamma_all
from .mahler import *  # noqa: F401,F403
from .mahler import __all__ as _mahler_all
from .padic import *  # noqa: F401,F403
from .padic import __all__ as _padic_all
from .series import FormalSeries
from .verify import DEFAULT_GRIDS, SUITES, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    *_padic_all,
    "FactorialVariant",
    "NormReport",
    "WilsonVerdict",
    "corollary_norms",
    "factorial_p",
    "factorial_p_mod",
    "factorial_q",
    "range_product",
    "ratio_congruence",
    "wilson_check",
    *_gamma_all,
    "FormalSeries",
    *_mahler_all,
    "DEFAULT_GRIDS",
    "SUITES",
    "VerificationReport",
    "run_suite",
]
