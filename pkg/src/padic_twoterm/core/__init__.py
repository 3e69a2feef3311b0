"""Tracked-precision arithmetic over Q_p and Q_p(zeta_p), plus jets."""

from .cyclo import CycloElement, solve_linear
from .jet import DomainError, Jet, exp_series, jet_exp, jet_log, log_series
from .scalar import (
    PadicError,
    PadicScalar,
    PrecisionError,
    PrecisionPolicy,
    PrimeMismatchError,
    parse_scalar,
    valuation_int,
    valuation_rational,
)

__all__ = [
    "CycloElement",
    "DomainError",
    "Jet",
    "PadicError",
    "PadicScalar",
    "PrecisionError",
    "PrecisionPolicy",
    "PrimeMismatchError",
    "exp_series",
    "jet_exp",
    "jet_log",
    "log_series",
    "parse_scalar",
    "solve_linear",
    "valuation_int",
    "valuation_rational",
]
