"""Tracked-precision p-adic arithmetic and a verification harness for
two-term relations between Gauss-sum logarithms, cyclotomic-unit
logarithms and Kubota–Leopoldt derivatives at s = 0."""

from .core import CycloElement, Jet, PadicScalar, PrecisionPolicy, parse_scalar
from .engine import ProtocolConfig, VerificationReport, run_protocol
from .lfun import DirichletCharacter, kubota_leopoldt
from .special import dwork_pi, gauss_sum, iwasawa_log, morita_gamma, teichmuller

__version__ = "0.1.0"

__all__ = [
    "CycloElement",
    "DirichletCharacter",
    "Jet",
    "PadicScalar",
    "PrecisionPolicy",
    "ProtocolConfig",
    "VerificationReport",
    "dwork_pi",
    "gauss_sum",
    "iwasawa_log",
    "kubota_leopoldt",
    "morita_gamma",
    "parse_scalar",
    "run_protocol",
    "teichmuller",
]
