"""Deterministic JSON, CSV and text renderings of a VerificationReport."""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction

from .core import CycloElement, PadicScalar
from .engine import InfraCheck, VerificationReport

CSV_COLUMNS = ("p", "precision", "num_odd_chi", "U1", "U2",
               "U2_check_floor", "fit_floor", "Cp_independence_floor")


def scalar_text(x: PadicScalar, digits: int) -> str:
    return str(x.truncate(digits))


def cyclo_text(x: CycloElement, digits: int) -> str:
    return str(x.truncate(digits))


def floor_text(f) -> str | None:
    """Floors are lower bounds on a residual's valuation."""
    if f is None or f == math.inf:
        return None
    if isinstance(f, Fraction):
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return str(int(f))


def _check(c: InfraCheck) -> dict:
    return {"name": c.name, "passed": c.passed, "floor": floor_text(c.floor),
            "threshold": floor_text(c.threshold), "detail": c.detail}


def _plain(x):
    """Fractions and floats inside convention records become strings."""
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, (Fraction, float)):
        return floor_text(x)
    return x


def to_dict(report: VerificationReport) -> dict:
    N = report.policy.target
    pol = report.policy
    cfg = report.config
    t = report.table

    v = {str(a): scalar_text(t.v_at(a), N) for a in range(1, t.prime)}
    L = {str(a): cyclo_text(t.L_at(a), N) for a in range(1, t.prime)}
    digest = hashlib.sha256(json.dumps([v, L], sort_keys=True).encode()).hexdigest()

    chars = []
    for s in report.characters:
        chars.append({
            "chi": str(s.character),
            "exponent": s.character.exponent,
            "Phi": scalar_text(s.Phi, N),
            "L0": scalar_text(s.L0, N),
            "LpValue": scalar_text(s.LpValue, N),
            "LpDeriv": scalar_text(s.LpDeriv, N),
            "PhiRen": scalar_text(s.PhiRen, N) if s.PhiRen is not None else None,
            "Cp": scalar_text(s.Cp, N) if s.Cp is not None else None,
            "Cp_nonrational_floor": floor_text(s.Cp_nonrational_floor),
        })

    c = report.constants
    constants = None
    if c is not None:
        constants = {
            "U1": scalar_text(c.U1, N),
            "U2": scalar_text(c.U2, N),
            "source_characters": [f"omega^{k}" for k in c.source_characters],
            "determinant_valuation": c.determinant_valuation,
            "fit_floors": {f"omega^{k}": floor_text(f) for k, f in c.fit_floors.items()},
            "U2_plus_p_v1_floor": floor_text(c.U2_prediction_floor),
            "Cp_per_chi": {f"omega^{k}": scalar_text(x, N) for k, x in c.Cp_per_chi.items()},
            "Cp_independence_floor": floor_text(c.Cp_independence_floor),
            "U1_plus_1_minus_p_Cp_floors": {f"omega^{k}": floor_text(f)
                                            for k, f in c.U1_prediction_floors.items()},
        }
    else:
        constants = {"determinable": False,
                     "reason": "fewer than two odd nontrivial characters"}

    r = report.renorm
    renorm = None
    if r is not None:
        renorm = {
            "ratios": {f"omega^{k}": scalar_text(x, N) for k, x in r.ratios.items()},
            "constancy_floor": floor_text(r.constancy_floor),
            "ratio_minus_U1_floors": {f"omega^{k}": floor_text(f)
                                      for k, f in r.U1_residual_floors.items()},
        }

    claims = report.claim_floors()
    return {
        "config": {
            "p": cfg.p, "N": pol.target, "G": pol.guard, "W": pol.working, "M": cfg.M,
            "strict": cfg.strict, "convention": cfg.convention, "seed": cfg.seed,
            "skip_gamma_check": cfg.skip_gamma_check,
            "claim_threshold": report.claim_threshold,
        },
        "conventions": _plain(report.conventions),
        "log_table": {"v": v, "L": L, "sha256": digest},
        "discrepancy": [{
            "a": d.a,
            "residual": cyclo_text(d.residual, N),
            "residual_zero_at_precision": d.residual_is_zero,
            "residual_floor": floor_text(d.residual_floor),
            "rational_floor": floor_text(d.rational_floor),
            "nonrational_floor": floor_text(d.nonrational_floor),
            "delta": cyclo_text(d.delta, N),
            "delta_minus_v_plus_w_floor": floor_text(d.delta_gap.floor()),
        } for d in report.discrepancy],
        "characters": chars,
        "constants": constants,
        "renorm": renorm,
        "infra_checks": {
            "all_passed": report.infra_passed(),
            "checks": [_check(x) for x in report.infra_checks],
            "measured_claim_floors": {k: floor_text(f) for k, f in claims.items()},
            "measured_claims_meet_threshold": report.claims_passed(),
        },
        "timings": {k: round(v, 6) for k, v in report.timings.items()},
    }


def to_json(report: VerificationReport) -> str:
    return json.dumps(to_dict(report), indent=2, sort_keys=False) + "\n"


def csv_row(report: VerificationReport) -> list[str]:
    N = report.policy.target
    c = report.constants
    if c is None:
        u1 = u2 = u2f = fit = cpi = "-"
    else:
        u1 = scalar_text(c.U1, N)
        u2 = scalar_text(c.U2, N)
        u2f = floor_text(c.U2_prediction_floor) or "-"
        fits = [f for f in c.fit_floors.values() if f is not None]
        fit = floor_text(min(fits)) if fits else "-"
        cpi = floor_text(c.Cp_independence_floor) or "-"
    return [str(report.config.p), str(N), str(report.num_odd_chi), u1, u2, u2f, fit, cpi]


def to_csv(reports: list[VerificationReport]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(csv_row(r)) for r in reports]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    lines = text.strip().splitlines()
    head = lines[0].split(",")
    return [dict(zip(head, ln.split(","))) for ln in lines[1:]]


def to_text(report: VerificationReport) -> str:
    d = to_dict(report)
    cfg = d["config"]
    out = [f"p = {cfg['p']}, N = {cfg['N']}, G = {cfg['G']}, M = {cfg['M']}, "
           f"odd characters = {report.num_odd_chi}"]
    out.append("infrastructure checks:")
    for c in d["infra_checks"]["checks"]:
        mark = "ok  " if c["passed"] else "FAIL"
        fl = f" floor >= {c['floor']}" if c["floor"] is not None else ""
        out.append(f"  {mark} {c['name']}{fl}")
    out.append("discrepancy residual floors:")
    for r in d["discrepancy"]:
        tag = "zero at precision, >=" if r["residual_zero_at_precision"] else "valuation"
        out.append(f"  a = {r['a']}: {tag} {r['residual_floor']} "
                   f"(rational {r['rational_floor']}, non-rational {r['nonrational_floor']})")
    if report.constants is not None:
        k = d["constants"]
        out.append(f"U1 = {k['U1']}")
        out.append(f"U2 = {k['U2']}")
        out.append(f"  from {', '.join(k['source_characters'])}, "
                   f"det valuation {k['determinant_valuation']}")
    else:
        out.append("constants: not determinable (one odd character)")
    out.append(f"measured claim floors (threshold {cfg['claim_threshold']}):")
    for name, f in d["infra_checks"]["measured_claim_floors"].items():
        out.append(f"  {name}: {f}")
    return "\n".join(out) + "\n"
