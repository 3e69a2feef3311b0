"""The verification protocol: log table, discrepancies, per-character data,
the 2x2 solve for (U1, U2), and the renormalized ratio.

Classical identities are checked as infrastructure oracles and must pass.
The two-term law and its consequences are only measured: every comparison
is published as a residual floor.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import CycloElement, PadicError, PadicScalar, PrecisionError, PrecisionPolicy
from .lfun import (
    DirichletCharacter,
    L_at_zero,
    check_odd_prime,
    chi_value,
    enumerate_odd_nontrivial,
    kubota_leopoldt,
)
from .special import (
    DEFAULT_GAMMA_COST_LIMIT,
    GaussConvention,
    LogTable,
    build_log_table,
    dwork_pi,
    find_gk_convention,
    gauss_sum,
    gk_log_residual,
    iwasawa_log,
    teichmuller_int,
)

DEFAULT_SEED = 20240607
MAX_DEFAULT_PRIME = 97


class SingularSystemError(PadicError):
    pass


class ZeroDerivativeError(PadicError):
    pass


class InfraFailure(PadicError):
    """An identity that holds unconditionally failed: a bug, not a finding."""


def scalar_floor(x: PadicScalar) -> int | None:
    """Valuation of a residual, or its floor when zero at precision."""
    if x.is_exact_zero:
        return None
    return x.valuation


def default_gamma_digits(p: int) -> int:
    if p == 5:
        return 6
    if p == 7:
        return 5
    m = 1
    while p ** (m + 1) <= 20000:
        m += 1
    return max(m, 2)


# -- records -------------------------------------------------------------------

@dataclass(frozen=True)
class DiscrepancyRecord:
    a: int
    residual: CycloElement      # v(a) - a v(1) - (1-p)(L_a - L_1)
    delta: CycloElement         # a v(1) + (2-p) L_a + (p-1) L_1
    delta_gap: CycloElement     # delta - (v(a) - w(a))
    consistency: CycloElement   # delta_gap + residual, identically zero

    @property
    def residual_floor(self) -> Fraction:
        return self.residual.floor()

    @property
    def residual_is_zero(self) -> bool:
        return self.residual.is_zero

    @property
    def rational_floor(self) -> int | float:
        return self.residual.coords[0].floor

    @property
    def nonrational_floor(self) -> int | float:
        return self.residual.nonscalar_floor()


@dataclass
class CharacterSummary:
    character: DirichletCharacter
    Phi: PadicScalar
    L0: PadicScalar
    LpValue: PadicScalar
    LpDeriv: PadicScalar
    Cp: PadicScalar | None = None
    Cp_nonrational_floor: int | float | None = None
    PhiRen: PadicScalar | None = None


@dataclass(frozen=True)
class ConstantsFit:
    U1: PadicScalar
    U2: PadicScalar
    determinant: PadicScalar
    pair: tuple[int, int]

    @property
    def determinant_valuation(self) -> int:
        return self.determinant.valuation


@dataclass
class ConstantsRecord:
    U1: PadicScalar
    U2: PadicScalar
    source_characters: tuple[int, int]
    determinant_valuation: int
    fit_floors: dict[int, int | None]
    U2_prediction_floor: int | None
    Cp_per_chi: dict[int, PadicScalar]
    Cp_independence_floor: int | None
    U1_prediction_floors: dict[int, int | None]


@dataclass
class RenormResult:
    ratios: dict[int, PadicScalar]
    constancy_floor: int | None
    U1_residual_floors: dict[int, int | None]


@dataclass
class InfraCheck:
    name: str
    passed: bool
    floor: int | float | Fraction | None
    threshold: int | float | Fraction | None
    detail: str = ""


@dataclass(frozen=True)
class ProtocolConfig:
    p: int
    digits: int = 100
    guard: int | None = None
    gamma_digits: int | None = None
    strict: bool = False
    convention: str = "standard"
    seed: int = DEFAULT_SEED
    skip_gamma_check: bool = False
    gamma_cost_limit: int = DEFAULT_GAMMA_COST_LIMIT
    record_timings: bool = False

    def validate(self) -> None:
        check_odd_prime(self.p)
        if self.p > MAX_DEFAULT_PRIME and not self.skip_gamma_check:
            raise ValueError(f"p > {MAX_DEFAULT_PRIME} needs skip_gamma_check")
        GaussConvention.parse(self.convention)
        self.policy()

    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy.for_prime(self.p, self.digits, self.guard)

    @property
    def M(self) -> int:
        return self.gamma_digits if self.gamma_digits is not None else default_gamma_digits(self.p)


@dataclass
class VerificationReport:
    config: ProtocolConfig
    policy: PrecisionPolicy
    conventions: dict
    table: LogTable
    discrepancy: list[DiscrepancyRecord]
    characters: list[CharacterSummary]
    constants: ConstantsRecord | None
    renorm: RenormResult | None
    infra_checks: list[InfraCheck]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def num_odd_chi(self) -> int:
        return len(self.characters)

    @property
    def claim_threshold(self) -> int:
        return self.policy.target - self.policy.guard

    def claim_floors(self) -> dict[str, int | Fraction | None]:
        """Residual floors of the measured (not presumed) identities."""
        out: dict[str, int | Fraction | None] = {}
        for rec in self.discrepancy:
            if rec.a >= 2:
                out[f"discrepancy[a={rec.a}]"] = rec.residual_floor
        c = self.constants
        if c is not None:
            for k, f in c.fit_floors.items():
                out[f"fit[omega^{k}]"] = f
            out["U2_prediction"] = c.U2_prediction_floor
            out["Cp_independence"] = c.Cp_independence_floor
            for k, f in c.U1_prediction_floors.items():
                out[f"U1_prediction[omega^{k}]"] = f
        if self.renorm is not None:
            out["renorm_constancy"] = self.renorm.constancy_floor
        return out

    def infra_passed(self) -> bool:
        return all(c.passed for c in self.infra_checks)

    def claims_passed(self) -> bool:
        t = self.claim_threshold
        return all(f is None or f >= t for f in self.claim_floors().values())

    def exit_code(self) -> int:
        if not self.infra_passed():
            return 2
        if self.config.strict and not self.claims_passed():
            return 3
        return 0


# -- protocol steps ------------------------------------------------------------

def discrepancy_scan(table: LogTable, policy: PrecisionPolicy) -> list[DiscrepancyRecord]:
    p = table.prime
    v1 = table.v_at(1)
    L1 = table.L_at(1)
    out = []
    for a in range(1, p):
        va = table.v_at(a)
        La = table.L_at(a)
        resid = CycloElement.from_scalar(va - v1 * a) - (La - L1) * (1 - p)
        delta = CycloElement.from_scalar(v1 * a) + La * (2 - p) + L1 * (p - 1)
        gap = delta - (CycloElement.from_scalar(va) - table.w[a - 1])
        out.append(DiscrepancyRecord(a, resid, delta, gap, gap + resid))
    return out


def phi(chi: DirichletCharacter, table: LogTable, policy: PrecisionPolicy) -> PadicScalar:
    """Phi_p(chi) = sum_a chi(a) v(a)."""
    total = None
    for a in range(1, table.prime):
        t = chi_value(chi, a, policy) * table.v_at(a)
        total = t if total is None else total + t
    return total


def phi_paired(chi: DirichletCharacter, table: LogTable, policy: PrecisionPolicy) -> PadicScalar:
    """Phi_p(chi) rebuilt from v(a) = -v(p-1-a); only a < (p-1)/2 is read."""
    p = table.prime
    total = PadicScalar.zero_at(p, policy.working)
    for a in range(1, (p - 1) // 2):
        w = chi_value(chi, a, policy) - chi_value(chi, p - 1 - a, policy)
        total = total + w * table.v_at(a)
    return total


def summarize(chi: DirichletCharacter, table: LogTable, policy: PrecisionPolicy) -> CharacterSummary:
    jet = kubota_leopoldt(chi, 0, policy, check=False)
    return CharacterSummary(chi, phi(chi, table, policy), L_at_zero(chi, policy),
                            jet.value, jet.deriv)


def solve_constants(s1: CharacterSummary, s2: CharacterSummary) -> ConstantsFit:
    """Cramer's rule for Phi = U1 L' + U2 L(0) on two characters."""
    if s1.character == s2.character:
        raise SingularSystemError("the two characters coincide")
    det = s1.LpDeriv * s2.L0 - s2.LpDeriv * s1.L0
    if det.is_zero:
        raise SingularSystemError(f"determinant is zero at precision {det.floor}")
    U1 = (s1.Phi * s2.L0 - s2.Phi * s1.L0) / det
    U2 = (s1.LpDeriv * s2.Phi - s2.LpDeriv * s1.Phi) / det
    return ConstantsFit(U1, U2, det, (s1.character.exponent, s2.character.exponent))


def solve_auto(summaries: list[CharacterSummary]) -> ConstantsFit:
    """The pair with the smallest determinant valuation, ties lexicographic."""
    best = None
    for s1, s2 in itertools.combinations(summaries, 2):
        try:
            fit = solve_constants(s1, s2)
        except SingularSystemError:
            continue
        if best is None or fit.determinant_valuation < best.determinant_valuation:
            best = fit
    if best is None:
        raise SingularSystemError("every character pair is singular at precision")
    return best


def recover_cp(chi: DirichletCharacter, table: LogTable, lp_deriv: PadicScalar,
               policy: PrecisionPolicy) -> tuple[PadicScalar, int | float]:
    """C_p(chi) = -(sum_a chi(a) L_a) / L'_p(0, chi), from the scalar coordinate.

    Also returns the floor of the non-scalar coordinates of the numerator.
    """
    if lp_deriv.is_zero:
        raise ZeroDerivativeError(f"L'_p(0, {chi}) is zero at precision")
    num = None
    for a in range(1, table.prime):
        t = table.L_at(a) * chi_value(chi, a, policy)
        num = t if num is None else num + t
    return -num.scalar_part() / lp_deriv, num.nonscalar_floor()


def renorm_check(summaries: list[CharacterSummary], U1: PadicScalar,
                 U2: PadicScalar) -> RenormResult:
    ratios = {}
    for s in summaries:
        if s.LpDeriv.is_zero:
            raise ZeroDerivativeError(f"L'_p(0, {s.character}) is zero at precision")
        s.PhiRen = s.Phi - U2 * s.L0
        ratios[s.character.exponent] = s.PhiRen / s.LpDeriv
    vals = list(ratios.values())
    floors = [scalar_floor(x - y) for x, y in itertools.combinations(vals, 2)]
    floors = [f for f in floors if f is not None]
    return RenormResult(ratios, min(floors) if floors else None,
                        {k: scalar_floor(r - U1) for k, r in ratios.items()})


def _pairwise_floor(values) -> int | None:
    floors = [scalar_floor(x - y) for x, y in itertools.combinations(values, 2)]
    floors = [f for f in floors if f is not None]
    return min(floors) if floors else None


# -- infrastructure oracles ----------------------------------------------------

def _zero_check(name: str, x, threshold, detail: str = "") -> InfraCheck:
    if isinstance(x, CycloElement):
        ok = x.is_zero
        f = x.floor() if ok or not x.is_zero else None
    else:
        ok = x.is_zero
        f = x.floor
    f = None if f == math.inf else f
    return InfraCheck(name, bool(ok and (f is None or f >= threshold)), f, threshold, detail)


def _min_check(name: str, checks: list[InfraCheck], threshold, detail: str = "") -> InfraCheck:
    floors = [c.floor for c in checks if c.floor is not None]
    return InfraCheck(name, all(c.passed for c in checks),
                      min(floors) if floors else None, threshold, detail)


def infra_checks(table: LogTable, records: list[DiscrepancyRecord],
                 summaries: list[CharacterSummary], policy: PrecisionPolicy) -> list[InfraCheck]:
    p, W = policy.prime, policy.working
    thr = policy.target - policy.guard
    checks = []

    mod = p ** W
    ok = True
    for u in range(1, p):
        w = teichmuller_int(u, p, W)
        ok &= pow(w, p - 1, mod) == 1 and w % p == u
        for u2 in range(1, p):
            ok &= w * teichmuller_int(u2, p, W) % mod == teichmuller_int(u * u2 % p, p, W)
    checks.append(InfraCheck("teichmuller_power_congruence_multiplicativity", ok, W, W))

    pi = dwork_pi(policy).pi
    c1 = _zero_check("dwork_pi_power", pi ** (p - 1) + p, thr)
    c2 = _zero_check("dwork_pi_log", iwasawa_log(pi, policy), thr)
    val_ok = pi.valuation() == Fraction(1, p - 1)
    checks.append(_min_check("dwork_uniformizer", [c1, c2, InfraCheck("v", val_ok, None, None)],
                             thr, "pi^(p-1) + p = 0, log pi = 0, val pi = 1/(p-1)"))

    bad = [a for a in range(1, p - 1)
           if gauss_sum(a, policy).valuation() != Fraction(a, p - 1)]
    checks.append(InfraCheck("stickelberger_valuations", not bad, None, None,
                             f"mismatches at a={bad}" if bad else "val tau = a/(p-1), a <= p-2"))

    sub = [_zero_check("v(p-1)", table.v_at(p - 1), thr),
           _zero_check("v((p-1)/2)", table.v_at((p - 1) // 2), thr)]
    checks.append(_min_check("v_vanishing", sub, thr, "v(p-1) = v((p-1)/2) = 0"))

    sub = [_zero_check(f"pair{a}", table.v_at(a) + table.v_at(p - 1 - a), thr)
           for a in range(1, p - 1)]
    checks.append(_min_check("gauss_sum_pairing", sub, thr, "v(a) + v(p-1-a) = 0"))

    total = table.L[0]
    for x in table.L[1:]:
        total = total + x
    checks.append(_zero_check("cyclotomic_log_sum", total, thr, "sum_a L_a = 0"))
    sub = [_zero_check(f"sym{a}", table.L_at(p - a) - table.L_at(a), thr) for a in range(1, p)]
    checks.append(_min_check("cyclotomic_log_symmetry", sub, thr, "L_(p-a) = L_a"))

    checks.append(_zero_check("discrepancy_r1", records[0].residual, thr, "r(1) = 0"))
    sub = [_zero_check(f"form{r.a}", r.consistency, thr) for r in records]
    checks.append(_min_check("discrepancy_forms_consistent", sub, thr,
                             "[delta(a) - (v(a) - w(a))] + r(a) = 0"))

    sub = []
    for s in summaries:
        sub.append(_zero_check(f"L0[{s.character}]", s.LpValue - s.L0, thr))
    checks.append(_min_check("kubota_leopoldt_value_vs_L0", sub, thr,
                             "L_p(0, chi omega) = L(0, chi)"))

    sub = [_zero_check(f"paired[{s.character}]", s.Phi - phi_paired(s.character, table, policy),
                       thr) for s in summaries]
    checks.append(_min_check("phi_paired_recomputation", sub, thr,
                             "Phi via v(a) = -v(p-1-a) matches the direct sum"))
    return checks


def gamma_checks(table: LogTable, config: ProtocolConfig, policy: PrecisionPolicy):
    """Gross–Koblitz at M digits: log level for every a, multiplicative a <= p-2."""
    p, M = policy.prime, config.M
    preferred = GaussConvention.parse(config.convention)
    sub = [_zero_check(f"a={a}", gk_log_residual(a, M, policy, preferred, table.v_at(a),
                                                  config.gamma_cost_limit), M)
           for a in range(1, p)]
    log_check = _min_check("gross_koblitz_log_level", sub, M,
                           "v(a) = log Gamma_p(a/(p-1)), 1 <= a <= p-1")
    conv, attempts = find_gk_convention(M, policy, preferred, config.gamma_cost_limit)
    summary = [{"convention": a["convention"], "passed": a["passed"],
                "worst_floor": a["worst_floor"]} for a in attempts]
    worst = attempts[-1]["worst_floor"]
    mult = InfraCheck("gross_koblitz_multiplicative", conv is not None, worst, M,
                      f"tau(omega^-a) = -pi^a Gamma_p(a/(p-1)), 1 <= a <= {p - 2}; "
                      f"validated convention: {conv}")
    return [log_check, mult], summary, (str(conv) if conv is not None else None)


# -- driver --------------------------------------------------------------------

def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def run_protocol(config: ProtocolConfig, threads: int = 1) -> VerificationReport:
    config.validate()
    policy = config.policy()
    p = config.p
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = now - clock
        clock = now

    convention = GaussConvention.parse(config.convention)
    # steps 1-2: branch fixed inside iwasawa_log; v-table from Gauss sums
    table = build_log_table(policy, convention, threads)
    lap("log_table")
    # step 3
    records = discrepancy_scan(table, policy)
    lap("discrepancy")
    # step 4
    chars = enumerate_odd_nontrivial(p)
    summaries = _map(lambda c: summarize(c, table, policy), chars, threads)
    for s in summaries:
        if not s.LpDeriv.is_zero:
            s.Cp, s.Cp_nonrational_floor = recover_cp(s.character, table, s.LpDeriv, policy)
    lap("characters")
    # step 5
    constants = None
    renorm = None
    if len(summaries) >= 2:
        fit = solve_auto(summaries)
        fits = {s.character.exponent: scalar_floor(s.Phi - fit.U1 * s.LpDeriv - fit.U2 * s.L0)
                for s in summaries if s.character.exponent not in fit.pair}
        cps = {s.character.exponent: s.Cp for s in summaries if s.Cp is not None}
        constants = ConstantsRecord(
            U1=fit.U1, U2=fit.U2, source_characters=fit.pair,
            determinant_valuation=fit.determinant_valuation,
            fit_floors=fits,
            U2_prediction_floor=scalar_floor(fit.U2 + table.v_at(1) * p),
            Cp_per_chi=cps,
            Cp_independence_floor=_pairwise_floor(list(cps.values())),
            U1_prediction_floors={k: scalar_floor(fit.U1 + c * (1 - p)) for k, c in cps.items()},
        )
        lap("constants")
        # step 6
        renorm = renorm_check(summaries, fit.U1, fit.U2)
        lap("renorm")

    checks = infra_checks(table, records, summaries, policy)
    conventions = {
        "log_branch": "Iwasawa: log_p(p) = 0, log_p(roots of unity) = 0",
        "gauss_sum": convention.describe(),
        "gauss_sum_selected": str(convention),
        "teichmuller": "omega(a) = lim a^(p^n), omega(a) = a mod p",
        "gamma_argument": "a/(p-1) read as a*(p-1)^-1 mod p^M",
        "L_prime": "L'_p(0, chi) := d/ds L_p(s, chi*omega) at s = 0 (Kubota-Leopoldt, F = p)",
        "L0": "L(0, chi) = -(1/p) sum_a a chi(a)",
        "gk_multiplicative_range": "1 <= a <= p-2; at a = p-1 only the log-level identity holds",
        "residual_floors": "valuation of a residual, or '>=' floor when zero at precision",
    }
    if not config.skip_gamma_check:
        gk, attempts, validated = gamma_checks(table, config, policy)
        checks.extend(gk)
        conventions["gk_attempts"] = attempts
        conventions["gk_validated"] = validated
    else:
        checks.append(InfraCheck("gross_koblitz", True, None, None, "skipped by request"))
    lap("infra_checks")

    return VerificationReport(config, policy, conventions, table, records, summaries,
                              constants, renorm, checks,
                              timings if config.record_timings else {})
