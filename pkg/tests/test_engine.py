import json

import pytest

from padic_twoterm import report as rep
from padic_twoterm.core import PadicScalar, PrecisionPolicy
from padic_twoterm.engine import (
    CharacterSummary,
    ProtocolConfig,
    SingularSystemError,
    ZeroDerivativeError,
    default_gamma_digits,
    recover_cp,
    renorm_check,
    run_protocol,
    solve_auto,
    solve_constants,
)
from padic_twoterm.lfun import DirichletCharacter, OutOfScopeError, enumerate_odd_nontrivial
from padic_twoterm.special import build_log_table


def rand_scalar(rng, p, W, vmin=-1, vmax=2):
    return PadicScalar(p, rng.randint(vmin, vmax), rng.randrange(1, p ** W) // p * p + rng.randrange(1, p), W)


def synthetic(rng, p, N):
    """Summaries satisfying Phi = U1 L' + U2 L0 exactly."""
    P = PrecisionPolicy.for_prime(p, N)
    W = P.working
    U1, U2 = rand_scalar(rng, p, W), rand_scalar(rng, p, W)
    out = []
    for chi in enumerate_odd_nontrivial(p):
        L0, Ld = rand_scalar(rng, p, W), rand_scalar(rng, p, W)
        out.append(CharacterSummary(chi, U1 * Ld + U2 * L0, L0, L0, Ld))
    return U1, U2, out


@pytest.mark.parametrize("p", [5, 7, 11])
def test_synthetic_recovery(p, rng):
    N = 60
    for _ in range(20):
        U1, U2, sums = synthetic(rng, p, N)
        fit = solve_auto(sums)
        bound = N - fit.determinant_valuation - 2
        assert (fit.U1 - U1).floor >= bound
        assert (fit.U2 - U2).floor >= bound
        r = renorm_check(sums, fit.U1, fit.U2)
        assert r.constancy_floor is None or r.constancy_floor >= bound


def test_singular_pairs(rng):
    _, _, sums = synthetic(rng, 7, 30)
    with pytest.raises(SingularSystemError):
        solve_constants(sums[0], sums[0])
    a, b = sums[0], sums[1]
    twin = CharacterSummary(b.character, a.Phi * 2, a.L0 * 2, a.L0, a.LpDeriv * 2)
    with pytest.raises(SingularSystemError):
        solve_constants(a, twin)


def test_pair_selection_prefers_small_determinant(rng):
    _, _, sums = synthetic(rng, 7, 40)
    fit = solve_auto(sums)
    for i in range(3):
        for j in range(i + 1, 3):
            other = solve_constants(sums[i], sums[j])
            assert fit.determinant_valuation <= other.determinant_valuation


def test_zero_derivative_errors():
    P = PrecisionPolicy.for_prime(5, 30)
    table = build_log_table(P)
    chi = DirichletCharacter(5, 1)
    with pytest.raises(ZeroDerivativeError):
        recover_cp(chi, table, PadicScalar.zero_at(5, 40), P)


def test_config_validation():
    with pytest.raises(OutOfScopeError):
        run_protocol(ProtocolConfig(2))
    with pytest.raises(ValueError):
        ProtocolConfig(101).validate()
    ProtocolConfig(101, skip_gamma_check=True).validate()
    assert default_gamma_digits(5) == 6 and default_gamma_digits(7) == 5
    assert 11 ** default_gamma_digits(11) <= 20000


@pytest.fixture(scope="module")
def report5():
    return run_protocol(ProtocolConfig(5, digits=60))


def test_report_structure(report5):
    d = rep.to_dict(report5)
    assert list(d) == ["config", "conventions", "log_table", "discrepancy", "characters",
                       "constants", "renorm", "infra_checks", "timings"]
    assert d["config"]["p"] == 5 and len(d["characters"]) == 2
    assert d["timings"] == {}
    assert report5.infra_passed()
    r1 = d["discrepancy"][0]
    assert r1["a"] == 1 and r1["residual_zero_at_precision"]


def test_determinism_across_threads():
    a = rep.to_json(run_protocol(ProtocolConfig(7, digits=50)))
    b = rep.to_json(run_protocol(ProtocolConfig(7, digits=50), threads=4))
    assert a == b


def test_csv_matches_json(report5):
    row = rep.parse_csv(rep.to_csv([report5]))[0]
    d = rep.to_dict(report5)
    assert row["p"] == "5" and row["precision"] == "60" and row["num_odd_chi"] == "2"
    assert row["U1"] == d["constants"]["U1"] and row["U2"] == d["constants"]["U2"]
    assert row["U2_check_floor"] == d["constants"]["U2_plus_p_v1_floor"]
    assert row["Cp_independence_floor"] == d["constants"]["Cp_independence_floor"]


def test_p3_has_no_constants():
    r = run_protocol(ProtocolConfig(3, digits=30))
    assert r.constants is None and r.infra_passed()
    assert rep.to_csv([r]).splitlines()[1].startswith("3,30,1,-,-")


def test_odd_characters_have_vanishing_cp(report5):
    # sum_a chi(a) L_a vanishes for odd chi, since L_(p-a) = L_a
    for s in report5.characters:
        assert s.Cp.is_zero


def test_strict_exit_code():
    r = run_protocol(ProtocolConfig(5, digits=40, strict=True))
    assert r.exit_code() == (0 if r.claims_passed() else 3)
    r = run_protocol(ProtocolConfig(5, digits=40))
    assert r.exit_code() == 0
