import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sharpbound.chebyshev import extremal_polynomial
from sharpbound.errors import ContractError, HypothesisViolation
from sharpbound.inequalities import (
    admissibility_check,
    bernstein_check,
    bound_constants,
    bound_report,
    carleson_constant,
    lax_check,
    random_complex_candidate,
    random_nonnegative_candidate,
    rs_pair_check,
)
from sharpbound.polycore import ComplexPoly
from sharpbound.transforms import CandidateInput, poly_g


def P_n(n):
    return (ComplexPoly.monomial(n) - ComplexPoly([1.0])) / 2


def p_n(n):
    return extremal_polynomial(n).to_complex_poly()


# Bernstein and Lax


@pytest.mark.parametrize("N", [1, 4, 9])
def test_bernstein_equality_for_monomial(N):
    cert = bernstein_check(ComplexPoly.monomial(N))
    assert cert.lhs == pytest.approx(N) and cert.rhs == pytest.approx(N)
    assert cert.holds


@pytest.mark.parametrize("n", [2, 6])
def test_bernstein_on_P_n(n):
    cert = bernstein_check(P_n(n))
    assert cert.lhs == pytest.approx(n / 2) and cert.rhs == pytest.approx(n)


def test_bernstein_rejects_constant():
    with pytest.raises(ContractError):
        bernstein_check(ComplexPoly([3.0]))


@pytest.mark.parametrize("n", range(1, 13))
def test_lax_equality_on_P_n(n):
    cert = lax_check(P_n(n))
    assert abs(cert.lhs - n / 2) <= 1e-9 and abs(cert.rhs - n / 2) <= 1e-9
    assert cert.holds


def test_lax_hypothesis_violation():
    with pytest.raises(HypothesisViolation):
        lax_check(ComplexPoly.monomial(3))


def test_lax_constant():
    cert = lax_check(ComplexPoly([1.0]))
    assert cert.lhs == 0 and cert.holds


def test_lax_accepts_multiple_circle_zero():
    # a triple zero at 1 splits by ~1e-5 under the eigenvalue solver
    assert lax_check(ComplexPoly.from_roots([1.0, 1.0, 1.0, -3.0])).holds


# RS pair inequality


def test_rs_pair_for_n1():
    g = ComplexPoly([-0.25, 0.5, -0.25])
    cert = rs_pair_check(g, 1)
    assert cert.rhs == 1
    assert cert.lhs >= 1 - 1e-12
    assert cert.holds


@pytest.mark.parametrize("n", [1, 3, 5])
def test_rs_pair_linear(n):
    g = ComplexPoly([0.3, 0.8 * n])
    cert = rs_pair_check(g, n)
    assert cert.lhs == pytest.approx((2 * n - 1) * 0.8 * n)
    assert cert.holds


@pytest.mark.parametrize("n", range(1, 9))
def test_rs_pair_at_one_on_extremal(n):
    # z = 1 with g'(1) = 0 gives 2|g''(1)| = n^2 <= n(2n-1)
    cert = rs_pair_check(poly_g(CandidateInput(p_n(n), n)), n)
    assert cert.lhs >= n * n - 1e-9
    assert cert.holds


def test_rs_pair_hypothesis():
    with pytest.raises(HypothesisViolation):
        rs_pair_check(ComplexPoly([0, 5.0]), 2)
    with pytest.raises(ContractError):
        rs_pair_check(ComplexPoly.monomial(6), 2)


# admissibility and reports


@pytest.mark.parametrize("n", range(1, 11))
def test_extremal_is_admissible_and_tight(n):
    adm = admissibility_check(CandidateInput(p_n(n), n))
    assert adm.admissible and adm.positive
    assert abs(adm.worst_margin) <= 1e-12


def test_constant_two_is_inadmissible():
    adm = admissibility_check(CandidateInput(ComplexPoly([2.0]), 1))
    assert not adm.admissible
    assert adm.worst_margin == pytest.approx(-1.0)


def test_zero_is_admissible_and_positive():
    adm = admissibility_check(CandidateInput(ComplexPoly([0.0]), 3))
    assert adm.admissible and adm.positive


def test_positive_none_when_not_required():
    adm = admissibility_check(CandidateInput(ComplexPoly([1.0]), 1), require_positive=False)
    assert adm.positive is None


def test_negative_candidate_not_positive():
    adm = admissibility_check(CandidateInput(ComplexPoly([0.5, -1.0]), 3))
    assert adm.positive is False


def test_bound_report_p3():
    rep = bound_report(CandidateInput(p_n(3), 3))
    assert rep.p0_modulus == 9
    assert rep.margins["sharp"] == 0
    assert rep.weak_bound == 15
    assert rep.nazarov_sodin_bound == pytest.approx(66.50, abs=5e-3)
    assert rep.naive_bound == 60
    assert rep.violations() == []


def test_bound_report_zero_and_n1():
    rep = bound_report(CandidateInput(ComplexPoly([0.0]), 4))
    assert rep.p0_modulus == 0 and all(m > 0 for m in rep.margins.values())
    rep1 = bound_report(CandidateInput(ComplexPoly([1.0]), 1))
    assert rep1.sharp_bound == rep1.weak_bound == 1


def test_bound_report_rotates_phase():
    p = p_n(3) * np.exp(0.4j)
    rep = bound_report(CandidateInput(p, 3))
    assert rep.phase == pytest.approx(0.4)
    assert rep.positive_on_halfline
    assert rep.p0_modulus == pytest.approx(9)


def test_violation_detected_for_inflated_extremal():
    p = p_n(3) * 1.01
    rep = bound_report(CandidateInput(p, 3))
    assert not rep.admissible
    assert rep.violations() == []


@pytest.mark.parametrize("n", range(1, 60))
def test_constant_ordering(n):
    k = bound_constants(n)
    assert k["sharp"] <= k["weak"] <= k["naive"]
    assert k["sharp"] <= k["nazarov_sodin"]


def test_carleson_constants():
    k = carleson_constant(1)
    assert k.new == 4 and k.scalar_sharp == 4
    assert k.old == pytest.approx(29.5562, abs=5e-5)
    k2 = carleson_constant(2)
    assert k2.new == 16 and k2.old == pytest.approx(118.22, abs=5e-3) and k2.scalar_sharp is None
    assert carleson_constant(10).new == 400
    with pytest.raises(ContractError):
        carleson_constant(0)


# random suites (the full-size runs live in the acceptance suite)


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_random_nonnegative_candidates_are_tight_and_bounded(n):
    rng = np.random.default_rng(n)
    for _ in range(25):
        c = random_nonnegative_candidate(n, rng)
        adm = admissibility_check(c)
        assert adm.admissible and adm.positive
        assert abs(adm.worst_margin) <= 1e-9
        rep = bound_report(c)
        assert rep.p0_modulus <= n * n + 1e-6
        assert rs_pair_check(poly_g(c), n).holds


@pytest.mark.parametrize("n", [1, 3, 6])
def test_random_complex_candidates_obey_weak_bound(n):
    rng = np.random.default_rng(50 + n)
    for _ in range(25):
        c = random_complex_candidate(n, rng)
        rep = bound_report(c)
        assert rep.admissible
        assert rep.p0_modulus <= 2 * n * n - n + 1e-6


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_rs_pair_for_complex_candidates_when_hypothesis_holds(n, seed):
    c = random_complex_candidate(n, np.random.default_rng(seed))
    try:
        cert = rs_pair_check(poly_g(c), n)
    except HypothesisViolation:
        return
    assert cert.holds
