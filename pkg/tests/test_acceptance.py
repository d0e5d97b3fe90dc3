"""Acceptance criteria 1-10.

Each criterion is a function returning a ``Verdict``; the pytest wrappers
assert on it and the terminal summary (see conftest.py) prints one PASS/FAIL
line per criterion.  Running this file directly prints the same lines.
"""

import math
import sys
import time
from dataclasses import dataclass

import numpy as np
import pytest

from oracles import extremal_coeffs_closed_form, halfline_sup
from sharpbound import chebyshev
from sharpbound.chebyshev import extremal_polynomial, zero_structure
from sharpbound.factorization import fejer_riesz, reconstruct
from sharpbound.inequalities import (
    bound_report,
    carleson_constant,
    lax_check,
    random_complex_candidate,
    random_nonnegative_candidate,
    rs_pair_check,
)
from sharpbound.polycore import (
    ComplexPoly,
    derivative,
    evaluate,
    max_coeff_distance,
    sup_modulus_on_circle,
)
from sharpbound.search import SearchConfig, extremal_lp
from sharpbound.transforms import CandidateInput, laurent_f, p0_from_f, p0_from_g, poly_g

SEED = 20240611
RESULTS: dict[int, "Verdict"] = {}


@dataclass
class Verdict:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {state}  {self.title}: {self.detail} [{self.seconds:.2f}s]"


def _record(number, title, passed, detail, start):
    v = Verdict(number, title, bool(passed), detail, time.perf_counter() - start)
    RESULTS[number] = v
    print(v.line())
    return v


def _P_n(n):
    return (ComplexPoly.monomial(n) - ComplexPoly([1.0])) / 2


def _normalized(P):
    P = P / np.linalg.norm(P.coeffs)
    return P * np.exp(-1j * np.angle(P.leading))


def _random_outside_poly(rng):
    degree = int(rng.integers(1, 13))
    mods = rng.uniform(1.0, 2.5, degree)
    args = rng.uniform(0.0, 2 * np.pi, degree)
    return _normalized(ComplexPoly.from_roots(mods * np.exp(1j * args)))


_factor_cache: list = []


def _roundtrip_factors():
    if not _factor_cache:
        rng = np.random.default_rng(SEED + 4)
        for _ in range(100):
            P = _random_outside_poly(rng)
            _factor_cache.append((P, fejer_riesz(reconstruct(P)).P))
    return _factor_cache


_suite_cache: dict = {}


def _real_suite():
    if "real" not in _suite_cache:
        rng = np.random.default_rng(SEED + 6)
        _suite_cache["real"] = [random_nonnegative_candidate(n, rng)
                                for n in range(1, 11) for _ in range(200)]
    return _suite_cache["real"]


def criterion_1():
    start = time.perf_counter()
    chebyshev._chebyshev_coeffs.cache_clear()
    chebyshev._extremal_coeffs.cache_clear()
    bad = []
    for n in range(1, 21):
        p = extremal_polynomial(n)
        want_deg = n - 1 if n % 2 else n - 2
        if p.coeffs[0] != n * n or p.degree != want_deg or p.denominator != 1:
            bad.append(n)
        if list(p.coeffs) != extremal_coeffs_closed_form(n):
            bad.append(n)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    return _record(1, "p_n(0) = n^2 exactly, parity degree, n = 1..20", ok,
                   f"mismatches {sorted(set(bad))}, runtime {elapsed:.3f}s < 1s", start)


def criterion_2():
    start = time.perf_counter()
    worst = 0.0
    for n in range(1, 13):
        c = CandidateInput(extremal_polynomial(n).to_complex_poly(), n)
        f = laurent_f(c)
        g = poly_g(c)
        P = fejer_riesz(f).P
        values = [
            complex(c.p.coeffs[0]),
            p0_from_f(f),
            p0_from_g(g),
            4 * abs(evaluate(derivative(P), 1.0)) ** 2,
        ]
        worst = max(worst, max(abs(v - n * n) / (n * n) for v in values))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 5.0
    return _record(2, "p(0) = -2f''(1) = -2g''(1) = 4|P'(1)|^2 = n^2, n = 1..12", ok,
                   f"max relative error {worst:.2e} <= 1e-8", start)


def criterion_3():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for n in range(1, 11):
        for _ in range(100):
            p = ComplexPoly(rng.normal(size=int(rng.integers(1, n + 1))))
            c = CandidateInput(p, n)
            circle = sup_modulus_on_circle(laurent_f(c)).value
            line = halfline_sup(p.coeffs, n)
            worst = max(worst, abs(circle - line) / max(1.0, line))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 30.0
    return _record(3, "sup|f| on circle = sup s|p(s)|/(1+s)^n, 1000 candidates", ok,
                   f"max discrepancy {worst:.2e} <= 1e-8", start)


def criterion_4():
    start = time.perf_counter()
    _factor_cache.clear()
    worst = max(max_coeff_distance(Q, P) for P, Q in _roundtrip_factors())
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-7 and elapsed < 30.0
    return _record(4, "Fejer-Riesz roundtrip, 100 random P of degree <= 12", ok,
                   f"max coefficient error {worst:.2e} <= 1e-7", start)


def criterion_5():
    start = time.perf_counter()
    failures = sum(not lax_check(Q).holds for _, Q in _roundtrip_factors())
    worst_eq = 0.0
    for n in range(1, 13):
        cert = lax_check(_P_n(n))
        worst_eq = max(worst_eq, abs(cert.lhs - n / 2), abs(cert.rhs - n / 2))
    ok = failures == 0 and worst_eq <= 1e-9
    return _record(5, "Lax inequality on factors, equality for (z^n-1)/2", ok,
                   f"{failures} failures on 100 factors, equality error {worst_eq:.2e} <= 1e-9", start)


def criterion_6():
    start = time.perf_counter()
    worst_real = -math.inf
    for c in _real_suite():
        rep = bound_report(c)
        if not (rep.admissible and rep.positive_on_halfline):
            worst_real = math.inf
            break
        worst_real = max(worst_real, rep.p0_modulus - c.n**2)
    rng = np.random.default_rng(SEED + 66)
    worst_complex = -math.inf
    for n in range(1, 11):
        for _ in range(200):
            c = random_complex_candidate(n, rng)
            rep = bound_report(c)
            if not rep.admissible:
                worst_complex = math.inf
                break
            worst_complex = max(worst_complex, rep.p0_modulus - (2 * n * n - n))
    elapsed = time.perf_counter() - start
    ok = worst_real <= 1e-6 and worst_complex <= 1e-6 and elapsed < 120.0
    return _record(6, "bound suites, 2000 real-nonnegative and 2000 complex candidates", ok,
                   f"max |p(0)| - n^2 = {worst_real:.2e}, max |p(0)| - (2n^2-n) = {worst_complex:.2e}",
                   start)


def criterion_7():
    start = time.perf_counter()
    failures = 0
    worst = 0.0
    for c in _real_suite():
        cert = rs_pair_check(poly_g(c), c.n)
        failures += not cert.holds
        worst = max(worst, cert.lhs / cert.rhs)
    return _record(7, "|g''| + |(2n-1)g' - zg''| <= n(2n-1) on the real suite", failures == 0,
                   f"{failures} failures in {len(_real_suite())}, max lhs/rhs {worst:.6f}", start)


def criterion_8():
    start = time.perf_counter()
    worst = 0.0
    converged = True
    for n in range(1, 9):
        res = extremal_lp(SearchConfig(n=n))
        converged &= res.converged
        worst = max(worst, abs(res.optimal_value - n * n) / (n * n))
        if n == 3:
            c3 = np.real(res.optimizer.coeffs)
            err3 = float(np.max(np.abs(c3 - [9, -6, 1]))) if c3.size == 3 else math.inf
    elapsed = time.perf_counter() - start
    ok = converged and worst <= 1e-3 and err3 <= 1e-3 and elapsed < 120.0
    return _record(8, "LP recovers n^2 for n = 1..8 and (9, -6, 1) at n = 3", ok,
                   f"converged={converged}, max |value - n^2|/n^2 = {worst:.2e}, "
                   f"n=3 coefficient error {err3:.2e}", start)


def criterion_9():
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 6, 8, 10):
        z = zero_structure(n, 1e-6)
        if not (z.all_double and z.all_positive_real):
            bad.append(n)
    return _record(9, "zeros of p_n are double and positive, n in {3,4,6,8,10}", not bad,
                   f"failing n: {bad}", start)


def criterion_10():
    start = time.perf_counter()
    k = carleson_constant(1)
    ok = k.new == 4 and k.scalar_sharp == 4 and round(k.old, 4) == 29.5562
    worst = max(abs(carleson_constant(d).old / carleson_constant(d).new - math.e**2)
                for d in range(1, 11))
    ok = ok and worst <= 1e-12
    return _record(10, "C(1) = {4, 4e^2}, old/new = e^2 for d = 1..10", ok,
                   f"4e^2 = {k.old:.6f}, max ratio error {worst:.1e} <= 1e-12", start)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    verdict = criterion()
    assert verdict.passed, verdict.line()


if __name__ == "__main__":
    verdicts = [c() for c in CRITERIA]
    sys.exit(0 if all(v.passed for v in verdicts) else 1)
