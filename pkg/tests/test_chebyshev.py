import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import extremal_coeffs_closed_form
from sharpbound.chebyshev import (
    ExactPoly,
    chebyshev_t,
    cluster_roots,
    dyadic_integers,
    extremal_polynomial,
    extremal_value,
    homogeneous_combination,
    zero_structure,
)
from sharpbound.errors import ContractError


def test_chebyshev_small():
    assert chebyshev_t(0).coeffs == (1,)
    assert chebyshev_t(1).coeffs == (0, 1)
    assert chebyshev_t(3).coeffs == (0, -3, 0, 4)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 15, 30])
def test_chebyshev_is_cosine(n):
    T = chebyshev_t(n)
    # exact rational evaluation; float monomial sums lose ~2^n digits at n = 30
    vals = np.array([float(T(x)) for x in np.linspace(-1.0, 1.0, 200)])
    assert np.max(np.abs(vals)) <= 1 + 1e-12
    theta = np.linspace(0.0, np.pi, 200)
    on_cos = np.array([float(T(x)) for x in np.cos(theta)])
    assert np.allclose(on_cos, np.cos(n * theta), atol=1e-10)


def test_exact_poly_normalizes():
    p = ExactPoly((4, 2, 0, 0), 2)
    assert p.coeffs == (2, 1)
    assert p.denominator == 1
    assert p.degree == 1


def test_exact_poly_rejects_floats():
    with pytest.raises(ContractError):
        ExactPoly((1.5, 2))


@pytest.mark.parametrize("n, expected", [(1, (1,)), (3, (9, -6, 1)), (4, (16, -32, 16))])
def test_extremal_small(n, expected):
    assert extremal_polynomial(n).coeffs == expected


@pytest.mark.parametrize("n", range(1, 31))
def test_extremal_matches_binomial_closed_form(n):
    p = extremal_polynomial(n)
    assert p.denominator == 1
    assert list(p.coeffs) == extremal_coeffs_closed_form(n)


@pytest.mark.parametrize("n", range(1, 31))
def test_extremal_constant_and_degree(n):
    p = extremal_polynomial(n)
    assert p.coeffs[0] == n * n
    assert p.degree == (n - 1 if n % 2 else n - 2)


def test_extremal_value():
    assert extremal_value(1) == 1
    assert extremal_value(3) == 9
    assert extremal_value(12) == 144


def test_extremal_rejects_nonpositive():
    with pytest.raises(ContractError):
        extremal_polynomial(0)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11, 20])
def test_extremal_normalized_form(n):
    p = extremal_polynomial(n).to_floats().real
    theta = np.linspace(1e-3, np.pi - 1e-3, 4096)
    s = np.tan(theta / 2) ** 2
    lhs = s * np.polynomial.polynomial.polyval(s, p) / (1 + s) ** n
    T = chebyshev_t(n).to_floats().real
    rhs = (1 - np.polynomial.polynomial.polyval((1 - s) / (1 + s), T)) / 2
    assert np.allclose(lhs, rhs, atol=1e-9)
    assert lhs.min() >= -1e-12
    assert lhs.max() <= 1 + 1e-10
    assert lhs.max() == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 13])
def test_extremal_nonnegative_on_halfline(n):
    p = extremal_polynomial(n)
    for s in np.linspace(0.0, 50.0, 1001):
        assert float(p(s)) >= -1e-12


def test_extremal_runtime():
    start = time.perf_counter()
    for n in range(1, 21):
        extremal_polynomial(n)
    assert time.perf_counter() - start < 1.0


def test_homogeneous_combination_binomial():
    # sum_k C(3,k) a^k b^(3-k) = (a+b)^3 with a = 1, b = z
    out = homogeneous_combination([1, 3, 3, 1], [1, 0], [0, 1])
    assert out == [1, 3, 3, 1]


@settings(max_examples=50)
@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=8))
def test_dyadic_integers_exact(values):
    ints, D = dyadic_integers(values)
    assert D & (D - 1) == 0
    assert all(i / D == v for i, v in zip(ints, values))


@pytest.mark.parametrize("n, root", [(3, 3.0), (4, 1.0)])
def test_zero_structure_small(n, root):
    z = zero_structure(n)
    assert z.all_positive_real and z.all_double
    assert np.allclose(z.roots, [root, root], atol=1e-6)


@pytest.mark.parametrize("n", [3, 4, 6, 8, 10])
def test_zero_structure_double_positive(n):
    z = zero_structure(n, 1e-6)
    assert z.all_positive_real
    assert z.all_double
    assert len(z.clusters) == extremal_polynomial(n).degree // 2


@pytest.mark.parametrize("n", [1, 2])
def test_zero_structure_needs_roots(n):
    with pytest.raises(ContractError):
        zero_structure(n)


def test_cluster_roots_groups():
    out = cluster_roots(np.array([1.0, 1.0 + 1e-9, 5.0]), 1e-6)
    assert [m for _, m in out] == [2, 1]
    assert math.isclose(out[0][0].real, 1.0, rel_tol=1e-8)
