"""Exact integer Chebyshev polynomials and the extremal polynomial p_n.

    p_n(s) = (s + 1)^n / (2 s) * (1 - T_n((1 - s) / (1 + s)))

has a removable singularity at s = 0.  The numerator is built with integer
coefficients and divided by ``2 s`` exactly, so no cancellation ever happens in
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, ContractError
from .polycore import ComplexPoly, roots as poly_roots

DEFAULT_CLUSTER_TOL = 1e-6


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c or [0]


@dataclass(frozen=True)
class ExactPoly:
    """Polynomial ``sum(coeffs[k] * x**k) / denominator`` with integer data.

    Normalized on construction: trailing zeros removed, denominator positive and
    coprime to the coefficients.
    """

    coeffs: tuple
    denominator: int = 1

    def __post_init__(self):
        if any(not isinstance(v, (int, np.integer)) for v in self.coeffs):
            raise ContractError("ExactPoly coefficients must be integers")
        c = [int(v) for v in self.coeffs]
        d = int(self.denominator)
        if d == 0:
            raise ContractError("denominator must be nonzero")
        if d < 0:
            c, d = [-v for v in c], -d
        c = _trim(c)
        g = math.gcd(d, *c)
        if g > 1:
            c, d = [v // g for v in c], d // g
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "denominator", d)

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Exact evaluation at an integer or Fraction (floats are converted exactly)."""
        x = Fraction(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc / self.denominator

    def to_floats(self) -> np.ndarray:
        """Float coefficients; raises OverflowError if a coefficient exceeds the double range."""
        return np.array([v / self.denominator for v in self.coeffs], dtype=float)

    def to_complex_poly(self) -> ComplexPoly:
        return ComplexPoly(self.to_floats())


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def homogeneous_combination(weights: Sequence[int], a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Integer coefficients of ``sum_k weights[k] * a**k * b**(N - k)``, N = len(weights) - 1.

    Evaluated by a homogeneous Horner scheme, O(N^2) big-integer operations.
    ``a`` and ``b`` must have the same length.
    """
    if len(a) != len(b):
        raise ContractError("homogeneous_combination needs equal-degree factors")
    N = len(weights) - 1
    acc = [int(weights[N])]
    b_pow = [1]
    for i in range(1, N + 1):
        b_pow = poly_mul(b_pow, b)
        acc = poly_mul(acc, a)
        w = int(weights[N - i])
        if w:
            for j, v in enumerate(b_pow):
                acc[j] += w * v
    return acc


@lru_cache(maxsize=None)
def _chebyshev_coeffs(n: int) -> tuple:
    prev, cur = [1], [0, 1]
    if n == 0:
        return (1,)
    for _ in range(n - 1):
        nxt = [0] + [2 * v for v in cur]
        for j, v in enumerate(prev):
            nxt[j] -= v
        prev, cur = cur, nxt
    return tuple(cur)


def chebyshev_t(n: int) -> ExactPoly:
    """T_n via T_{k+1} = 2x T_k - T_{k-1}."""
    if n < 0:
        raise ContractError("Chebyshev degree must be nonnegative")
    return ExactPoly(_chebyshev_coeffs(n))


@lru_cache(maxsize=None)
def _extremal_coeffs(n: int) -> tuple:
    t = _chebyshev_coeffs(n)
    mixed = homogeneous_combination(t, [1, -1], [1, 1])
    numer = [math.comb(n, k) - mixed[k] for k in range(n + 1)]
    if numer[0] != 0:
        raise ConsistencyError(f"numerator of p_{n} does not vanish at s = 0")
    shifted = numer[1:]
    if any(v % 2 for v in shifted):
        raise ConsistencyError(f"numerator of p_{n} is not divisible by 2s")
    return tuple(_trim([v // 2 for v in shifted]))


def extremal_polynomial(n: int) -> ExactPoly:
    """The extremal polynomial p_n with integer coefficients; p_n(0) = n^2."""
    if n < 1:
        raise ContractError("extremal_polynomial requires n >= 1")
    return ExactPoly(_extremal_coeffs(n))


def extremal_value(n: int) -> int:
    if n < 1:
        raise ContractError("extremal_value requires n >= 1")
    value = n * n
    if extremal_polynomial(n).coeffs[0] != value:
        raise ConsistencyError(f"p_{n}(0) != {value}")
    return value


@dataclass(frozen=True)
class ZeroStructure:
    all_positive_real: bool
    all_double: bool
    roots: tuple
    # (center, multiplicity) per cluster
    clusters: tuple


def cluster_roots(rs: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    """Group roots lying within ``tol * |r|`` of each other; returns (mean, count) pairs."""
    remaining = sorted((complex(r) for r in rs), key=lambda r: (r.real, r.imag))
    clusters = []
    while remaining:
        head = remaining.pop(0)
        radius = tol * max(abs(head), 1e-300)
        members = [head] + [r for r in remaining if abs(r - head) <= radius]
        remaining = [r for r in remaining if abs(r - head) > radius]
        clusters.append((complex(np.mean(members)), len(members)))
    return clusters


def zero_structure(n: int, tol: float = DEFAULT_CLUSTER_TOL) -> ZeroStructure:
    """Numerical zeros of p_n, clustered and classified."""
    if n < 3:
        raise ContractError(f"p_{n} is a nonzero constant; zero_structure requires n >= 3")
    p = extremal_polynomial(n).to_complex_poly()
    rs = poly_roots(p)
    clusters = cluster_roots(rs, tol)
    positive = all(c.real > 0 and abs(c.imag) <= tol for c, _ in clusters)
    double = all(m == 2 for _, m in clusters)
    return ZeroStructure(positive, double, tuple(complex(r) for r in rs), tuple(clusters))


def dyadic_integers(values: Sequence[float]) -> tuple[list[int], int]:
    """Write finite floats exactly as ``ints / D`` with one power-of-two ``D``."""
    ratios = [float(v).as_integer_ratio() for v in values]
    D = max((d for _, d in ratios), default=1)
    return [num * (D // den) for num, den in ratios], D
