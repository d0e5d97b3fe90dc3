"""Conjugation of a half-line candidate into the unit circle.

With ``q(z) = z p(z)`` and ``w(z) = -((1 - z) / (1 + z))**2`` the two auxiliaries are

    f(z) = (1 + z)^{2n} / (4z)^n * q(w(z))      (Laurent, center degree n)
    g(z) = (1 + z)^{2n} / 4^n    * q(w(z)) = z^n f(z)

On ``|z| = 1`` with ``z = e^{i theta}`` one has ``w = tan(theta/2)**2 = s`` and
``f(z) = q(s) / (1 + s)^n``, which turns the growth condition on the half-line
into a sup-norm bound on the circle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import dyadic_integers, homogeneous_combination
from .errors import ConsistencyError, ContractError, DomainError, SizeError
from .polycore import ComplexPoly, LaurentPoly, derivative, evaluate

MAX_TRANSFORM_DEGREE = 500
G_PRIME_TOL = 1e-9

_ONE_MINUS_Z_SQ = [1, -2, 1]
_ONE_PLUS_Z_SQ = [1, 2, 1]


@dataclass(frozen=True)
class CandidateInput:
    """A candidate ``p`` together with the growth exponent ``n``."""

    p: ComplexPoly
    n: int

    def __post_init__(self):
        if not isinstance(self.p, ComplexPoly):
            object.__setattr__(self, "p", ComplexPoly(self.p))
        if int(self.n) != self.n or self.n < 1:
            raise ContractError(f"growth exponent n must be a positive integer, got {self.n!r}")
        if self.p.degree > self.n - 1:
            raise ContractError(
                f"candidate has degree {self.p.degree} but the growth bound with n={self.n} "
                f"allows degree at most {self.n - 1}"
            )


def halfline_grid(count: int) -> tuple[np.ndarray, np.ndarray]:
    """Angles uniform in (0, pi), endpoints excluded, and their images s = tan^2(theta/2)."""
    theta = np.pi * np.arange(1, count + 1) / (count + 1)
    return theta, np.tan(theta / 2.0) ** 2


def lift_q(c: CandidateInput) -> ComplexPoly:
    """``q(z) = z p(z)``."""
    if c.p.degree > c.n - 1:
        raise ContractError(f"candidate degree {c.p.degree} exceeds n - 1 = {c.n - 1}")
    if c.p.is_zero:
        return ComplexPoly([0])
    return ComplexPoly(np.concatenate([[0], c.p.coeffs]))


def _mix_part(q: np.ndarray, n: int) -> np.ndarray:
    ints, denom = dyadic_integers(q)
    weights = [(-1) ** k * v for k, v in enumerate(ints)]
    if not any(weights):
        return np.zeros(2 * n + 1)
    mixed = homogeneous_combination(weights, _ONE_MINUS_Z_SQ, _ONE_PLUS_Z_SQ)
    scale = denom * 4**n
    # int / int is correctly rounded, so every coefficient is the nearest double
    return np.array([v / scale for v in mixed], dtype=float)


def _conjugated_coeffs(c: CandidateInput) -> np.ndarray:
    n = c.n
    if n > MAX_TRANSFORM_DEGREE:
        raise SizeError(f"n = {n} exceeds the supported maximum {MAX_TRANSFORM_DEGREE}")
    q = np.zeros(n + 1, dtype=complex)
    qc = lift_q(c).coeffs
    q[: qc.size] = qc
    out = _mix_part(q.real, n).astype(complex)
    if np.any(q.imag):
        out = out + 1j * _mix_part(q.imag, n)
    return out


def laurent_f(c: CandidateInput) -> LaurentPoly:
    """The Laurent auxiliary ``f``, built by exact binomial convolution."""
    return LaurentPoly(_conjugated_coeffs(c), center_degree=c.n)


def poly_g(c: CandidateInput) -> ComplexPoly:
    """The polynomial auxiliary ``g = z^n f``; checks ``g'(1) = 0``."""
    g = ComplexPoly(_conjugated_coeffs(c))
    if g.degree >= 1:
        k = np.arange(g.coeffs.size)
        scale = float(np.sum(k * np.abs(g.coeffs)))
        gp1 = abs(evaluate(derivative(g, 1), 1.0))
        if gp1 > G_PRIME_TOL * scale:
            raise ConsistencyError(f"g'(1) = {gp1:.3e} should vanish")
    return g


def koebe(z: complex) -> complex:
    """The Koebe function ``z / (1 + z)^2``."""
    z = complex(z)
    if 1.0 + z == 0:
        raise DomainError("the Koebe function has a pole at z = -1")
    return z / (1.0 + z) ** 2


def p0_from_f(f: LaurentPoly) -> complex:
    """``p(0) = -2 f''(1)``."""
    return -2.0 * evaluate(derivative(f, 2), 1.0)


def p0_from_g(g: ComplexPoly) -> complex:
    """``p(0) = -2 g''(1)``."""
    return -2.0 * evaluate(derivative(g, 2), 1.0)
