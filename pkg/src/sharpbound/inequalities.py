"""Floating-point certification of the bounds on |p(0)| and the circle inequalities behind them.

Nothing here is a proof.  Every check samples, refines, and compares with a
relative tolerance ``CERT_RTOL`` on the right-hand side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .chebyshev import extremal_polynomial
from .errors import ContractError, HypothesisViolation
from .polycore import (
    DEFAULT_OVERSAMPLE,
    ComplexPoly,
    derivative,
    evaluate,
    maximize_on_circle,
    roots,
    split_cluster,
    sup_modulus_on_circle,
)
from .transforms import CandidateInput, halfline_grid, laurent_f

CERT_RTOL = 1e-8
LAX_ROOT_TOL = 1e-6
RS_GRID = 128
POSITIVITY_GRID = 4096


@dataclass(frozen=True)
class InequalityCertificate:
    lhs: float
    rhs: float
    holds: bool
    witness_angle: float
    samples: int


def _holds(lhs: float, rhs: float, rtol: float) -> bool:
    return lhs <= rhs + rtol * abs(rhs)


def bernstein_check(h: ComplexPoly, rtol: float = CERT_RTOL) -> InequalityCertificate:
    """``max |h'| <= deg(h) * max |h|`` on the unit circle."""
    if h.degree < 1:
        raise ContractError("bernstein_check requires degree >= 1")
    dh = sup_modulus_on_circle(derivative(h, 1))
    mh = sup_modulus_on_circle(h)
    rhs = h.degree * mh.value
    return InequalityCertificate(dh.value, rhs, _holds(dh.value, rhs, rtol), dh.argument,
                                 dh.samples_used + mh.samples_used)


def lax_check(P: ComplexPoly, root_tol: float = LAX_ROOT_TOL,
              rtol: float = CERT_RTOL) -> InequalityCertificate:
    """``max |P'| <= (deg/2) * max |P|`` for P without zeros in the open disk."""
    if P.degree >= 1:
        rs = roots(P)
        for i in np.nonzero(np.abs(rs) < 1.0 - root_tol)[0]:
            # a multiple zero on the circle splits into a small ring; judge its center
            center = np.mean(rs[split_cluster(rs, int(i))])
            if abs(center) < 1.0 - root_tol or len(split_cluster(rs, int(i))) < 2:
                raise HypothesisViolation(f"P has a zero at {rs[i]:.6g} inside the unit disk")
    dP = sup_modulus_on_circle(derivative(P, 1))
    mP = sup_modulus_on_circle(P)
    rhs = max(P.degree, 0) / 2.0 * mP.value
    return InequalityCertificate(dP.value, rhs, _holds(dP.value, rhs, rtol), dP.argument,
                                 dP.samples_used + mP.samples_used)


def rs_pair_check(g: ComplexPoly, n: int, grid: int = RS_GRID,
                  rtol: float = CERT_RTOL) -> InequalityCertificate:
    """``|g''(z)| + |(2n-1) g'(z) - z g''(z)| <= n (2n-1)`` on the closed disk.

    Sampled on a ``grid x 2*grid`` polar grid plus a refined maximization on the
    boundary circle.  Requires ``max_{|z|=1} |g'| <= n``.
    """
    g1 = derivative(g, 1)
    g2 = derivative(g, 2)
    if g1.degree > 2 * n - 1:
        raise ContractError(f"deg g' = {g1.degree} exceeds 2n - 1 = {2 * n - 1}")
    sup_g1 = sup_modulus_on_circle(g1)
    if not _holds(sup_g1.value, float(n), rtol):
        raise HypothesisViolation(f"max |g'| on the circle is {sup_g1.value:.6g} > n = {n}")

    def lhs(z):
        d1, d2 = evaluate(g1, z), evaluate(g2, z)
        return np.abs(d2) + np.abs((2 * n - 1) * d1 - z * d2)

    radii = np.linspace(0.0, 1.0, grid)
    angles = 2.0 * np.pi * np.arange(2 * grid) / (2 * grid)
    zz = radii[:, None] * np.exp(1j * angles)[None, :]
    vals = lhs(zz)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, witness = float(vals[i, j]), float(angles[j])
    edge = maximize_on_circle(lambda t: lhs(np.exp(1j * t)),
                              DEFAULT_OVERSAMPLE * max(8, 4 * n + 1))
    if edge.value > best:
        best, witness = edge.value, edge.argument
    rhs = float(n * (2 * n - 1))
    return InequalityCertificate(best, rhs, _holds(best, rhs, rtol), witness,
                                 vals.size + edge.samples_used)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    positive: Optional[bool]
    worst_s: float
    worst_margin: float


def admissibility_check(c: CandidateInput, require_positive: bool = True,
                        rtol: float = CERT_RTOL) -> Admissibility:
    """Growth bound via ``max_{|z|=1} |f| <= 1``; optional nonnegativity on s >= 0.

    Nonnegativity is read on the normalized scale ``s p(s) / (1+s)^n``, which is
    ``f(e^{i theta})`` at ``s = tan^2(theta/2)``; ``p(0)`` is checked directly.
    ``positive`` is None when ``require_positive`` is False.
    """
    f = laurent_f(c)
    ext = sup_modulus_on_circle(f)
    half = ext.argument if ext.argument <= np.pi else 2.0 * np.pi - ext.argument
    worst_s = math.inf if half == np.pi else float(np.tan(half / 2.0) ** 2)
    positive = None
    if require_positive:
        theta, _ = halfline_grid(POSITIVITY_GRID)
        vals = evaluate(f, np.exp(1j * theta))
        p0 = complex(c.p.coeffs[0])
        p0_tol = rtol * c.n**2
        positive = bool(
            np.min(vals.real) >= -rtol
            and np.max(np.abs(vals.imag)) <= rtol
            and p0.real >= -p0_tol
            and abs(p0.imag) <= p0_tol
        )
    return Admissibility(ext.value <= 1.0 + rtol, positive, worst_s, 1.0 - ext.value)


@dataclass(frozen=True)
class BoundReport:
    n: int
    p0_modulus: float
    sharp_bound: float
    weak_bound: float
    nazarov_sodin_bound: float
    naive_bound: float
    admissible: bool
    positive_on_halfline: bool
    margins: dict = field(default_factory=dict)
    # phase removed from p(0) when the candidate was rotated to real p(0) >= 0
    phase: float = 0.0

    def violations(self, rtol: float = CERT_RTOL) -> list[tuple[str, float]]:
        """Bounds whose hypotheses hold but whose margin is negative beyond tolerance.

        A failed growth condition is reported as ``("growth", worst_margin)`` upstream;
        here only the constants are examined.
        """
        bounds = {
            "sharp": self.sharp_bound,
            "weak": self.weak_bound,
            "nazarov_sodin": self.nazarov_sodin_bound,
            "naive": self.naive_bound,
        }
        out = []
        if not self.admissible:
            return out
        for name, bound in bounds.items():
            if name == "sharp" and not self.positive_on_halfline:
                continue
            if self.margins[name] < -rtol * bound:
                out.append((name, self.margins[name]))
        return out


def bound_constants(n: int) -> dict:
    return {
        "sharp": float(n * n),
        "weak": float(2 * n * n - n),
        "nazarov_sodin": math.e**2 * n * n,
        "naive": float(4 * n * (2 * n - 1)),
    }


def bound_report(c: CandidateInput, rtol: float = CERT_RTOL) -> BoundReport:
    p0 = complex(c.p.coeffs[0])
    phase = float(np.angle(p0)) if p0 != 0 else 0.0
    rotated = CandidateInput(c.p * np.exp(-1j * phase), c.n) if phase else c
    adm = admissibility_check(rotated, require_positive=True, rtol=rtol)
    consts = bound_constants(c.n)
    mod = abs(p0)
    return BoundReport(
        n=c.n,
        p0_modulus=mod,
        sharp_bound=consts["sharp"],
        weak_bound=consts["weak"],
        nazarov_sodin_bound=consts["nazarov_sodin"],
        naive_bound=consts["naive"],
        admissible=adm.admissible,
        positive_on_halfline=bool(adm.positive),
        margins={k: v - mod for k, v in consts.items()},
        phase=phase,
    )


@dataclass(frozen=True)
class CarlesonConstants:
    new: float
    old: float
    scalar_sharp: Optional[float]


def carleson_constant(d: int) -> CarlesonConstants:
    """Embedding constants ``4 d^2`` (improved) and ``4 e^2 d^2`` (previous)."""
    if d < 1:
        raise ContractError("d must be a positive integer")
    return CarlesonConstants(4.0 * d * d, 4.0 * math.e**2 * d * d, 4.0 if d == 1 else None)


def _scaled_to_boundary(p: ComplexPoly, n: int) -> ComplexPoly:
    if p.is_zero:
        return p
    return p / sup_modulus_on_circle(laurent_f(CandidateInput(p, n))).value


def random_nonnegative_candidate(n: int, rng: np.random.Generator) -> CandidateInput:
    """Random polynomial >= 0 on [0, inf), scaled so that the growth bound is tight.

    A nonnegative combination of monomials ``s^k``, shifted squares
    ``s^j (s - r)^2`` with ``r > 0``, and (sometimes) the extremal ``p_n``; each
    piece is first normalized to a tight growth bound.
    """
    pieces = [ComplexPoly.monomial(k) for k in range(n)]
    for _ in range(rng.integers(0, 4)):
        if n >= 3:
            j = int(rng.integers(0, n - 2))
            r = float(np.tan(rng.uniform(0.05, 3.0) / 2.0) ** 2)
            pieces.append(ComplexPoly.monomial(j) * ComplexPoly([r * r, -2 * r, 1.0]))
    if rng.random() < 0.5:
        pieces.append(extremal_polynomial(n).to_complex_poly())
    pieces = [_scaled_to_boundary(b, n) for b in pieces]
    weights = rng.exponential(size=len(pieces)) * (rng.random(len(pieces)) < 0.7)
    if not np.any(weights):
        weights[rng.integers(len(pieces))] = 1.0
    p = ComplexPoly(np.zeros(1))
    for w, b in zip(weights, pieces):
        p = p + w * b
    return CandidateInput(_scaled_to_boundary(p, n), n)


def random_complex_candidate(n: int, rng: np.random.Generator) -> CandidateInput:
    """Random complex polynomial of degree <= n-1 scaled to a tight growth bound.

    Half of the draws mix a rotated ``p_n`` into the random part so that
    ``|p(0)|`` lands near ``n^2``.
    """
    coeffs = rng.normal(size=n) + 1j * rng.normal(size=n)
    p = _scaled_to_boundary(ComplexPoly(coeffs), n)
    if rng.random() < 0.5:
        lam = rng.uniform(0.5, 1.0)
        ext = extremal_polynomial(n).to_complex_poly() * np.exp(2j * np.pi * rng.random())
        p = lam * ext + (1 - lam) * p
    return CandidateInput(_scaled_to_boundary(p, n), n)
