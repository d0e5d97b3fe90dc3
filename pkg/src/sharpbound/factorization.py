"""Fejér–Riesz spectral factorization by root pairing.

A Hermitian Laurent polynomial ``f`` of center degree ``m`` that is nonnegative
on the unit circle gives an ordinary polynomial ``F = z^m f`` of degree ``2m``
whose roots come in reflected pairs ``r, 1/conj(r)``.  Keeping the outer root of
every pair (and one copy of each doubled circle root) yields the outer factor
``P`` with ``f(z) = P(z) conj(P(1/conj(z)))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, NotNonnegativeError
from .polycore import (
    ComplexPoly,
    LaurentPoly,
    max_coeff_distance,
    min_real_on_circle,
    roots,
    split_cluster,
)

PAIR_TOL = 1e-6
CIRCLE_TOL = 1e-6
DEFAULT_TOL = 1e-9
# widest spread accepted for a split multiple root on the circle
CLUSTER_RADIUS = 1e-2
# remainder threshold, relative to the coefficient scale, for exact zeros at z = +-1
DEFLATE_TOL = 1e-10


@dataclass(frozen=True)
class SpectralFactor:
    P: ComplexPoly
    residual: float
    min_root_modulus: float


def reconstruct(P: ComplexPoly) -> LaurentPoly:
    """``P(z) conj(P(1/conj(z)))`` as a Laurent polynomial: ``a_m = sum_k P_{k+m} conj(P_k)``."""
    c = P.coeffs
    return LaurentPoly(np.convolve(c, np.conj(c[::-1])))


def _pair_roots(rs: np.ndarray, pair_tol: float) -> list[complex]:
    remaining = [complex(r) for r in rs]
    outer = []
    while remaining:
        i = int(np.argmax([abs(r) for r in remaining]))
        r = remaining.pop(i)
        witness = float(np.angle(r) % (2 * np.pi))
        if not remaining:
            raise NotNonnegativeError(
                "not nonnegative on circle: root left without a reflected partner",
                witness_angle=witness,
            )
        # a split circle root of multiplicity >= 4 also contains near-reflected
        # pairs, so clusters are resolved before reflection matching
        members = split_cluster(np.array([r] + remaining), 0, CLUSTER_RADIUS)
        center = complex(np.mean(np.array([r] + remaining)[members]))
        if members.size >= 3 and abs(abs(center) - 1.0) <= CIRCLE_TOL:
            if members.size % 2:
                raise NotNonnegativeError(
                    f"not nonnegative on circle: odd multiplicity {members.size} root near {center:.6g}",
                    witness_angle=witness,
                )
            for k in sorted(members[1:] - 1, reverse=True):
                remaining.pop(int(k))
            outer.extend([center] * (members.size // 2))
            continue
        mismatch = [abs(r * x.conjugate() - 1.0) for x in remaining]
        j = int(np.argmin(mismatch))
        if mismatch[j] > pair_tol:
            raise NotNonnegativeError(
                f"not nonnegative on circle: root {r:.6g} has no reflected partner "
                f"(best mismatch {mismatch[j]:.2e})",
                witness_angle=witness,
            )
        r2 = remaining.pop(j)
        if abs(abs(r) - 1.0) <= CIRCLE_TOL and abs(abs(r2) - 1.0) <= CIRCLE_TOL:
            # one copy of a doubled circle root; the split is symmetric to first order
            outer.append((r + r2) / 2.0)
        else:
            outer.append((r + 1.0 / r2.conjugate()) / 2.0)
    return outer


def _deflate(c: np.ndarray, point: float, tol: float) -> tuple[np.ndarray, int]:
    """Divide out ``(z - point)`` an even number of times while the remainder stays below
    ``tol`` times the coefficient scale.

    A nonnegative f has even multiplicity at every circle zero; a leftover odd
    step is a nearby ordinary root and is left for root pairing.
    """
    count = 0
    kept = c
    while c.size > 1:
        desc = c[::-1]
        acc = np.empty_like(desc)
        acc[0] = desc[0]
        for k in range(1, desc.size):
            acc[k] = desc[k] + point * acc[k - 1]
        if abs(acc[-1]) > tol * float(np.sum(np.abs(c))):
            break
        c = acc[:-1][::-1]
        count += 1
        if count % 2 == 0:
            kept = c
    return kept, count - count % 2


def fejer_riesz(f: LaurentPoly, tol: float = DEFAULT_TOL) -> SpectralFactor:
    """Outer spectral factor ``P`` of a Hermitian ``f`` nonnegative on ``|z| = 1``.

    ``P`` is normalized to a positive real leading coefficient and scaled so that
    the constant term of the reconstruction matches ``a_0`` of ``f``.
    """
    if not isinstance(f, LaurentPoly):
        raise ContractError("fejer_riesz expects a LaurentPoly")
    if f.is_zero:
        raise ContractError("fejer_riesz: f is identically zero")
    if not f.hermitian:
        raise ContractError("fejer_riesz requires a Hermitian Laurent polynomial")
    low = min_real_on_circle(f)
    if low.value < -tol * f.scale:
        raise NotNonnegativeError(
            f"not nonnegative on circle: min Re f = {low.value:.6g} at theta = {low.argument:.6g}",
            witness_angle=low.argument,
        )
    ft = f.trimmed()
    a0 = ft.coeff(0).real
    if a0 <= 0:
        raise NotNonnegativeError("not nonnegative on circle: a_0 <= 0", witness_angle=low.argument)
    if ft.center_degree == 0:
        P = ComplexPoly([np.sqrt(a0)])
        return SpectralFactor(P, max_coeff_distance(reconstruct(P), ft), float("inf"))

    # zeros at z = 1 and z = -1 come from q(0) = 0 and deg q < n; they are often
    # of high multiplicity, which the eigenvalue solver smears, so divide them out exactly
    c = ft.to_poly().coeffs
    outer = []
    for point in (1.0, -1.0):
        c, mult = _deflate(c, point, DEFLATE_TOL)
        outer += [point] * (mult // 2)
    if c.size > 1:
        outer += _pair_roots(roots(ComplexPoly(c)), max(PAIR_TOL, tol))
    monic = ComplexPoly.from_roots(outer)
    P = monic * np.sqrt(a0 / np.sum(np.abs(monic.coeffs) ** 2))
    residual = max_coeff_distance(reconstruct(P), ft)
    return SpectralFactor(P, residual, float(min(abs(r) for r in outer)))
