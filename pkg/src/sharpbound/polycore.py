"""Dense polynomial and Laurent-polynomial arithmetic over the complex numbers.

Coefficients are stored in ascending powers.  A :class:`LaurentPoly` of center
degree ``n`` stores ``a_{-n}, ..., a_n`` so that index ``k + n`` holds ``a_k``.
Everything here is floating point; exact integer work lives in
:mod:`sharpbound.chebyshev`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ContractError, DomainError, RootFindingError

ZERO_THRESHOLD = 1e-12
ZERO_DEGREE = -1
DEFAULT_OVERSAMPLE = 8
GOLDEN_WIDTH = 1e-12
ROOT_ITERATION_CAP = 200
# number of coarse-grid local maxima handed to golden-section refinement
REFINE_PEAKS = 3

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _as_coeff_array(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.array(coeffs, dtype=complex))
    if c.ndim != 1:
        raise ContractError("coefficients must be a one-dimensional sequence")
    if not np.all(np.isfinite(c)):
        raise ContractError("coefficients must be finite")
    return c


class ComplexPoly:
    """Immutable dense polynomial with complex coefficients.

    Trailing coefficients whose modulus is at most ``ZERO_THRESHOLD`` times the
    largest coefficient modulus are dropped on construction, so ``coeffs`` has
    exactly ``degree + 1`` entries.  The zero polynomial is stored as ``[0]``
    and has degree ``ZERO_DEGREE``.
    """

    __slots__ = ("_coeffs", "_list")

    def __init__(self, coeffs):
        c = _as_coeff_array(coeffs)
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        if scale == 0.0:
            c = np.zeros(1, dtype=complex)
        else:
            keep = np.nonzero(np.abs(c) > ZERO_THRESHOLD * scale)[0]
            c = c[: keep[-1] + 1].copy()
        c.flags.writeable = False
        self._coeffs = c
        self._list = c.tolist()

    @classmethod
    def from_roots(cls, roots, leading: complex = 1.0) -> "ComplexPoly":
        c = np.array([leading], dtype=complex)
        for r in np.atleast_1d(np.asarray(roots, dtype=complex)):
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @classmethod
    def monomial(cls, k: int, coeff: complex = 1.0) -> "ComplexPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            return ZERO_DEGREE
        return self._coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self._coeffs.size == 1 and self._coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return complex(self._coeffs[-1])

    @property
    def is_real(self) -> bool:
        return bool(np.all(self._coeffs.imag == 0))

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"ComplexPoly({np.array2string(self._coeffs, precision=6)})"

    def _binary(self, other, op):
        if isinstance(other, ComplexPoly):
            a, b = self._coeffs, other._coeffs
        else:
            a, b = self._coeffs, np.array([other], dtype=complex)
        size = max(a.size, b.size)
        return ComplexPoly(op(np.pad(a, (0, size - a.size)), np.pad(b, (0, size - b.size))))

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        return ComplexPoly(-self._coeffs)

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return ComplexPoly(np.convolve(self._coeffs, other._coeffs))
        return ComplexPoly(self._coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ComplexPoly(self._coeffs / complex(scalar))

    def allclose(self, other: "ComplexPoly", atol: float = 1e-12) -> bool:
        return max_coeff_distance(self, other) <= atol


class LaurentPoly:
    """Immutable Laurent polynomial ``sum_{k=-n}^{n} a_k z^k``.

    The center degree is fixed by the storage length ``2n + 1``; no trimming is
    applied, so a Laurent polynomial built with center degree ``n`` keeps it.
    """

    __slots__ = ("_coeffs", "_n", "_list", "_negative")

    def __init__(self, coeffs, center_degree: int | None = None):
        c = _as_coeff_array(coeffs)
        if c.size % 2 != 1:
            raise ContractError("Laurent coefficient sequence must have odd length 2n+1")
        n = (c.size - 1) // 2
        if center_degree is not None and center_degree != n:
            raise ContractError(f"center_degree {center_degree} does not match {c.size} coefficients")
        c = c.copy()
        c.flags.writeable = False
        self._coeffs = c
        self._n = n
        self._list = c.tolist()
        self._negative = bool(np.any(c[:n]))

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        n = max((abs(k) for k in terms), default=0)
        c = np.zeros(2 * n + 1, dtype=complex)
        for k, v in terms.items():
            c[k + n] += v
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def center_degree(self) -> int:
        return self._n

    def coeff(self, k: int) -> complex:
        if abs(k) > self._n:
            return 0j
        return complex(self._coeffs[k + self._n])

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self._coeffs)))

    @property
    def effective_degree(self) -> int:
        """Largest ``|k|`` with a coefficient above the zero threshold, or ``ZERO_DEGREE``."""
        scale = self.scale
        if scale == 0.0:
            return ZERO_DEGREE
        big = np.nonzero(np.abs(self._coeffs) > ZERO_THRESHOLD * scale)[0]
        return int(max(abs(big[0] - self._n), abs(big[-1] - self._n)))

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    def trimmed(self) -> "LaurentPoly":
        m = max(self.effective_degree, 0)
        return LaurentPoly(self._coeffs[self._n - m: self._n + m + 1])

    def is_hermitian(self, tol: float = ZERO_THRESHOLD) -> bool:
        """True iff ``a_{-k} == conj(a_k)`` for all k, within ``tol`` times the coefficient scale."""
        c = self._coeffs
        return bool(np.all(np.abs(c[::-1] - np.conj(c)) <= tol * self.scale))

    @property
    def hermitian(self) -> bool:
        return self.is_hermitian()

    def to_poly(self) -> ComplexPoly:
        """The ordinary polynomial ``z^n f(z)``."""
        return ComplexPoly(self._coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"LaurentPoly(n={self._n}, {np.array2string(self._coeffs, precision=6)})"

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            n = max(self._n, other._n)
            return LaurentPoly(_pad_center(self._coeffs, n) + _pad_center(other._coeffs, n))
        c = self._coeffs.copy()
        c[self._n] += other
        return LaurentPoly(c)

    __radd__ = __add__

    def __mul__(self, scalar):
        return LaurentPoly(self._coeffs * complex(scalar))

    __rmul__ = __mul__


AnyPoly = Union[ComplexPoly, LaurentPoly]


def _pad_center(c: np.ndarray, n: int) -> np.ndarray:
    extra = n - (c.size - 1) // 2
    return np.pad(c, (extra, extra))


def max_coeff_distance(a: AnyPoly, b: AnyPoly) -> float:
    """Largest coefficientwise modulus of ``a - b`` (same kind required)."""
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
        n = max(a.center_degree, b.center_degree)
        return float(np.max(np.abs(_pad_center(a.coeffs, n) - _pad_center(b.coeffs, n))))
    if isinstance(a, ComplexPoly) and isinstance(b, ComplexPoly):
        size = max(a.coeffs.size, b.coeffs.size)
        da = np.pad(a.coeffs, (0, size - a.coeffs.size))
        db = np.pad(b.coeffs, (0, size - b.coeffs.size))
        return float(np.max(np.abs(da - db)))
    raise ContractError("cannot compare a polynomial with a Laurent polynomial")


def _horner(c: np.ndarray, z):
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    return acc


def _horner_scalar(c: list, z: complex) -> complex:
    acc = c[-1]
    for a in c[-2::-1]:
        acc = acc * z + a
    return acc


def evaluate(p: AnyPoly, z):
    """Evaluate ``p`` at ``z`` (scalar or array) by Horner's rule."""
    if isinstance(z, (int, float, complex)):
        return _evaluate_scalar(p, complex(z))
    if isinstance(p, ComplexPoly):
        out = _horner(p.coeffs, z)
    elif isinstance(p, LaurentPoly):
        n = p.center_degree
        c = p.coeffs
        if not p._negative:
            out = _horner(c[n:], z)
        else:
            zz = np.asarray(z, dtype=complex)
            if np.any(zz == 0):
                raise DomainError("Laurent polynomial with negative powers evaluated at z = 0")
            out = _horner(c, zz) / zz**n
    else:
        raise TypeError(f"cannot evaluate {type(p).__name__}")
    return complex(out) if np.ndim(out) == 0 else out


def _evaluate_scalar(p: AnyPoly, z: complex) -> complex:
    if isinstance(p, ComplexPoly):
        return complex(_horner_scalar(p._list, z))
    if isinstance(p, LaurentPoly):
        n = p.center_degree
        if not p._negative:
            return complex(_horner_scalar(p._list[n:], z))
        if z == 0:
            raise DomainError("Laurent polynomial with negative powers evaluated at z = 0")
        return complex(_horner_scalar(p._list, z) / z**n)
    raise TypeError(f"cannot evaluate {type(p).__name__}")


def derivative(p: AnyPoly, order: int = 1) -> AnyPoly:
    """Formal derivative of ``p`` applied ``order`` times."""
    if order < 1:
        raise ContractError("derivative order must be >= 1")
    if isinstance(p, ComplexPoly):
        c = p.coeffs
        for _ in range(order):
            if c.size <= 1:
                return ComplexPoly([0])
            c = c[1:] * np.arange(1, c.size)
        return ComplexPoly(c)
    if isinstance(p, LaurentPoly):
        c, n = p.coeffs, p.center_degree
        for _ in range(order):
            out = np.zeros(c.size + 2, dtype=complex)
            # exponent e moves to e - 1, i.e. storage index shifts down by one after re-centering
            out[: c.size] = c * np.arange(-n, n + 1)
            c, n = out, n + 1
        return LaurentPoly(c)
    raise TypeError(f"cannot differentiate {type(p).__name__}")


def _residual(c: np.ndarray, r) -> np.ndarray:
    # |p(r)| relative to the coefficient scale, grown by |r|^deg outside the disk
    r = np.asarray(r, dtype=complex)
    num = np.abs(_horner(c, r))
    den = float(np.max(np.abs(c))) * np.maximum(1.0, np.abs(r)) ** (c.size - 1)
    with np.errstate(over="ignore"):
        return num / den


def roots(p: ComplexPoly, tol: float = 1e-8) -> np.ndarray:
    """All ``degree`` roots of ``p`` with multiplicity.

    Companion-matrix eigenvalues, followed by Newton polishing of any root whose
    residual ``|p(r)| / (max |a_k| * max(1, |r|)^deg)`` exceeds ``tol``.
    """
    if p.degree < 1:
        raise ContractError("roots requires a polynomial of degree >= 1")
    c = p.coeffs
    r = np.roots(c[::-1]).astype(complex)
    err = _residual(c, r)
    if np.all(err <= tol):
        return r
    dc = derivative(p).coeffs
    for _ in range(ROOT_ITERATION_CAP):
        bad = err > tol
        if not np.any(bad):
            return r
        rb = r[bad]
        d = _horner(dc, rb)
        step = np.where(d != 0, _horner(c, rb) / np.where(d != 0, d, 1), 0)
        r[bad] = rb - step
        err = _residual(c, r)
    if np.all(err <= tol):
        return r
    raise RootFindingError(
        f"root polishing did not reach residual {tol:g} (worst {np.max(err):.3e})", best=r
    )


def split_cluster(rs: np.ndarray, i: int, max_radius: float = 1e-2) -> np.ndarray:
    """Indices of the roots that plausibly split off the same multiple root as ``rs[i]``.

    A root of multiplicity m comes back from the eigenvalue solver as m roots
    spread by about eps^(1/m); their mean is accurate even when each one is not.
    The neighbourhood is ten times the distance to the nearest other root,
    capped at ``max_radius``.  The result always contains ``i``.
    """
    rs = np.asarray(rs, dtype=complex)
    dist = np.abs(rs - rs[i])
    others = np.delete(dist, i)
    if others.size == 0:
        return np.array([i])
    radius = min(max_radius, 10.0 * float(others.min()))
    return np.nonzero(dist <= radius)[0]


@dataclass(frozen=True)
class CircleExtremum:
    value: float
    argument: float
    samples_used: int


def _golden_max(f: Callable[[float], float], a: float, b: float, width: float):
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > width:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    if fc >= fd:
        return c, fc, evals
    return d, fd, evals


def maximize_on_circle(func: Callable[[np.ndarray], np.ndarray], count: int,
                       width: float = GOLDEN_WIDTH) -> CircleExtremum:
    """Maximize a real function of the angle over ``[0, 2*pi)``.

    ``func`` must accept both an array of angles and a single float angle.  The function is sampled at
    ``count`` uniform angles; the best few coarse local maxima are refined by
    golden-section search on their neighbouring bracket.
    """
    theta = 2.0 * np.pi * np.arange(count) / count
    vals = np.asarray(func(theta), dtype=float)
    best = int(np.argmax(vals))
    best_val, best_theta = float(vals[best]), float(theta[best])
    evals = count
    peaks = np.nonzero((vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1)))[0]
    peaks = peaks[np.argsort(-vals[peaks], kind="stable")][:REFINE_PEAKS]
    h = 2.0 * np.pi / count

    def scalar(t):
        return float(np.asarray(func(t)).reshape(-1)[0])

    for i in peaks:
        t, v, k = _golden_max(scalar, theta[i] - h, theta[i] + h, width)
        evals += k
        if v > best_val:
            best_val, best_theta = v, t
    return CircleExtremum(float(best_val), float(best_theta % (2.0 * np.pi)), evals)


def _unit(t):
    if isinstance(t, float):
        return complex(math.cos(t), math.sin(t))
    return np.exp(1j * t)


def _sample_count(p: AnyPoly, oversample: int) -> int:
    if oversample < 4:
        raise ContractError("oversample must be >= 4")
    deg = p.center_degree if isinstance(p, LaurentPoly) else max(p.degree, 0)
    return oversample * max(8, 2 * deg + 1)


def sup_modulus_on_circle(p: AnyPoly, oversample: int = DEFAULT_OVERSAMPLE) -> CircleExtremum:
    """Lower estimate of ``max_{|z|=1} |p(z)|``, refined to golden-section accuracy."""
    count = _sample_count(p, oversample)
    return maximize_on_circle(lambda t: np.abs(evaluate(p, _unit(t))), count)


def min_real_on_circle(f: LaurentPoly, oversample: int = DEFAULT_OVERSAMPLE) -> CircleExtremum:
    """Minimum of the real function ``f(e^{i theta})`` for Hermitian ``f``."""
    if not isinstance(f, LaurentPoly):
        raise ContractError("min_real_on_circle expects a LaurentPoly")
    if not f.hermitian:
        raise ContractError("min_real_on_circle requires a Hermitian Laurent polynomial")
    count = _sample_count(f, oversample)
    ext = maximize_on_circle(lambda t: -np.real(evaluate(f, _unit(t))), count)
    return CircleExtremum(-ext.value, ext.argument, ext.samples_used)
