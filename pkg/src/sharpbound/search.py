"""Semi-infinite LP recovery of the sharp constant.

Maximize ``p(0)`` over coefficient vectors subject to, for every ``s > 0``,

    p(s) >= 0                     (positivity)
    s p(s) <= (1 + s)^n           (growth)

Both families are linear in the coefficients.  Rows are normalized by
``(1 + s)^(n-1)`` so that with ``u = sin^2(theta/2)``, ``v = cos^2(theta/2)``
(``s = u / v``) the positivity row is ``[u^k v^(n-1-k)]_k`` and the growth row
is ``u`` times it.  The continuum of constraints is handled by an exchange
loop: solve on a working set, scan a fine grid, add the most violated
constraint, repeat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .chebyshev import extremal_polynomial
from .errors import ContractError, UnboundedLPError
from .lp import LP_TOL, solve_max_ub
from .polycore import ComplexPoly
from .transforms import halfline_grid

FINE_GRID = 16384
PERTURBATION_SIZE = 1e-7
MATCH_TOL = 1e-4

POSITIVITY = "positivity"
GROWTH = "growth"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    initial_grid: int = 64
    max_exchange_rounds: int = 400
    violation_tol: float = 1e-8
    phase_count: int = 32
    fine_grid: int = FINE_GRID
    # allow degree n-1 for even n instead of the proven n-2
    full_degree: bool = False
    lp_tol: float = LP_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ContractError("n must be a positive integer")
        if self.max_exchange_rounds < 0 or self.fine_grid < 1:
            raise ContractError("max_exchange_rounds must be >= 0 and fine_grid >= 1")


@dataclass(frozen=True)
class ActivePoint:
    s: float
    theta: float
    family: str
    phase: Optional[float]
    slack: float


@dataclass(frozen=True)
class SearchResult:
    mode: str
    n: int
    optimal_value: float
    optimizer: ComplexPoly
    active_points: tuple
    iterations: int
    converged: bool
    final_violation: float
    # (round, value, violation) per exchange round
    trace: tuple = field(default_factory=tuple)

    @property
    def active_abscissas(self) -> list[float]:
        return [a.s for a in self.active_points]


def degree_cap(n: int, full_degree: bool = False) -> int:
    if n % 2 == 1 or full_degree:
        return n - 1
    return n - 2


def _rows(theta: np.ndarray, n: int, ncoef: int) -> tuple[np.ndarray, np.ndarray]:
    u = np.sin(theta / 2.0) ** 2
    v = np.cos(theta / 2.0) ** 2
    k = np.arange(ncoef)
    pos = u[:, None] ** k * v[:, None] ** (n - 1 - k)
    return pos, u[:, None] * pos


def _check_grid(cfg: SearchConfig) -> None:
    if cfg.initial_grid < 2 * cfg.n + 2:
        raise UnboundedLPError(
            f"initial_grid={cfg.initial_grid} is too coarse to pin the growth of a degree "
            f"{cfg.n - 1} candidate and the LP may be unbounded; use initial_grid >= {2 * cfg.n + 2}"
        )


def _s_of(theta: float) -> float:
    return float(np.tan(theta / 2.0) ** 2)


def extremal_lp(cfg: SearchConfig, objective_perturbation: Optional[np.ndarray] = None,
                order_rng: Optional[np.random.Generator] = None) -> SearchResult:
    """Maximize ``p(0)`` over real ``p`` >= 0 under the growth bound.

    ``objective_perturbation`` is added to the objective on the non-constant
    coefficients; ``order_rng`` randomizes the Bland column ranks.  Both exist
    for :func:`uniqueness_probe`.
    """
    _check_grid(cfg)
    n = cfg.n
    ncoef = degree_cap(n, cfg.full_degree) + 1
    obj = np.zeros(ncoef)
    obj[0] = 1.0
    if objective_perturbation is not None:
        obj[1:] += np.asarray(objective_perturbation, dtype=float)[: ncoef - 1]

    fine_theta, _ = halfline_grid(cfg.fine_grid)
    fine_pos, fine_grow = _rows(fine_theta, n, ncoef)
    init_theta, _ = halfline_grid(cfg.initial_grid)
    pos, grow = _rows(init_theta, n, ncoef)

    A = list(-pos) + list(grow)
    b = [0.0] * len(init_theta) + [1.0] * len(init_theta)
    meta = [(t, POSITIVITY) for t in init_theta] + [(t, GROWTH) for t in init_theta]
    ranks = list(order_rng.random(len(A))) if order_rng is not None else list(range(len(A)))

    trace = []
    converged = False
    rounds = 0
    while True:
        sol = solve_max_ub(obj, np.array(A), np.array(b), order=np.array(ranks), tol=cfg.lp_tol)
        c = sol.x
        viol_pos = -(fine_pos @ c)
        viol_grow = fine_grow @ c - 1.0
        ip, ig = int(np.argmax(viol_pos)), int(np.argmax(viol_grow))
        worst = max(viol_pos[ip], viol_grow[ig], 0.0)
        trace.append((rounds, float(c[0]), float(worst)))
        if worst <= cfg.violation_tol:
            converged = True
            break
        if rounds >= cfg.max_exchange_rounds:
            break
        if viol_pos[ip] >= viol_grow[ig]:
            A.append(-fine_pos[ip]); b.append(0.0); meta.append((fine_theta[ip], POSITIVITY))
        else:
            A.append(fine_grow[ig]); b.append(1.0); meta.append((fine_theta[ig], GROWTH))
        ranks.append(order_rng.random() if order_rng is not None else len(ranks))
        rounds += 1

    A_arr, b_arr = np.array(A), np.array(b)
    slack = b_arr - A_arr @ c
    active = [
        ActivePoint(_s_of(meta[i][0]), float(meta[i][0]), meta[i][1], None, float(slack[i]))
        for i in np.nonzero(slack <= 1e3 * cfg.lp_tol)[0]
    ]
    active.sort(key=lambda a: (a.s, a.family))
    return SearchResult("real", n, float(c[0]), ComplexPoly(c), tuple(active), rounds,
                        converged, float(worst), tuple(trace))


def _complex_rows(theta, phases, n):
    _, grow = _rows(theta, n, n)
    rows = []
    for t_idx in range(grow.shape[0]):
        w = grow[t_idx]
        for phi in phases:
            rows.append(_phase_row(w, phi))
    return rows


def _phase_row(w: np.ndarray, phi: float) -> np.ndarray:
    # variables: Re c_0, then (Re c_k, Im c_k) for k >= 1; Re(e^{i phi} c w) = cos*Re - sin*Im
    row = np.empty(2 * w.size - 1)
    row[0] = math.cos(phi) * w[0]
    row[1::2] = math.cos(phi) * w[1:]
    row[2::2] = -math.sin(phi) * w[1:]
    return row


def _complex_coeffs(x: np.ndarray) -> np.ndarray:
    c = np.empty((x.size + 1) // 2, dtype=complex)
    c[0] = x[0]
    c[1:] = x[1::2] + 1j * x[2::2]
    return c


def outer_slack(n: int, phase_count: int) -> float:
    """Upper bound on how far the polygon relaxation can lift the value above ``2n^2 - n``."""
    return (1.0 / math.cos(math.pi / phase_count) - 1.0) * (2 * n * n - n)


def extremal_complex_lp(cfg: SearchConfig) -> SearchResult:
    """Maximize ``Re p(0)`` with ``Im p(0) = 0`` over complex ``p`` of degree <= n-1.

    The modulus constraint ``|s p(s)| <= (1+s)^n`` is replaced by
    ``phase_count`` half-plane cuts, an outer polygon, so the value is an upper
    approximation of the complex-case constant.
    """
    _check_grid(cfg)
    if cfg.phase_count < 4:
        raise ContractError("phase_count must be >= 4")
    n = cfg.n
    phases = 2.0 * np.pi * np.arange(cfg.phase_count) / cfg.phase_count
    nvar = 2 * n - 1
    obj = np.zeros(nvar)
    obj[0] = 1.0

    fine_theta, _ = halfline_grid(cfg.fine_grid)
    _, fine_grow = _rows(fine_theta, n, n)
    init_theta, _ = halfline_grid(cfg.initial_grid)
    A = _complex_rows(init_theta, phases, n)
    b = [1.0] * len(A)
    meta = [(t, phi) for t in init_theta for phi in phases]

    trace = []
    converged = False
    rounds = 0
    while True:
        sol = solve_max_ub(obj, np.array(A), np.array(b), tol=cfg.lp_tol)
        x = sol.x
        w = fine_grow @ _complex_coeffs(x)
        # Re(e^{i phi} w) over the phase grid, for every fine abscissa
        cut = (np.cos(phases)[None, :] * w.real[:, None]
               - np.sin(phases)[None, :] * w.imag[:, None]) - 1.0
        i, j = np.unravel_index(int(np.argmax(cut)), cut.shape)
        worst = max(float(cut[i, j]), 0.0)
        trace.append((rounds, float(x[0]), worst))
        if worst <= cfg.violation_tol:
            converged = True
            break
        if rounds >= cfg.max_exchange_rounds:
            break
        A.append(_phase_row(fine_grow[i], phases[j]))
        b.append(1.0)
        meta.append((fine_theta[i], phases[j]))
        rounds += 1

    A_arr = np.array(A)
    slack = 1.0 - A_arr @ x
    active = [
        ActivePoint(_s_of(meta[i][0]), float(meta[i][0]), GROWTH, float(meta[i][1]), float(slack[i]))
        for i in np.nonzero(slack <= 1e3 * cfg.lp_tol)[0]
    ]
    active.sort(key=lambda a: (a.s, a.phase))
    return SearchResult("complex", n, float(x[0]), ComplexPoly(_complex_coeffs(x)),
                        tuple(active), rounds, converged, worst, tuple(trace))


@dataclass(frozen=True)
class UniquenessReport:
    optimizers: tuple
    values: tuple
    max_pairwise_distance: float
    matches_extremal: bool
    all_converged: bool


def _padded(p: ComplexPoly, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=complex)
    out[: p.coeffs.size] = p.coeffs[:size]
    return out


def uniqueness_probe(cfg: SearchConfig, perturbations: int, seed: int = 0) -> UniquenessReport:
    """Re-solve with tiny objective perturbations and shuffled pivot priorities.

    Keeps every optimizer whose ``p(0)`` is within ``1e-6 n^2`` of the
    unperturbed optimum, and reports their spread and their distance to
    ``p_n``.  Agreement is evidence of uniqueness, not a proof.
    """
    if perturbations < 2:
        raise ContractError("uniqueness_probe needs at least 2 perturbations")
    rng = np.random.default_rng(seed)
    base = extremal_lp(cfg)
    ncoef = degree_cap(cfg.n, cfg.full_degree) + 1
    kept, values, conv = [], [], [base.converged]
    for _ in range(perturbations):
        delta = rng.uniform(-PERTURBATION_SIZE, PERTURBATION_SIZE, size=max(ncoef - 1, 0))
        res = extremal_lp(cfg, objective_perturbation=delta,
                          order_rng=np.random.default_rng(rng.integers(2**63)))
        conv.append(res.converged)
        if abs(res.optimal_value - base.optimal_value) <= 1e-6 * cfg.n**2:
            kept.append(res.optimizer)
            values.append(res.optimal_value)
    size = ncoef
    vecs = [_padded(p, size) for p in kept]
    spread = max((float(np.max(np.abs(a - b))) for a, b in combinations(vecs, 2)), default=0.0)
    target = _padded(extremal_polynomial(cfg.n).to_complex_poly(), size)
    matches = bool(vecs) and all(float(np.max(np.abs(v - target))) <= MATCH_TOL for v in vecs)
    return UniquenessReport(tuple(kept), tuple(values), spread, matches, all(conv))
