"""Multi-start simplex search over the dressed-DFT family of unbiased bases.

A member of the family is fixed by a row permutation (one per projector
class, see :func:`mub.row_perm_representatives`) and d row phases with the
first pinned to zero. For a state given in ``A`` coordinates the KD matrix of
the dressed basis is ``Q = ((D* rho D) @ F) * conj(F) / d`` where
``D = diag(exp(i phi))`` and ``F[k, n] = omega**(perm[k] n)``. Objectives
receive batches of such Q matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .exceptions import OptimizerDiverged
from .mub import omega_power, row_perm_representatives, standard_dressing

MAX_PERM_DIM = 5


@dataclass(frozen=True)
class OptimizerConfig:
    n_starts: int = 32
    max_iters: int = 2000
    convergence_tol: float = 1e-12
    include_row_perms: bool = True
    grid_refinement: int = 64
    seed: int = 0
    pool_factor: int = 8
    polish_rounds: int = 6

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValueError("n_starts must be at least 1")


@dataclass
class SearchResult:
    value: float
    phases: np.ndarray
    perm: tuple
    trace: dict = field(default_factory=dict)


def perm_matrix(perm, d):
    k = np.asarray(perm)[:, None]
    n = np.arange(d)[None, :]
    return omega_power(k * n, d)


def kd_batch(rho_a, phases, F):
    """KD matrices for a batch of phase vectors, shape (N, d, d)."""
    d = rho_a.shape[0]
    ph = np.exp(1j * np.atleast_2d(phases))
    R = rho_a[None] * ph[:, None, :] * ph.conj()[:, :, None]
    return (R @ F) * F.conj()[None] / d


def imag_l1_batch(Q):
    return np.abs(Q.imag).sum(axis=(-2, -1))


def search_family(rho_a, objective, cfg: OptimizerConfig, extra_phases=(), seed=None):
    """Maximize ``objective(Q_batch)`` over the dressed-DFT family.

    ``rho_a`` is the state in the coordinates of the reference basis. The
    candidate pool holds the standard unbiased bases, ``extra_phases``
    (identity permutation) and random phase points; the best ``n_starts``
    pool points, plus the best point of every permutation class, seed
    Nelder-Mead runs. The winning run is polished by simplex restarts.
    """
    d = rho_a.shape[0]
    seed = cfg.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    if cfg.include_row_perms and d <= MAX_PERM_DIM:
        perms = row_perm_representatives(d)
    else:
        perms = [tuple(range(d))]
    Fs = [perm_matrix(p, d) for p in perms]

    def f(phases, pi):
        return objective(kd_batch(rho_a, phases, Fs[pi]))

    pool_size = max(cfg.n_starts * cfg.pool_factor, 16)
    candidates = []  # (value, perm index, phases)
    for pi in range(len(perms)):
        pts = [rng.uniform(0, 2 * np.pi, (pool_size, d))]
        if d == 2:
            grid = np.linspace(0, 2 * np.pi, cfg.grid_refinement, endpoint=False)
            pts.append(np.column_stack([np.zeros_like(grid), grid]))
        if pi == 0:
            std = [standard_dressing(d, r).row_phases for r in range(1, (2 if d == 2 else d) + 1)]
            pts.append(np.asarray(std))
            if len(extra_phases):
                pts.append(np.atleast_2d(np.asarray(extra_phases, dtype=float)))
        pts = np.concatenate(pts)
        pts = pts - pts[:, :1]
        vals = f(pts, pi)
        if not np.all(np.isfinite(vals)):
            raise OptimizerDiverged("objective returned non-finite values")
        for v, p in zip(vals, pts):
            candidates.append((float(v), pi, p))

    order = sorted(range(len(candidates)), key=lambda i: (-candidates[i][0], i))
    chosen = order[: cfg.n_starts]
    for pi in range(len(perms)):
        if not any(candidates[i][1] == pi for i in chosen):
            chosen.append(next(i for i in order if candidates[i][1] == pi))

    best = None
    best_per_start = []
    nfev = 0
    for ci in chosen:
        _, pi, p0 = candidates[ci]
        val, x, n = _nelder_mead(lambda x: f(np.concatenate([[0.0], x]), pi)[0], p0[1:], cfg,
                                 xatol=1e-6, fatol=1e-9)
        nfev += n
        best_per_start.append(val)
        if best is None or val > best[0] + 1e-15:
            best = (val, pi, x)

    val, pi, x = best
    for _ in range(cfg.polish_rounds):
        new_val, new_x, n = _nelder_mead(lambda x: f(np.concatenate([[0.0], x]), pi)[0], x, cfg, scale=0.05)
        nfev += n
        if new_val <= val + cfg.convergence_tol:
            if new_val > val:
                val, x = new_val, new_x
            break
        val, x = new_val, new_x

    phases = np.mod(np.concatenate([[0.0], x]), 2 * np.pi)
    trace = {
        "starts": len(chosen),
        "iterations": nfev,
        "perm_classes": len(perms),
        "best_per_start": best_per_start,
        "pool_best": candidates[order[0]][0],
    }
    return SearchResult(float(val), phases, perms[pi], trace)


def _nelder_mead(fun, x0, cfg, scale=0.5, xatol=1e-10, fatol=None):
    m = len(x0)
    if m == 0:
        return float(fun(np.zeros(0))), np.zeros(0), 1
    simplex = np.vstack([x0, x0 + scale * np.eye(m)])
    res = minimize(
        lambda x: -fun(x),
        x0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "maxiter": cfg.max_iters,
            "xatol": xatol,
            "fatol": cfg.convergence_tol if fatol is None else fatol,
            "adaptive": m > 4,
        },
    )
    if not np.isfinite(res.fun):
        raise OptimizerDiverged("non-finite objective during simplex search")
    return float(-res.fun), res.x, int(res.nfev)
