"""Convex geometry of KD-classical states for unbiased basis pairs.

For prime d and the standard unbiased pairs, the KD-classical states are
exactly the convex hull of the two families of basis projectors. Membership
in that hull is decided here by nonnegative least squares, and
:func:`verify_theorem1` checks that being classical for two distinct pairs
``(A, B_j)`` and ``(A, B_k)`` forces a state to be diagonal in ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, nnls

from .core import (
    Basis,
    _check_dims,
    offdiag_l1,
    random_density,
    random_incoherent,
    random_pure_state,
)
from .exceptions import CounterexampleFound, NotMub, SolverFailure
from .kd import TOL_CLASSICAL, is_kd_classical, kd_matrix, nonclassicality_margin
from .mub import is_mutually_unbiased, standard_mubs

TOL_HULL = 1e-7
SUM_PENALTY = 10.0
COHERENT_MIN_MASS = 1e-3


@dataclass(frozen=True, eq=False)
class HullDecomposition:
    member: bool
    lam: np.ndarray
    mu: np.ndarray
    residual: float


def _realvec(ops):
    """Stack Hermitian matrices as real vectors preserving Frobenius norm."""
    ops = np.asarray(ops)
    flat = ops.reshape(ops.shape[0], -1) if ops.ndim == 3 else ops.reshape(1, -1)
    return np.concatenate([flat.real, flat.imag], axis=1)


def in_projector_hull(rho, A: Basis, B: Basis, tol_hull: float = TOL_HULL) -> HullDecomposition:
    """Decide whether ``rho`` is a convex mixture of projectors of A and B.

    Solves ``rho = sum_s lam_s |a_s><a_s| + sum_t mu_t |b_t><b_t|`` with
    nonnegative weights by NNLS, the unit-sum constraint appended as a
    penalized row. Among member decompositions the one with the least total
    weight on ``B`` is returned.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    d = A.dim
    _check_dims(rho.shape[0], d, B.dim)
    if not is_mutually_unbiased(A, B, tol=1e-8):
        raise NotMub(f"{A.name} and {B.name} are not mutually unbiased")

    M = _realvec(np.concatenate([A.projectors, B.projectors])).T
    target = _realvec(rho)[0]
    M_pen = np.vstack([M, SUM_PENALTY * np.ones((1, 2 * d))])
    t_pen = np.concatenate([target, [SUM_PENALTY]])
    try:
        x, _ = nnls(M_pen, t_pen, maxiter=50 * 2 * d)
    except RuntimeError as exc:
        raise SolverFailure(f"NNLS did not converge: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SolverFailure("NNLS returned non-finite weights")

    residual = float(np.linalg.norm(M @ x - target))
    member = residual <= tol_hull and abs(x.sum() - 1) <= 1e-8
    if member:
        x = _least_b_weight(M, target, x, residual)
        residual = float(np.linalg.norm(M @ x - target))
    return HullDecomposition(bool(member), x[:d].copy(), x[d:].copy(), residual)


def _least_b_weight(M, target, x0, residual):
    d2 = M.shape[1]
    d = d2 // 2
    eps = residual + 1e-12
    cost = np.concatenate([np.zeros(d), np.ones(d)])
    res = linprog(
        cost,
        A_ub=np.vstack([M, -M]),
        b_ub=np.concatenate([target + eps, -target + eps]),
        A_eq=np.ones((1, d2)),
        b_eq=[1.0],
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        return x0
    x = np.clip(res.x, 0, None)
    return x if np.linalg.norm(M @ x - target) <= max(2 * eps, 1e-10) else x0


def is_incoherent(rho, A: Basis, tol: float = 1e-9) -> bool:
    r = A.coords(np.asarray(rho, dtype=np.complex128))
    off = np.abs(r - np.diag(np.diag(r)))
    return bool(np.all(off <= tol))


@dataclass
class CheckResult:
    passed: int = 0
    failed: int = 0
    worst_margin: float = 0.0
    note: str = ""

    def to_dict(self):
        return {"passed": self.passed, "failed": self.failed,
                "worst_margin": self.worst_margin, "note": self.note}


@dataclass
class VerificationReport:
    target: str
    d: int
    params: dict
    checks: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    advisory: bool = False

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(c.failed == 0 for c in self.checks.values())

    def check(self, name) -> CheckResult:
        return self.checks.setdefault(name, CheckResult())

    def record(self, name, passed, margin, *, state=None, q=None, detail=""):
        """Count one sample; ``margin`` is signed slack (negative = violation)."""
        c = self.check(name)
        if passed:
            c.passed += 1
        else:
            c.failed += 1
            if len(self.counterexamples) < 10:
                self.counterexamples.append({
                    "check": name,
                    "detail": detail,
                    "state": None if state is None else _encode(state),
                    "q": {k: _encode(v) for k, v in (q or {}).items()},
                })
        if c.passed + c.failed == 1 or margin < c.worst_margin:
            c.worst_margin = float(margin)

    def to_dict(self):
        return {
            "target": self.target,
            "d": self.d,
            "params": self.params,
            "ok": self.ok,
            "advisory": self.advisory,
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
            "counterexamples": self.counterexamples,
        }


def _encode(a):
    a = np.asarray(a, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(a)]


def sample_rng(seed, stream, index):
    """Generator determined by (seed, stream, index) alone."""
    return np.random.default_rng([int(seed), int(stream), int(index)])


def random_coherent(d, rng, A: Basis | None = None, mixed: bool = False, min_mass=COHERENT_MIN_MASS):
    """Random pure (or Ginibre mixed) state with off-diagonal mass >= ``min_mass``."""
    while True:
        if mixed:
            rho = random_density(d, seed=rng)
        else:
            psi = random_pure_state(d, seed=rng)
            rho = np.outer(psi, psi.conj())
        if offdiag_l1(rho, A) >= min_mass:
            return rho


def verify_theorem1(d, j=1, k=2, n_samples=500, seed=0, tol=TOL_CLASSICAL,
                    raise_on_failure=True) -> VerificationReport:
    """Sample-based check that KDC(A,B_j) and KDC(A,B_k) meet exactly in I(A).

    Checks
    ------
    incoherent_classical
        random diagonal states are classical for both pairs.
    coherent_nonclassical
        random coherent states are nonclassical for at least one pair.
    hull_nonuniform
        ``sum lam_s A_s + sum mu_t B^j_t`` with non-uniform ``mu`` is
        classical for (A, B_j) and nonclassical for (A, B_k).
    hull_uniform
        the same construction with uniform ``mu`` is incoherent and
        classical for both pairs.
    """
    fam = standard_mubs(d)
    if j == k:
        raise ValueError("j and k must differ")
    A, Bj, Bk = fam.A, fam.B(j), fam.B(k)
    report = VerificationReport("theorem1", d, {"j": j, "k": k, "samples": n_samples,
                                                "seed": seed, "tol": tol})

    def q_pair(rho):
        return kd_matrix(rho, A, Bj), kd_matrix(rho, A, Bk)

    for i in range(n_samples):
        rho = random_incoherent(d, seed=sample_rng(seed, 0, i))
        qj, qk = q_pair(rho)
        ok = is_kd_classical(qj, tol) and is_kd_classical(qk, tol)
        margin = tol - max(nonclassicality_margin(qj), nonclassicality_margin(qk))
        report.record("incoherent_classical", ok, margin, state=rho, q={"j": qj, "k": qk},
                      detail="incoherent state flagged nonclassical")

    for i in range(n_samples):
        rho = random_coherent(d, sample_rng(seed, 1, i), mixed=bool(i % 2))
        qj, qk = q_pair(rho)
        ok = not (is_kd_classical(qj, tol) and is_kd_classical(qk, tol))
        margin = max(nonclassicality_margin(qj), nonclassicality_margin(qk)) - tol
        report.record("coherent_nonclassical", ok, margin, state=rho, q={"j": qj, "k": qk},
                      detail="coherent state classical for both pairs")

    PA, PB = A.projectors, Bj.projectors
    for i in range(n_samples):
        rng = sample_rng(seed, 2, i)
        while True:
            w = rng.dirichlet(np.ones(2 * d))
            lam, mu = w[:d], w[d:]
            if np.ptp(mu) >= 1e-2:
                break
        rho = np.einsum("s,sij->ij", lam, PA) + np.einsum("t,tij->ij", mu, PB)
        qj, qk = q_pair(rho)
        ok = is_kd_classical(qj, tol) and not is_kd_classical(qk, tol)
        margin = min(tol - nonclassicality_margin(qj), nonclassicality_margin(qk) - tol)
        report.record("hull_nonuniform", ok, margin, state=rho, q={"j": qj, "k": qk},
                      detail="hull state with non-uniform mu misclassified")

        lam = rng.dirichlet(np.ones(d)) * rng.uniform(0, 1)
        mu = np.full(d, (1 - lam.sum()) / d)
        rho = np.einsum("s,sij->ij", lam, PA) + np.einsum("t,tij->ij", mu, PB)
        qj, qk = q_pair(rho)
        ok = is_incoherent(rho, A, tol) and is_kd_classical(qj, tol) and is_kd_classical(qk, tol)
        margin = tol - max(offdiag_l1(rho, A), nonclassicality_margin(qj), nonclassicality_margin(qk))
        report.record("hull_uniform", ok, margin, state=rho, q={"j": qj, "k": qk},
                      detail="uniform-mu hull state not incoherent/classical")

    if raise_on_failure and not report.ok:
        cx = report.counterexamples[0]
        raise CounterexampleFound(cx["check"], cx["state"], cx["q"], cx["detail"])
    return report
