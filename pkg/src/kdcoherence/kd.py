"""Kirkwood-Dirac quasiprobability distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Basis, _check_dims, state_ref

TOL_CLASSICAL = 1e-9


@dataclass(frozen=True, eq=False)
class KDDistribution:
    """KD matrix ``Q[m, n] = <a_m|rho|b_n><b_n|a_m>`` with provenance tags."""

    Q: np.ndarray
    state_ref: str = ""
    basis_a_ref: str = ""
    basis_b_ref: str = ""

    @property
    def dim(self) -> int:
        return self.Q.shape[0]

    def row_marginals(self):
        return self.Q.sum(axis=1)

    def col_marginals(self):
        return self.Q.sum(axis=0)


def kd_matrix(rho, A: Basis, B: Basis) -> np.ndarray:
    """Raw KD matrix as a complex array, without the wrapper."""
    rho = np.asarray(rho, dtype=np.complex128)
    _check_dims(rho.shape[0], A.dim, B.dim)
    a, b = A.vectors, B.vectors
    # <a_m|rho|b_n> * <b_n|a_m>
    return (a.conj() @ rho @ b.T) * (b.conj() @ a.T).T


def kd_distribution(rho, A: Basis, B: Basis, check: bool = True) -> KDDistribution:
    Q = kd_matrix(rho, A, B)
    if check:
        tr = np.trace(np.asarray(rho)).real
        total = Q.sum()
        if abs(total - tr) > 1e-10:
            raise ValueError(f"KD entries sum to {total:.12g}, trace is {tr:.12g}")
        rows = Q.sum(axis=1)
        if np.max(np.abs(rows.imag)) > 1e-10 or np.min(rows.real) < -1e-10:
            raise ValueError("KD row marginals are not nonnegative reals")
    Q.setflags(write=False)
    return KDDistribution(Q, state_ref(rho), A.name, B.name)


def _as_q(Q):
    return Q.Q if isinstance(Q, KDDistribution) else np.asarray(Q)


def is_kd_classical(Q, tol: float = TOL_CLASSICAL) -> bool:
    """All entries real and nonnegative, up to an absolute band ``tol``."""
    q = _as_q(Q)
    return bool(np.all(np.abs(q.imag) <= tol) and np.all(q.real >= -tol))


def imag_l1(Q) -> float:
    """Sum over all entries of ``|Im Q[m, n]|``."""
    return float(np.abs(_as_q(Q).imag).sum())


def nonclassicality_margin(Q) -> float:
    """Largest violation of classicality: max of ``|Im Q|`` and ``-Re Q``."""
    q = _as_q(Q)
    return float(max(np.max(np.abs(q.imag)), np.max(-q.real), 0.0))
