"""Mutually unbiased bases for prime dimensions and the dressed-DFT family.

Every basis unbiased with ``A`` has a transition matrix that is a complex
Hadamard matrix divided by ``sqrt(d)``. The family used here dresses the DFT
matrix with row phases and a row permutation::

    <a_k|b_n> = exp(i phi_k) * omega**(perm[k] * n) / sqrt(d)

For d = 2, 3, 5 every complex Hadamard matrix is equivalent to the Fourier
matrix, so the family reaches every basis unbiased with ``A`` up to vector
reordering and per-vector phases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import Basis, _check_dims, computational_basis, is_prime
from .exceptions import DimensionMismatch, NotOddPrime, NotPrime

# Dimensions where dressed DFT matrices exhaust all complex Hadamard matrices.
FAMILY_COMPLETE_DIMS = (2, 3, 5)


def omega_power(k, d):
    """``exp(2 pi i k / d)`` with the exponent reduced mod d first."""
    k = np.mod(np.asarray(k, dtype=np.int64), d)
    return np.exp(2j * np.pi * k / d)


@dataclass(frozen=True, eq=False)
class MubFamily:
    dim: int
    A: Basis
    Bs: tuple

    @property
    def bases(self):
        return (self.A, *self.Bs)

    def B(self, r: int) -> Basis:
        """Basis ``B_r`` with 1-based index ``r`` as in the standard labelling."""
        if not 1 <= r <= len(self.Bs):
            raise IndexError(f"B_{r} does not exist for d={self.dim}")
        return self.Bs[r - 1]


@dataclass(frozen=True)
class PhaseDressing:
    """Row phases and row permutation applied to the DFT transition matrix."""

    row_phases: np.ndarray
    row_perm: tuple = None
    dim: int = field(init=False)

    def __post_init__(self):
        phases = np.mod(np.asarray(self.row_phases, dtype=float), 2 * np.pi)
        phases.setflags(write=False)
        d = phases.shape[0]
        perm = tuple(range(d)) if self.row_perm is None else tuple(int(p) for p in self.row_perm)
        if sorted(perm) != list(range(d)):
            raise ValueError(f"row_perm {perm} is not a permutation of range({d})")
        object.__setattr__(self, "row_phases", phases)
        object.__setattr__(self, "row_perm", perm)
        object.__setattr__(self, "dim", d)


def _require_prime(d):
    if not is_prime(int(d)):
        raise NotPrime(f"d={d} is not prime")


def standard_mubs(d: int) -> MubFamily:
    """Computational basis plus the standard unbiased bases for prime ``d``.

    For d = 2 the bases are the X and Y eigenbases; for odd prime d they are
    ``(b^r_p)_q = omega**(r q^2 + p q) / sqrt(d)`` for r = 1..d, where
    r = d gives the DFT basis.
    """
    _require_prime(d)
    A = computational_basis(d)
    s = 1 / np.sqrt(2)
    if d == 2:
        B1 = Basis(s * np.array([[1, 1], [1, -1]]), name="B_1")
        B2 = Basis(s * np.array([[1, 1j], [1, -1j]]), name="B_2")
        return MubFamily(2, A, (B1, B2))
    q = np.arange(d)
    Bs = []
    for r in range(1, d + 1):
        vecs = omega_power(r * q[None, :] ** 2 + q[:, None] * q[None, :], d) / np.sqrt(d)
        Bs.append(Basis(vecs, name=f"B_{r}"))
    return MubFamily(d, A, tuple(Bs))


def is_mutually_unbiased(B1: Basis, B2: Basis, tol: float = 1e-10) -> bool:
    _check_dims(B1.dim, B2.dim)
    ov = np.abs(B1.overlaps(B2)) ** 2
    return bool(np.all(np.abs(ov - 1 / B1.dim) <= tol))


def min_overlap(A: Basis, B: Basis) -> float:
    _check_dims(A.dim, B.dim)
    return float(np.min(np.abs(A.overlaps(B))))


def dft_basis(d: int, A: Basis | None = None) -> Basis:
    """Basis whose n-th vector has amplitude ``omega**(p n)/sqrt(d)`` on ``a_p``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    p = np.arange(d)
    T = omega_power(p[:, None] * p[None, :], d) / np.sqrt(d)
    if A is None:
        return Basis(T, name="DFT")
    _check_dims(d, A.dim)
    return Basis(T @ A.vectors, name="DFT")


def auxiliary_basis(A: Basis, r: int, d: int) -> Basis:
    """Rephased basis ``a'_j = omega**(r j^2) a_j``.

    Its transition matrix to the standard basis ``B_r`` is the DFT matrix.
    """
    if d == 2 or not is_prime(d):
        raise NotOddPrime(f"d={d} is not an odd prime")
    if A.dim != d:
        raise DimensionMismatch(f"basis has dim {A.dim}, expected {d}")
    j = np.arange(d)
    return Basis(omega_power(r * j**2, d)[:, None] * A.vectors, name=f"A'_{r}")


def dressing_transition(dressing: PhaseDressing) -> np.ndarray:
    """Coefficient matrix ``T[n, k] = <a_k|b_n>`` of the dressed DFT basis."""
    d = dressing.dim
    perm = np.asarray(dressing.row_perm)
    n = np.arange(d)
    F = omega_power(perm[None, :] * n[:, None], d)
    return np.exp(1j * dressing.row_phases)[None, :] * F / np.sqrt(d)


def dressed_basis(A: Basis, dressing: PhaseDressing) -> Basis:
    if dressing.dim != A.dim:
        raise DimensionMismatch(f"dressing has dim {dressing.dim}, basis has dim {A.dim}")
    return Basis(dressing_transition(dressing) @ A.vectors, name="B~")


def row_perm_representatives(d: int) -> list[tuple]:
    """One row permutation per class that yields distinct projector sets.

    Composing a row permutation with an affine map ``x -> a x + b (mod d)``
    only reorders and rephases the basis vectors, so it suffices to fix
    ``perm[0] = 0`` and ``perm[1] = 1``: (d-2)! representatives.
    """
    if d <= 3:
        return [tuple(range(d))]
    return [(0, 1, *rest) for rest in itertools.permutations(range(2, d))]


def random_dressing(d: int, seed=None, include_perm: bool = True) -> PhaseDressing:
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0, 2 * np.pi, d)
    phases[0] = 0.0
    perm = tuple(rng.permutation(d)) if include_perm else None
    return PhaseDressing(phases, perm)


def standard_dressing(d: int, r: int) -> PhaseDressing:
    """Dressing that reproduces the projectors of standard basis ``B_r``."""
    _require_prime(d)
    k = np.arange(d)
    if d == 2:
        return PhaseDressing(np.array([0.0, 0.0 if r == 1 else np.pi / 2]))
    return PhaseDressing(2 * np.pi * np.mod(r * k**2, d) / d)


def projector_sets_equal(B1: Basis, B2: Basis, tol: float = 1e-10) -> bool:
    """True when both bases have the same set of rank-one projectors."""
    _check_dims(B1.dim, B2.dim)
    P1, P2 = B1.projectors, B2.projectors
    used = set()
    for p in P1:
        dist = np.max(np.abs(P2 - p[None]), axis=(1, 2))
        hits = [j for j in np.flatnonzero(dist <= tol) if j not in used]
        if not hits:
            return False
        used.add(hits[0])
    return True
