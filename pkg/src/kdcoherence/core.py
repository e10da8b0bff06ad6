"""Linear-algebra substrate: density operators, bases, sampling, dephasing.

Density operators are plain ``complex128`` arrays of shape ``(d, d)``; use
:func:`validate_density` to check one. Bases are :class:`Basis` values that
hold their vectors explicitly as rows, so ``basis.vectors[n]`` is ``|b_n>``
in computational coordinates.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionMismatch,
    NotHermitian,
    NotOrthonormal,
    NotPositive,
    TraceNotOne,
)

TOL_HERM = 1e-8
TOL_GRAM = 1e-8
TOL_TRACE = 1e-10
TOL_PSD = 1e-8
TOL_NORM = 1e-10


def _frozen(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Basis:
    """Ordered orthonormal basis stored as explicit row vectors.

    Parameters
    ----------
    vectors : array_like, shape (d, d)
        Row ``n`` holds the amplitudes of the n-th basis vector.
    name : str
        Label used for provenance in KD distributions and reports.
    check : bool
        Verify the Gram matrix against the identity within ``tol_gram``.
    """

    vectors: np.ndarray
    name: str = "basis"
    tol_gram: float = field(default=TOL_GRAM, repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        v = _frozen(self.vectors)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(f"basis needs d vectors of length d, got shape {v.shape}")
        object.__setattr__(self, "vectors", v)
        if self.check:
            err = gram_error(v)
            if err > self.tol_gram:
                raise NotOrthonormal(f"Gram matrix deviates from identity by {err:.3e}")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, n):
        return self.vectors[n]

    @property
    def projectors(self) -> np.ndarray:
        """Stack of rank-one projectors ``|v_n><v_n|``, shape (d, d, d)."""
        v = self.vectors
        return v[:, :, None] * v[:, None, :].conj()

    def coords(self, op: np.ndarray) -> np.ndarray:
        """Matrix elements ``<v_m|op|v_n>``."""
        return self.vectors.conj() @ op @ self.vectors.T

    def overlaps(self, other: "Basis") -> np.ndarray:
        """Inner products ``<self_m|other_n>``."""
        _check_dims(self.dim, other.dim)
        return self.vectors.conj() @ other.vectors.T

    def renamed(self, name: str) -> "Basis":
        return Basis(self.vectors, name=name, check=False)


def gram_error(vectors) -> float:
    v = np.asarray(vectors)
    g = v.conj() @ v.T
    return float(np.max(np.abs(g - np.eye(v.shape[0]))))


def computational_basis(d: int) -> Basis:
    return Basis(np.eye(d), name="A")


def _check_dims(*dims):
    if len(set(dims)) != 1:
        raise DimensionMismatch(f"dimensions differ: {dims}")


def validate_density(raw, tol_herm=TOL_HERM, tol_trace=TOL_TRACE, tol_psd=TOL_PSD) -> np.ndarray:
    """Check a matrix against the density-operator invariants.

    Returns a read-only ``complex128`` copy. Raises :class:`NotHermitian`,
    :class:`TraceNotOne` or :class:`NotPositive` carrying the size of the
    violation in ``magnitude``.
    """
    rho = np.asarray(raw, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density operator must be square, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > tol_herm:
        raise NotHermitian(f"Hermiticity violated by {herm:.3e}", herm)
    tr = np.trace(rho)
    if abs(tr - 1) > tol_trace:
        raise TraceNotOne(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, not 1", abs(tr - 1))
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if min_eig < -tol_psd:
        raise NotPositive(f"smallest eigenvalue {min_eig:.3e} is negative", min_eig)
    return _frozen(rho)


def pure_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1) > TOL_NORM:
        raise ValueError(f"state vector has norm {nrm:.12g}")
    return _frozen(np.outer(psi, psi.conj()))


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pure_state(d: int, seed=None) -> np.ndarray:
    """Haar-random unit vector from a normalized complex Gaussian sample."""
    if d < 2:
        raise ValueError("d must be at least 2")
    rng = _rng(seed)
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_density(d: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Ginibre (Hilbert-Schmidt for full rank) random state ``GG^+/tr(GG^+)``."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_incoherent(d: int, basis: Basis | None = None, seed=None) -> np.ndarray:
    """Random state diagonal in ``basis`` with Dirichlet(1,...,1) populations."""
    rng = _rng(seed)
    p = rng.dirichlet(np.ones(d))
    if basis is None:
        return np.diag(p).astype(np.complex128)
    _check_dims(d, basis.dim)
    return np.einsum("m,mij->ij", p, basis.projectors)


def dephase(rho, basis: Basis) -> np.ndarray:
    """Remove all coherences of ``rho`` in ``basis``."""
    rho = np.asarray(rho, dtype=np.complex128)
    _check_dims(rho.shape[0], basis.dim)
    pops = np.einsum("mi,ij,mj->m", basis.vectors.conj(), rho, basis.vectors).real
    return np.einsum("m,mij->ij", pops, basis.projectors)


def offdiag_l1(rho, basis: Basis | None = None) -> float:
    """Sum of moduli of off-diagonal entries of ``rho`` in ``basis``."""
    rho = np.asarray(rho, dtype=np.complex128)
    r = rho if basis is None else basis.coords(rho)
    return float(np.abs(r).sum() - np.abs(np.diag(r)).sum())


def state_ref(rho) -> str:
    """Short content hash used as provenance tag for a state."""
    a = np.ascontiguousarray(np.asarray(rho, dtype=np.complex128))
    return "rho:" + hashlib.sha1(a.tobytes()).hexdigest()[:12]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True
