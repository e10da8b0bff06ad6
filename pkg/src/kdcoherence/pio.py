"""Physically incoherent operations built from permutation-phase blocks.

A UP-PIO is fixed by a partition ``S_1..S_q`` of the basis labels, a
permutation of each block and a phase per label. Its Kraus operators are::

    K_r = sum_{x in S_r} exp(i theta_x) |a_{pi(x)}><a_x|

General PIOs are convex mixtures of these, kept here as explicit
(weight, spec) pairs rather than merged Kraus lists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Basis, _check_dims, _rng, computational_basis
from .exceptions import DimensionMismatch, InvalidPartition, NotInF
from .kd import imag_l1, kd_matrix
from .mub import is_mutually_unbiased


@dataclass(frozen=True, eq=False)
class UpPioSpec:
    """Partition, per-block permutation and phases of one UP-PIO.

    ``perms[r][i]`` is the image of ``blocks[r][i]`` under the block
    permutation, so ``perms[r]`` is itself a reordering of ``blocks[r]``.
    """

    d: int
    blocks: tuple
    perms: tuple
    phases: np.ndarray

    def __post_init__(self):
        blocks = tuple(tuple(int(x) for x in b) for b in self.blocks)
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        phases = np.asarray(self.phases, dtype=float).copy()
        phases.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "phases", phases)
        labels = sorted(x for b in blocks for x in b)
        if labels != list(range(self.d)):
            raise InvalidPartition(f"blocks {blocks} do not partition range({self.d})")
        if len(perms) != len(blocks):
            raise InvalidPartition("need one permutation per block")
        for b, p in zip(blocks, perms):
            if sorted(b) != sorted(p):
                raise InvalidPartition(f"permutation {p} is not a bijection of block {b}")
        if phases.shape != (self.d,):
            raise InvalidPartition(f"need {self.d} phases, got shape {phases.shape}")

    @property
    def label_map(self) -> np.ndarray:
        """Combined permutation: ``label_map[x]`` is the image of label x."""
        pi = np.empty(self.d, dtype=int)
        for b, p in zip(self.blocks, self.perms):
            pi[list(b)] = p
        return pi

    @classmethod
    def identity(cls, d):
        return cls(d, (tuple(range(d)),), (tuple(range(d)),), np.zeros(d))

    @classmethod
    def full_dephasing(cls, d):
        singles = tuple((x,) for x in range(d))
        return cls(d, singles, singles, np.zeros(d))


@dataclass(frozen=True, eq=False)
class PioChannel:
    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), s) for w, s in self.components)
        if not comps:
            raise ValueError("channel needs at least one component")
        w = np.array([c[0] for c in comps])
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError(f"weights {w} are not a probability vector")
        if len({s.d for _, s in comps}) != 1:
            raise DimensionMismatch("components act on different dimensions")
        object.__setattr__(self, "components", comps)

    @property
    def d(self):
        return self.components[0][1].d

    @property
    def weights(self):
        return np.array([w for w, _ in self.components])

    @classmethod
    def single(cls, spec: UpPioSpec):
        return cls(((1.0, spec),))


def up_pio_kraus(spec: UpPioSpec, A: Basis | None = None) -> list[np.ndarray]:
    A = computational_basis(spec.d) if A is None else A
    _check_dims(spec.d, A.dim)
    a = A.vectors
    kraus = []
    for b, p in zip(spec.blocks, spec.perms):
        K = np.zeros((spec.d, spec.d), dtype=np.complex128)
        for x, y in zip(b, p):
            K += np.exp(1j * spec.phases[x]) * np.outer(a[y], a[x].conj())
        kraus.append(K)
    return kraus


def apply_up_pio(spec: UpPioSpec, rho, A: Basis | None = None) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    _check_dims(rho.shape[0], spec.d)
    return sum(K @ rho @ K.conj().T for K in up_pio_kraus(spec, A))


def apply_channel(channel: PioChannel, rho, A: Basis | None = None) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[0] != channel.d:
        raise DimensionMismatch(f"state has dim {rho.shape[0]}, channel has dim {channel.d}")
    out = sum(w * apply_up_pio(s, rho, A) for w, s in channel.components)
    return 0.5 * (out + out.conj().T)


def block_dephase(rho, spec: UpPioSpec, A: Basis | None = None) -> np.ndarray:
    """Remove coherences between different blocks of the partition."""
    A = computational_basis(spec.d) if A is None else A
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for b in spec.blocks:
        P = A.vectors[list(b)].T @ A.vectors[list(b)].conj()
        out += P @ rho @ P
    return out


def transformed_basis(B: Basis, spec: UpPioSpec, A: Basis | None = None) -> Basis:
    """Basis with ``|b~_n> = sum_y exp(-i theta_y) <a_{pi(y)}|b_n> |a_y>``."""
    A = computational_basis(spec.d) if A is None else A
    _check_dims(B.dim, A.dim, spec.d)
    if not is_mutually_unbiased(A, B, tol=1e-8):
        raise NotInF(f"{B.name} is not unbiased with {A.name}")
    ov = A.overlaps(B)  # <a_m|b_n>
    coeff = np.exp(-1j * spec.phases)[None, :] * ov[spec.label_map, :].T
    return Basis(coeff @ A.vectors, name=f"{B.name}~")


def transformed_identity_sides(rho, B: Basis, spec: UpPioSpec, A: Basis | None = None,
                               block_dephased: bool = False):
    """Both sides of ``sum|Im Q^{AB}(Phi rho)| = sum|Im Q^{AB~}(rho)|``.

    With ``block_dephased`` the right side uses the block-dephased input,
    which is the form that holds for partitions with more than one block.
    """
    A = computational_basis(spec.d) if A is None else A
    lhs = imag_l1(kd_matrix(apply_up_pio(spec, rho, A), A, B))
    src = block_dephase(rho, spec, A) if block_dephased else rho
    rhs = imag_l1(kd_matrix(src, A, transformed_basis(B, spec, A)))
    return lhs, rhs


def random_set_partition(d: int, rng) -> list[list[int]]:
    """Chinese-restaurant draw: label x opens a new block w.p. 1/(x+1)."""
    blocks: list[list[int]] = []
    for x in range(d):
        u = rng.uniform() * (x + 1)
        acc = 0.0
        for b in blocks:
            acc += len(b)
            if u < acc:
                b.append(x)
                break
        else:
            blocks.append([x])
    return blocks


def random_up_pio(d: int, seed=None) -> UpPioSpec:
    if d < 2:
        raise ValueError("d must be at least 2")
    rng = _rng(seed)
    blocks = random_set_partition(d, rng)
    perms = [list(rng.permutation(b)) for b in blocks]
    phases = rng.uniform(0, 2 * np.pi, d)
    return UpPioSpec(d, blocks, perms, phases)


def random_pio_channel(d: int, n_components: int = 3, seed=None) -> PioChannel:
    rng = _rng(seed)
    w = rng.dirichlet(np.ones(n_components))
    w[-1] = 1 - w[:-1].sum()
    return PioChannel(tuple((float(wi), random_up_pio(d, rng)) for wi in w))
