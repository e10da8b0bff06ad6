"""Weak values, their anomalies, and coherence witnessing.

For preselection ``rho`` and postselection ``sigma`` the weak value of an
observable O is ``tr(sigma O rho) / tr(sigma rho)``. With O a projector of
``A`` and sigma a projector of a basis unbiased with ``A``, a nonreal weak
value exists exactly when ``rho`` is coherent in ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._search import OptimizerConfig
from .core import Basis, _check_dims, is_prime
from .exceptions import NotPrime, ZeroPostselection
from .mub import FAMILY_COMPLETE_DIMS, standard_mubs

TOL_ANOM = 1e-9
TOL_WITNESS = 1e-8
TOL_POST = 1e-12

WITNESS_CONFIG = OptimizerConfig(n_starts=2, pool_factor=16, polish_rounds=1)


@dataclass(frozen=True)
class WeakValueReport:
    value: complex
    denominator: float
    anomalous: bool
    reason: str
    spectrum_range: tuple

    def to_dict(self):
        return {"value": [self.value.real, self.value.imag], "denominator": self.denominator,
                "anomalous": self.anomalous, "reason": self.reason,
                "spectrum_range": list(self.spectrum_range)}


def weak_value(O, rho, post, tol_anom: float = TOL_ANOM) -> WeakValueReport:
    """Weak value ``tr(post O rho) / tr(post rho)`` with its anomaly verdict.

    Anomalous means nonreal beyond ``tol_anom`` or real but outside the
    eigenvalue range of ``O``. Raises :class:`ZeroPostselection` when
    ``|tr(post rho)| < 1e-12``.
    """
    O = np.asarray(O, dtype=np.complex128)
    rho = np.asarray(rho, dtype=np.complex128)
    post = np.asarray(post, dtype=np.complex128)
    _check_dims(O.shape[0], rho.shape[0], post.shape[0])
    if np.max(np.abs(O - O.conj().T)) > 1e-8:
        raise ValueError("observable is not Hermitian")
    den = np.trace(post @ rho)
    if abs(den) < TOL_POST:
        raise ZeroPostselection(f"postselection probability {abs(den):.3e} vanishes")
    value = complex(np.trace(post @ O @ rho) / den)
    ev = np.linalg.eigvalsh(O)
    lo, hi = float(ev[0]), float(ev[-1])
    if abs(value.imag) > tol_anom:
        reason = "nonreal"
    elif value.real < lo - tol_anom or value.real > hi + tol_anom:
        reason = "outside_spectrum"
    else:
        reason = "none"
    return WeakValueReport(value, float(den.real), reason != "none", reason, (lo, hi))


def projector_weak_values(rho, A: Basis, B: Basis):
    """Matrix ``W[m, n]`` of weak values of ``|a_m><a_m|`` postselected on ``|b_n>``.

    Entries whose postselection probability is below 1e-12 are NaN. Also
    returns the postselection probabilities.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    _check_dims(rho.shape[0], A.dim, B.dim)
    PA, PB = A.projectors, B.projectors
    probs = np.einsum("nij,ji->n", PB, rho).real
    num = np.einsum("nij,mjk,ki->mn", PB, PA, rho)
    W = np.full(num.shape, np.nan + 0j)
    ok = np.abs(probs) > TOL_POST
    W[:, ok] = num[:, ok] / probs[ok]
    return W, probs


def coherence_from_weak_values(rho, A: Basis, B: Basis) -> float:
    """``sum_{m,n} |Im A_m^w(rho, B_n)| tr(B_n rho)``.

    Terms with vanishing postselection probability enter through the product
    ``|Im tr(B_n A_m rho)|`` directly, which is their limit.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    W, probs = projector_weak_values(rho, A, B)
    total = 0.0
    for n, p in enumerate(probs):
        if abs(p) > TOL_POST:
            total += float(np.sum(np.abs(W[:, n].imag)) * p)
        else:
            Pb = B.projectors[n]
            total += sum(abs(np.trace(Pb @ Pa @ rho).imag) for Pa in A.projectors)
    return total


@dataclass
class WitnessReport:
    found: bool
    m: int | None = None
    n: int | None = None
    basis: Basis | None = None
    weak_value: complex | None = None
    searched: list = field(default_factory=list)
    all_real_equal_diagonal: bool | None = None
    max_diagonal_deviation: float | None = None
    note: str = ""

    def to_dict(self):
        from .io import basis_to_json

        out = {"found": self.found, "searched": self.searched, "note": self.note}
        if self.found:
            out.update(m=self.m, n=self.n, basis=basis_to_json(self.basis),
                       weak_value=[self.weak_value.real, self.weak_value.imag])
        else:
            out.update(all_real_equal_diagonal=self.all_real_equal_diagonal,
                       max_diagonal_deviation=self.max_diagonal_deviation)
        return out


def witness_coherence(rho, A: Basis, cfg: OptimizerConfig | None = None,
                      tol_witness: float = TOL_WITNESS) -> WitnessReport:
    """Look for a nonreal weak value ``A_m^w(rho, B_n)`` with B unbiased with A.

    Searches the standard unbiased bases first, then the argmax basis of the
    KD coherence search over the dressed family. When nothing is found the
    report states whether every weak value met equals the population
    ``rho_mm``, as it must for an incoherent state.
    """
    from .coherence import c_kd_hat

    cfg = cfg or WITNESS_CONFIG
    rho = np.asarray(rho, dtype=np.complex128)
    d = A.dim
    if not is_prime(d):
        raise NotPrime(f"d={d} is not prime")
    diag = np.diag(A.coords(rho)).real
    searched, max_dev = [], 0.0

    def scan(B):
        nonlocal max_dev
        W, _ = projector_weak_values(rho, A, B)
        searched.append(B.name)
        valid = ~np.isnan(W)
        dev = np.abs(W - diag[:, None])
        max_dev = max(max_dev, float(np.max(np.where(valid, dev, 0.0))))
        im = np.where(valid, np.abs(W.imag), 0.0)
        m, n = np.unravel_index(np.argmax(im), im.shape)
        if im[m, n] > tol_witness:
            return WitnessReport(True, int(m), int(n), B, complex(W[m, n]), list(searched))
        return None

    for B in standard_mubs(d).Bs:
        hit = scan(B)
        if hit:
            return hit
    hit = scan(c_kd_hat(rho, A, cfg).argmax_basis)
    if hit:
        return hit
    note = "" if d in FAMILY_COMPLETE_DIMS else "not found in searched family"
    return WitnessReport(False, searched=searched, all_real_equal_diagonal=max_dev <= 1e-10,
                         max_diagonal_deviation=max_dev, note=note)
