"""KD-based coherence quantifiers and checks of their monotone properties.

``c_kd_hat`` maximizes the imaginary-part l1 norm of the KD matrix over
bases unbiased with ``A``; ``c_kd_all_bases`` maximizes the same quantity
over every orthonormal basis. Both return a :class:`CoherenceEstimate` whose
value is re-evaluated at the returned basis, so it is always attained.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ._search import OptimizerConfig, imag_l1_batch, search_family
from .core import Basis, _check_dims, gram_error, is_prime, random_density
from .exceptions import NotPrime, OptimizerDiverged
from .geometry import is_incoherent
from .kd import imag_l1, kd_matrix
from .mub import FAMILY_COMPLETE_DIMS, PhaseDressing, dressed_basis, standard_mubs
from .pio import PioChannel, apply_channel, transformed_identity_sides

log = logging.getLogger(__name__)

EXACT = "exact_closed_form"
FAMILY_COMPLETE = "family_complete_optimum"
LOWER_BOUND = "lower_bound"

SLACK = 1e-6
TOL_ZERO = 1e-9


@dataclass(frozen=True, eq=False)
class CoherenceEstimate:
    value: float
    argmax_basis: Basis
    guarantee: str
    optimizer_trace: dict = field(default_factory=dict)

    def to_dict(self):
        from .io import basis_to_json

        return {
            "value": self.value,
            "guarantee": self.guarantee,
            "argmax_basis": basis_to_json(self.argmax_basis),
            "optimizer_trace": self.optimizer_trace,
        }


def _coords(rho, A):
    rho = np.asarray(rho, dtype=np.complex128)
    _check_dims(rho.shape[0], A.dim)
    return A.coords(rho)


def c_l1(rho, A: Basis) -> float:
    """Unnormalized l1 coherence: sum of off-diagonal moduli in ``A``."""
    r = _coords(rho, A)
    return float(np.abs(r).sum() - np.abs(np.diag(r)).sum())


def _guarantee(d):
    if d == 2:
        return EXACT
    return FAMILY_COMPLETE if d in FAMILY_COMPLETE_DIMS else LOWER_BOUND


def c_kd_hat(rho, A: Basis, cfg: OptimizerConfig | None = None, closed_form: bool = True,
             extra_phases=()) -> CoherenceEstimate:
    """Maximum of ``imag_l1`` of the KD matrix over bases unbiased with ``A``.

    For d = 2 the maximum equals the l1 coherence and is returned in closed
    form unless ``closed_form=False``. Otherwise a multi-start simplex search
    runs over the dressed-DFT family.
    """
    cfg = cfg or OptimizerConfig()
    d = A.dim
    if not is_prime(d):
        raise NotPrime(f"d={d} is not prime")
    r = _coords(rho, A)
    if not np.all(np.isfinite(r)):
        raise OptimizerDiverged("state has non-finite entries")

    if d == 2 and closed_form:
        theta = np.pi / 2 - np.angle(r[0, 1]) if abs(r[0, 1]) > 0 else 0.0
        basis = dressed_basis(A, PhaseDressing(np.array([0.0, theta])))
        trace = {"starts": 0, "iterations": 0, "method": "closed_form"}
        return CoherenceEstimate(c_l1(rho, A), basis, EXACT, trace)

    res = search_family(r, imag_l1_batch, cfg, extra_phases=extra_phases)
    basis = dressed_basis(A, PhaseDressing(res.phases, res.perm))
    value = imag_l1(kd_matrix(rho, A, basis))
    if not np.isfinite(value):
        raise OptimizerDiverged("non-finite optimum")

    std_best = max(imag_l1(kd_matrix(rho, A, B)) for B in standard_mubs(d).Bs)
    trace = dict(res.trace, method="multistart_nelder_mead", standard_mub_best=std_best)
    if value > std_best + 1e-6:
        log.info("optimum %.9g exceeds best standard unbiased basis %.9g", value, std_best)
        trace["exceeds_standard_by"] = value - std_best
    return CoherenceEstimate(value, basis.renamed("argmax"), _guarantee(d), trace)


def _hermitian_from(x, d):
    H = np.zeros((d, d), dtype=np.complex128)
    H[np.diag_indices(d)] = x[:d]
    iu = np.triu_indices(d, 1)
    m = len(iu[0])
    H[iu] = x[d:d + m] + 1j * x[d + m:]
    H[(iu[1], iu[0])] = np.conj(H[iu])
    return H


def _expi(H):
    w, V = np.linalg.eigh(H)
    return (V * np.exp(1j * w)) @ V.conj().T


def c_kd_all_bases(rho, A: Basis, cfg: OptimizerConfig | None = None,
                   warm_start: bool = True) -> CoherenceEstimate:
    """Lower estimate of the maximum over all orthonormal bases.

    Each local search moves a start basis by ``exp(iH)`` with Hermitian H.
    Starts: random Haar bases screened from a pool, plus (with
    ``warm_start``) the standard unbiased bases and the optimum of
    :func:`c_kd_hat`, so the result is never below that value.
    """
    from scipy.optimize import minimize

    cfg = cfg or OptimizerConfig()
    rho = np.asarray(rho, dtype=np.complex128)
    d = A.dim
    _check_dims(rho.shape[0], d)
    rng = np.random.default_rng(cfg.seed)

    def value_of(V):
        return imag_l1(kd_matrix(rho, A, Basis(V, check=False)))

    starts = []
    if warm_start:
        if is_prime(d):
            starts += [B.vectors for B in standard_mubs(d).Bs]
            starts.append(c_kd_hat(rho, A, cfg).argmax_basis.vectors)
    pool = []
    for _ in range(max(cfg.n_starts, 4)):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, rr = np.linalg.qr(g)
        q = q * (np.diag(rr) / np.abs(np.diag(rr)))
        pool.append(q.T @ A.vectors)
    pool.sort(key=lambda V: -value_of(V))
    starts += pool[: max(2, cfg.n_starts // 4)]

    best_val, best_V, per_start, nfev = -np.inf, None, [], 0
    for V0 in starts:
        def neg(x, V0=V0):
            return -value_of(V0 @ _expi(_hermitian_from(x, d)).T)

        res = minimize(neg, np.zeros(d * d), method="Nelder-Mead",
                       options={"maxiter": cfg.max_iters, "xatol": 1e-9, "fatol": 1e-12,
                                "adaptive": True,
                                "initial_simplex": np.vstack([np.zeros(d * d), 0.3 * np.eye(d * d)])})
        if not np.isfinite(res.fun):
            raise OptimizerDiverged("non-finite objective")
        nfev += res.nfev
        V = V0 @ _expi(_hermitian_from(res.x, d)).T
        val = value_of(V)
        if val < value_of(V0):
            val, V = value_of(V0), V0
        per_start.append(val)
        if val > best_val + 1e-15:
            best_val, best_V = val, V

    if gram_error(best_V) > 1e-8:
        raise OptimizerDiverged("search left the set of orthonormal bases")
    basis = Basis(best_V, name="argmax", check=False)
    value = value_of(basis.vectors)
    guarantee = EXACT if (d == 2 and warm_start) else LOWER_BOUND
    trace = {"starts": len(starts), "iterations": nfev, "best_per_start": per_start,
             "method": "multistart_unitary_chart"}
    return CoherenceEstimate(value, basis, guarantee, trace)


@dataclass(frozen=True)
class FaithfulnessCheck:
    value: float
    vanishes: bool
    incoherent: bool

    @property
    def consistent(self) -> bool:
        return self.vanishes == self.incoherent

    def __bool__(self):
        return self.consistent


def check_faithfulness(rho, A: Basis, cfg: OptimizerConfig | None = None,
                       tol: float = TOL_ZERO, tol_incoherent: float = TOL_ZERO) -> FaithfulnessCheck:
    """Compare ``c_kd_hat == 0`` with incoherence; truthy when they agree."""
    value = c_kd_hat(rho, A, cfg).value
    return FaithfulnessCheck(value, value <= tol, is_incoherent(rho, A, tol_incoherent))


@dataclass
class InequalityReport:
    lhs: float
    rhs: float
    slack: float
    advisory: bool = False
    details: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.rhs + self.slack - self.lhs

    @property
    def passed(self) -> bool:
        return self.margin >= 0

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "slack": self.slack, "passed": self.passed,
                "advisory": self.advisory, **self.details}


def check_convexity(states, weights, A: Basis, cfg: OptimizerConfig | None = None,
                    slack: float = SLACK) -> InequalityReport:
    """``C(sum p_i rho_i) <= sum p_i C(rho_i)`` with one config for every term."""
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("weights must form a probability vector")
    mix = sum(w * np.asarray(s, dtype=np.complex128) for w, s in zip(weights, states))
    lhs = c_kd_hat(mix, A, cfg).value
    parts = [c_kd_hat(s, A, cfg).value for s in states]
    rhs = float(np.dot(weights, parts))
    return InequalityReport(lhs, rhs, slack, advisory=A.dim not in FAMILY_COMPLETE_DIMS,
                            details={"terms": parts})


def check_pio_monotonicity(rho, channel: PioChannel, A: Basis, cfg: OptimizerConfig | None = None,
                           slack: float = SLACK, n_bases: int = 4, seed: int = 0) -> InequalityReport:
    """``C(Phi(rho)) <= C(rho)`` plus the optimizer-free transformed-basis identity.

    The identity is checked per channel component on the standard unbiased
    bases and the argmax basis of ``C(Phi(rho))``, using the block-dephased
    input. Mismatches of the plain (undephased) form are counted separately.
    """
    out = apply_channel(channel, rho, A)
    est_out = c_kd_hat(out, A, cfg)
    est_in = c_kd_hat(rho, A, cfg)
    d = A.dim
    bases = [est_out.argmax_basis]
    if is_prime(d):
        bases += list(standard_mubs(d).Bs[:n_bases])
    worst = 0.0
    plain_mismatch = 0
    for _, spec in channel.components:
        for B in bases:
            lhs, rhs = transformed_identity_sides(rho, B, spec, A, block_dephased=True)
            worst = max(worst, abs(lhs - rhs))
            lhs_p, rhs_p = transformed_identity_sides(rho, B, spec, A, block_dephased=False)
            plain_mismatch += abs(lhs_p - rhs_p) > 1e-10
    return InequalityReport(
        est_out.value, est_in.value, slack, advisory=d not in FAMILY_COMPLETE_DIMS,
        details={"identity_worst_error": worst, "identity_ok": worst <= 1e-10,
                 "plain_identity_mismatches": int(plain_mismatch)},
    )


def _delta_sum(p):
    return np.sqrt(np.clip(p * (1 - p), 0, None)).sum(axis=-1)


@dataclass
class UncertaintyReport:
    lhs: float
    rhs: float
    sum_delta_a: float
    max_sum_delta_b: float
    slack: float = SLACK

    @property
    def passed(self):
        return self.lhs <= self.rhs + self.slack

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "sum_delta_a": self.sum_delta_a,
                "max_sum_delta_b": self.max_sum_delta_b, "passed": self.passed}


def uncertainty_bound(rho, A: Basis, cfg: OptimizerConfig | None = None,
                      slack: float = SLACK) -> UncertaintyReport:
    """Compare ``c_kd_hat`` with the sum of projector standard deviations.

    For a rank-one projector P, ``Delta(P) = sqrt(p (1 - p))`` with
    ``p = tr(P rho)``. The right side multiplies the A-sum by the maximum
    B-sum over the dressed family; the argmax of ``c_kd_hat`` seeds that
    search so the two sides are compared on a common basis.
    """
    cfg = cfg or OptimizerConfig()
    d = A.dim
    if not is_prime(d):
        raise NotPrime(f"d={d} is not prime")
    est = c_kd_hat(rho, A, cfg)
    r = _coords(rho, A)
    sum_a = float(_delta_sum(np.diag(r).real))

    def objective(Q):
        return _delta_sum(Q.sum(axis=-2).real)

    seed_phases = _phases_of(est.argmax_basis, A)
    res = search_family(r, objective, cfg, extra_phases=seed_phases)
    at_argmax = float(_delta_sum(kd_matrix(rho, A, est.argmax_basis).sum(axis=0).real))
    max_b = max(res.value, at_argmax)
    return UncertaintyReport(est.value, sum_a * max_b, sum_a, max_b, slack)


def _phases_of(B: Basis, A: Basis):
    """Row phases reproducing ``B`` when its permutation is the identity.

    Only exact for identity-permutation members; otherwise the point is just
    an extra start for the search.
    """
    T = A.overlaps(B)  # <a_k|b_n>
    return np.angle(T[:, 0] / T[0, 0])


def random_binary_mixture(d, seed=None):
    rng = np.random.default_rng(seed)
    p = rng.uniform()
    return [random_density(d, seed=rng), random_density(d, seed=rng)], np.array([p, 1 - p])
