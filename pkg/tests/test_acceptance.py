"""Acceptance criteria, each at its stated tolerance.

A summary line per criterion is printed in the terminal summary. Criteria 2,
the literal form of 5, and the boundary part of 9 fail against this
implementation; the reasons are recorded in the project notes and the
sigma-line / verify outputs report the numbers.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import record_acceptance
from kdcoherence._search import OptimizerConfig
from kdcoherence.coherence import c_kd_hat, c_l1, check_convexity, check_pio_monotonicity
from kdcoherence.core import computational_basis, pure_density, random_density, random_pure_state
from kdcoherence.figures import figure2_grid, qutrit_state, sigma_state
from kdcoherence.geometry import sample_rng, verify_theorem1
from kdcoherence.kd import kd_distribution
from kdcoherence.mub import PhaseDressing, dressed_basis, random_dressing, standard_mubs
from kdcoherence.pio import random_pio_channel, random_up_pio, transformed_identity_sides, up_pio_kraus
from kdcoherence.verify import verify_theorem3

A3 = computational_basis(3)
TARGET_MAX = 2 / np.sqrt(3)


def test_01_qutrit_maximum():
    t0 = time.perf_counter()
    value = c_kd_hat(qutrit_state(1 / np.sqrt(3), 1 / np.sqrt(3)), A3).value
    dt = time.perf_counter() - t0
    err = abs(value - TARGET_MAX)
    ok = err <= 1e-4 and dt < 30
    record_acceptance(1, "maximum", ok, f"value={value:.9f} err={err:.2e} time={dt:.2f}s")
    assert ok


def test_02_sigma_line():
    t0 = time.perf_counter()
    rows = []
    for mu in (0.1, 0.2, 0.3, 0.4, 0.5):
        value = c_kd_hat(sigma_state(mu), A3).value
        rows.append((mu, value, np.sqrt(3) / 2 * mu))
    dt = time.perf_counter() - t0
    worst = max(abs(v - r) for _, v, r in rows)
    ok = worst <= 1e-4 and dt < 120
    shown = " ".join(f"mu={m}:{v:.5f}/{r:.5f}" for m, v, r in rows)
    record_acceptance(2, "sigma line", ok, f"worst err={worst:.3e} time={dt:.1f}s {shown}")
    assert ok, f"c_kd_hat(sigma(mu)) vs reference: {shown}"


def test_03_qubit_equivalence():
    A = computational_basis(2)
    cfg = OptimizerConfig(n_starts=8)
    rng = np.random.default_rng(3)
    worst_closed = worst_search = 0.0
    for i in range(200):
        rho = pure_density(random_pure_state(2, rng)) if i % 2 else random_density(2, seed=rng)
        ref = c_l1(rho, A)
        worst_closed = max(worst_closed, abs(c_kd_hat(rho, A).value - ref))
        worst_search = max(worst_search, abs(c_kd_hat(rho, A, cfg, closed_form=False).value - ref))
    ok = max(worst_closed, worst_search) <= 1e-6
    record_acceptance(3, "qubit equivalence", ok,
                      f"200 states, worst closed-form err={worst_closed:.1e}, search err={worst_search:.1e}")
    assert ok


@pytest.mark.parametrize("d", [2, 3, 5])
def test_04_theorem1_suite(d):
    rep = verify_theorem1(d, 1, 2, n_samples=500, seed=d, tol=1e-9, raise_on_failure=False)
    counts = ", ".join(f"{k} {c.passed}/{c.passed + c.failed}" for k, c in rep.checks.items())
    record_acceptance(4, f"d={d}", rep.ok, counts)
    assert rep.ok, rep.counterexamples[:1]


def _identity_triples(d, n=500):
    A = computational_basis(d)
    for i in range(n):
        rng = sample_rng(5, d, i)
        rho = random_density(d, seed=rng)
        perm = tuple(rng.permutation(d))
        B = dressed_basis(A, PhaseDressing(rng.uniform(0, 2 * np.pi, d), perm))
        yield rho, B, random_up_pio(d, rng), A


@pytest.mark.parametrize("d", [2, 3, 5])
def test_05_transformed_identity_literal(d):
    errs, blocks = [], []
    for rho, B, spec, A in _identity_triples(d):
        lhs, rhs = transformed_identity_sides(rho, B, spec, A)
        errs.append(abs(lhs - rhs))
        blocks.append(len(spec.blocks))
    errs, blocks = np.array(errs), np.array(blocks)
    bad = errs > 1e-10
    ok = not bad.any()
    record_acceptance(5, f"literal d={d}", ok,
                      f"{bad.sum()}/500 violate, worst={errs.max():.3e}, "
                      f"all violations multi-block: {bool(np.all(blocks[bad] > 1))}")
    assert ok, f"{bad.sum()} of 500 triples violate the identity, worst error {errs.max():.3e}"


@pytest.mark.parametrize("d", [2, 3, 5])
def test_05_transformed_identity_block_dephased(d):
    worst = 0.0
    for rho, B, spec, A in _identity_triples(d):
        lhs, rhs = transformed_identity_sides(rho, B, spec, A, block_dephased=True)
        worst = max(worst, abs(lhs - rhs))
    ok = worst <= 1e-10
    record_acceptance(5, f"block-dephased d={d}", ok, f"worst={worst:.1e}")
    assert ok


def test_06_pio_monotonicity():
    cfg = OptimizerConfig()
    worst, violations = np.inf, 0
    for i in range(200):
        rng = sample_rng(6, 0, i)
        rho = random_density(3, seed=rng)
        ch = random_pio_channel(3, int(rng.integers(1, 4)), rng)
        r = check_pio_monotonicity(rho, ch, A3, cfg, slack=1e-6)
        worst = min(worst, r.margin)
        violations += not r.passed
    ok = violations == 0
    record_acceptance(6, "monotonicity", ok, f"200 pairs, violations={violations}, min margin={worst:.3e}")
    assert ok


def test_07_convexity():
    cfg = OptimizerConfig()
    worst, violations = np.inf, 0
    for i in range(200):
        rng = sample_rng(7, 0, i)
        states = [random_density(3, seed=rng), random_density(3, seed=rng)]
        p = rng.uniform()
        r = check_convexity(states, [p, 1 - p], A3, cfg, slack=1e-6)
        worst = min(worst, r.margin)
        violations += not r.passed
    ok = violations == 0
    record_acceptance(7, "convexity", ok, f"200 mixtures, violations={violations}, min margin={worst:.3e}")
    assert ok


@pytest.mark.parametrize("d", [2, 3, 5])
def test_08_theorem3_suite(d):
    rep = verify_theorem3(d, n_samples=500, seed=d)
    counts = ", ".join(f"{k} {c.passed}/{c.passed + c.failed}" for k, c in rep.checks.items())
    record_acceptance(8, f"d={d}", rep.ok, counts)
    assert rep.ok, rep.counterexamples[:1]


@pytest.fixture(scope="module")
def grid():
    return np.array(figure2_grid(41))


def test_09_upper_bound(grid):
    gap = np.max(grid[:, 2] - grid[:, 3])
    ok = gap <= 1e-6
    record_acceptance(9, "c_kd_hat <= c_l1", ok, f"{len(grid)} points, max excess={gap:.2e}")
    assert ok


def test_09_grid_maximum(grid):
    i = np.argmax(grid[:, 2])
    err = abs(grid[i, 2] - TARGET_MAX)
    ok = err <= 2e-3
    record_acceptance(9, "grid maximum", ok, f"{grid[i, 2]:.6f} at ({grid[i, 0]:.3f}, {grid[i, 1]:.3f})")
    assert ok


def test_09_boundary_saturation(grid):
    l2 = np.sqrt(np.clip(1 - grid[:, 0] ** 2 - grid[:, 1] ** 2, 0, None))
    edge = (grid[:, 0] == 0) | (grid[:, 1] == 0) | (l2 < 1e-9)
    diff = np.abs(grid[edge, 2] - grid[edge, 3])
    bad = diff > 1e-4
    ok = not bad.any()
    ratio = grid[edge, 2][bad] / grid[edge, 3][bad] if bad.any() else np.array([1.0])
    record_acceptance(9, "boundary equality", ok,
                      f"{bad.sum()}/{edge.sum()} boundary points off by >1e-4, "
                      f"worst={diff.max():.4f}, c_kd_hat/c_l1 in [{ratio.min():.4f}, {ratio.max():.4f}]")
    assert ok, f"{bad.sum()} boundary points with c_kd_hat != c_l1, worst {diff.max():.4f}"


def test_10_structural_invariants():
    rng = np.random.default_rng(10)
    worst_sum = worst_kraus = worst_mub = 0.0
    n = 0
    for i in range(1200):
        d = (2, 3, 5, 7, 11)[i % 5]
        A = computational_basis(d)
        B = dressed_basis(A, random_dressing(d, rng))
        rho = random_density(d, seed=rng)
        worst_sum = max(worst_sum, abs(kd_distribution(rho, A, B).Q.sum() - 1))
        ks = up_pio_kraus(random_up_pio(d, rng))
        worst_kraus = max(worst_kraus, np.max(np.abs(sum(K.conj().T @ K for K in ks) - np.eye(d))))
        worst_mub = max(worst_mub, np.max(np.abs(np.abs(A.overlaps(B)) ** 2 - 1 / d)))
        n += 1
    for d in (2, 3, 5, 7, 11):
        for X, Y in itertools.combinations(standard_mubs(d).bases, 2):
            worst_mub = max(worst_mub, np.max(np.abs(np.abs(X.overlaps(Y)) ** 2 - 1 / d)))
    ok = worst_sum <= 1e-10 and worst_kraus <= 1e-12 and worst_mub <= 1e-10
    record_acceptance(10, "structural", ok, f"{n} instances, sum rule {worst_sum:.1e}, "
                                            f"Kraus {worst_kraus:.1e}, MUB overlap {worst_mub:.1e}")
    assert ok
