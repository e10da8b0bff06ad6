import numpy as np
import pytest
from hypothesis import given, strategies as st

from kdcoherence.core import computational_basis, pure_density, random_density, random_incoherent
from kdcoherence.kd import imag_l1, is_kd_classical, kd_distribution, kd_matrix
from kdcoherence.mub import dressed_basis, random_dressing, standard_mubs

# hand computation: |+> with B = {(1, +-i)/sqrt2}
Q_PLUS_B2 = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 4


def test_qubit_coherent_example(plus_state):
    fam = standard_mubs(2)
    Q = kd_matrix(plus_state, fam.A, fam.B(2))
    assert np.allclose(Q, Q_PLUS_B2, atol=1e-15)
    assert np.allclose(np.abs(Q.imag), 0.25)
    assert not is_kd_classical(Q)
    assert imag_l1(Q) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_basis_state_and_mixed(d):
    fam = standard_mubs(d)
    Q = kd_matrix(pure_density(np.eye(d)[0]), fam.A, fam.B(1))
    expected = np.zeros((d, d))
    expected[0] = 1 / d
    assert np.allclose(Q, expected, atol=1e-14)
    assert is_kd_classical(Q)
    Q = kd_matrix(np.eye(d) / d, fam.A, fam.B(1))
    assert np.allclose(Q, 1 / d**2, atol=1e-14)
    assert is_kd_classical(Q)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 10**6))
def test_sum_rule_and_marginals(d, seed):
    rng = np.random.default_rng(seed)
    A = computational_basis(d)
    B = dressed_basis(A, random_dressing(d, rng))
    rho = random_density(d, seed=rng)
    kd = kd_distribution(rho, A, B)
    assert abs(kd.Q.sum() - 1) < 1e-10
    assert np.allclose(kd.row_marginals(), np.diag(rho).real, atol=1e-12)
    pb = np.einsum("ni,ij,nj->n", B.vectors.conj(), rho, B.vectors).real
    assert np.allclose(kd.col_marginals(), pb, atol=1e-12)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6))
def test_incoherent_has_real_q(d, seed):
    rng = np.random.default_rng(seed)
    A = computational_basis(d)
    B = dressed_basis(A, random_dressing(d, rng))
    rho = random_incoherent(d, seed=rng)
    Q = kd_matrix(rho, A, B)
    assert imag_l1(Q) < 1e-12
    assert np.allclose(Q, np.diag(rho).real[:, None] / d, atol=1e-14)


def test_imag_l1_conjugation_symmetric():
    Q = kd_matrix(random_density(3, seed=2), *standard_mubs(3).bases[:2])
    assert imag_l1(Q) == imag_l1(Q.conj())


def test_provenance():
    fam = standard_mubs(3)
    kd = kd_distribution(np.eye(3) / 3, fam.A, fam.B(2))
    assert kd.basis_a_ref == "A" and kd.basis_b_ref == "B_2"
    assert kd.state_ref
