"""
Weak values as coherence witnesses
==================================

Preselect rho, weakly measure a reference projector, postselect on an unbiased
basis. A nonreal weak value appears only if rho is coherent; for diagonal
states every weak value equals the population rho_mm.
"""

import numpy as np

from kdcoherence import computational_basis, random_density, random_incoherent, standard_mubs, witness_coherence
from kdcoherence.weak_values import projector_weak_values

A = computational_basis(3)

rho = random_density(3, seed=1)
w = witness_coherence(rho, A)
print(f"random state: found={w.found}, basis {w.basis.name}, m={w.m}, n={w.n}, weak value {w.weak_value:.4f}")

inc = random_incoherent(3, seed=1)
w = witness_coherence(inc, A)
print(f"diagonal state: found={w.found}, weak values equal populations: {w.all_real_equal_diagonal}")

W, probs = projector_weak_values(inc, A, standard_mubs(3).B(1))
print("weak values:\n", np.round(W, 6), "\npopulations:", np.round(np.diag(inc).real, 6))
