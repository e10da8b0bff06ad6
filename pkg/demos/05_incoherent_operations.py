"""
Incoherent operations cannot raise KD coherence
===============================================

Random mixtures of permute-and-phase operations within blocks of a partition
are applied to random qutrit states. The KD coherence never goes up.

The basis-transfer identity behind this needs care: with more than one block,
it only holds after removing the coherences between blocks from the input.
"""

import numpy as np

from kdcoherence import computational_basis, random_density, standard_mubs
from kdcoherence.coherence import check_pio_monotonicity
from kdcoherence.pio import UpPioSpec, random_pio_channel, transformed_identity_sides

A = computational_basis(3)
margins = []
for seed in range(20):
    rho = random_density(3, seed=seed)
    r = check_pio_monotonicity(rho, random_pio_channel(3, 2, seed), A)
    margins.append(r.rhs - r.lhs)
print(f"C(rho) - C(Phi rho) over 20 draws: min {min(margins):.4f}, mean {np.mean(margins):.4f}")

rho = random_density(3, seed=0)
B = standard_mubs(3).B(1)
spec = UpPioSpec(3, [[0, 1], [2]], [[1, 0], [2]], [0.3, 1.1, 2.0])
print("two blocks, plain form:     lhs=%.6f rhs=%.6f" % transformed_identity_sides(rho, B, spec, A))
print("two blocks, block-dephased: lhs=%.6f rhs=%.6f"
      % transformed_identity_sides(rho, B, spec, A, block_dephased=True))
