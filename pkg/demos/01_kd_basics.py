"""
KD quasiprobabilities of a qubit
================================

A state that is diagonal in the reference basis gives a real KD matrix for
any unbiased partner basis. Coherence shows up as imaginary entries.
"""

import numpy as np

from kdcoherence import c_l1, computational_basis, imag_l1, kd_matrix, standard_mubs

np.set_printoptions(precision=4, suppress=True)

fam = standard_mubs(2)
A, B1, B2 = fam.A, fam.B(1), fam.B(2)

# |+><+| is classical against the X basis but not against the Y basis
plus = np.full((2, 2), 0.5, dtype=complex)
for B in (B1, B2):
    Q = kd_matrix(plus, A, B)
    print(B.name, "\n", Q, "\n  sum |Im Q| =", imag_l1(Q))

# a diagonal state stays real whatever partner we pick
rho = np.diag([0.8, 0.2]).astype(complex)
print("diagonal state, B_2:\n", kd_matrix(rho, A, B2))

# for qubits the best partner basis recovers the l1 coherence
print("c_l1(|+>) =", c_l1(plus, computational_basis(2)))
