"""
KD coherence across real qutrit pure states
===========================================

Scan |psi> = l0|0> + l1|1> + l2|2> on a coarse grid and compare the optimized
KD coherence with the l1 coherence. Prints the grid maximum and what happens
on the edges where one amplitude vanishes.
"""

import numpy as np

from kdcoherence.figures import figure2_grid

rows = np.array(figure2_grid(resolution=11))
l0, l1, kd, l1c = rows.T

i = np.argmax(kd)
print(f"max c_kd_hat = {kd[i]:.6f} at l0={l0[i]:.2f}, l1={l1[i]:.2f}  (2/sqrt3 = {2 / np.sqrt(3):.6f})")
print(f"largest excess over c_l1: {np.max(kd - l1c):.2e}")

# edges: one amplitude is zero. The ratio sits at 2/3 rather than 1.
l2 = np.sqrt(np.clip(1 - l0**2 - l1**2, 0, None))
edge = ((l0 == 0) | (l1 == 0) | (l2 < 1e-9)) & (l1c > 1e-9)
print("edge ratios c_kd_hat / c_l1:", np.unique(np.round(kd[edge] / l1c[edge], 6)))
