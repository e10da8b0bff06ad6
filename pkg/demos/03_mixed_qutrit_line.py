"""
A one-parameter family of mixed qutrit states
=============================================

sigma(mu) = (|0><0| + |1><1|)/2 + mu(|0><1| + |1><0|), 0 <= mu <= 1/2.

The optimized value grows linearly in mu with slope 4/3. The third column is
the slope sqrt(3)/2 reference carried by the sigma-line CLI.
"""

import numpy as np

from kdcoherence.figures import sigma_line

print(f"{'mu':>5} {'c_kd_hat':>10} {'4mu/3':>10} {'sqrt3 mu/2':>11}")
for mu, val, ref, _ in sigma_line(np.linspace(0, 0.5, 6)):
    print(f"{mu:5.2f} {val:10.6f} {4 * mu / 3:10.6f} {ref:11.6f}")
