"""Data series for the qutrit examples: the pure-state surface and the sigma line."""

from __future__ import annotations

import io

import numpy as np

from ._search import OptimizerConfig
from .coherence import c_kd_hat, c_l1
from .core import computational_basis
from .exceptions import MuOutOfRange


def qutrit_state(l0, l1):
    """``|psi> = l0|0> + l1|1> + l2|2>`` with ``l2 = sqrt(1 - l0^2 - l1^2)``."""
    l2 = np.sqrt(max(0.0, 1.0 - l0 * l0 - l1 * l1))
    psi = np.array([l0, l1, l2], dtype=np.complex128)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def sigma_state(mu):
    """``(|0><0| + |1><1|)/2 + mu(|0><1| + |1><0|)`` on a qutrit, 0 <= mu <= 1/2."""
    if not 0 <= mu <= 0.5:
        raise MuOutOfRange(f"mu={mu} outside [0, 1/2]")
    s = np.zeros((3, 3), dtype=np.complex128)
    s[0, 0] = s[1, 1] = 0.5
    s[0, 1] = s[1, 0] = mu
    return s


def figure2_grid(resolution=41, cfg: OptimizerConfig | None = None):
    """Rows ``(l0, l1, c_kd_hat, c_l1)`` over the grid with ``l0^2 + l1^2 <= 1``."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    A = computational_basis(3)
    axis = np.linspace(0.0, 1.0, resolution)
    rows = []
    for l0 in axis:
        for l1 in axis:
            if l0 * l0 + l1 * l1 > 1 + 1e-12:
                continue
            rho = qutrit_state(l0, l1)
            rows.append((float(l0), float(l1), c_kd_hat(rho, A, cfg).value, c_l1(rho, A)))
    return rows


def sigma_line(mu_values, cfg: OptimizerConfig | None = None):
    """Rows ``(mu, c_kd_hat, sqrt(3)/2 mu, |difference|)``."""
    A = computational_basis(3)
    rows = []
    for mu in mu_values:
        val = c_kd_hat(sigma_state(mu), A, cfg).value
        ref = np.sqrt(3) / 2 * mu
        rows.append((float(mu), val, float(ref), abs(val - ref)))
    return rows


def to_csv(header, rows) -> str:
    """CSV text with 12 significant digits, independent of locale."""
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format(float(v), ".12g") for v in row) + "\n")
    return buf.getvalue()
