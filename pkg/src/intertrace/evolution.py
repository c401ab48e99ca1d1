"""
Time evolution of density matrices.

The default integrator is the explicit Euler recursion

    rho <- rho + i dt (rho H - H rho)

applied verbatim (no renormalization or Hermitization between steps), which
is first order in ``dt``. :func:`evolve_exact` conjugates with the exact
propagator ``exp(-i H t)`` and serves as the reference solution.
"""

from dataclasses import dataclass

import numpy as np

from . import cmatrix
from .cmatrix import HERMITIAN_TOL
from .exceptions import DimensionError, NotHermitianError

PAPER_DT = 1e-4
PAPER_STEPS = 500


@dataclass(frozen=True)
class EvolutionParams:
    dt: float = PAPER_DT
    steps: int = PAPER_STEPS

    def __post_init__(self):
        if not self.dt > 0 or not np.isfinite(self.dt):
            raise ValueError(f"dt must be a positive finite number, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ValueError(f"steps must be a non-negative integer, got {self.steps}")
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def duration(self):
        return self.dt * self.steps


def _check(rho, h, tol=HERMITIAN_TOL):
    h = cmatrix.as_matrix(h)
    if h.shape[0] != rho.dim:
        raise DimensionError(
            f"Hamiltonian dim {h.shape[0]} does not match state dim {rho.dim}"
        )
    defect = cmatrix.hermiticity_defect(h)
    if defect > tol:
        raise NotHermitianError(f"Hamiltonian is not Hermitian (max asymmetry {defect:.3e})")
    return h


def _euler_update(m, h, dt):
    return m + 1j * dt * (m @ h - h @ m)


def euler_step(rho, h, dt):
    h = _check(rho, h)
    return rho.with_matrix(_euler_update(rho.matrix, h, dt))


def euler_trajectory(rho, h, params):
    """Yield the state after each of ``params.steps`` Euler steps."""
    h = _check(rho, h)
    m = rho.matrix
    for _ in range(params.steps):
        m = _euler_update(m, h, params.dt)
        yield rho.with_matrix(m)


def evolve_euler(rho, h, params):
    h = _check(rho, h)
    m = rho.matrix
    dt = params.dt
    for _ in range(params.steps):
        m = _euler_update(m, h, dt)
    return rho.with_matrix(m)


def evolve_exact(rho, h, t):
    """``U rho U^dagger`` with ``U = exp(-i H t)``.

    This matches the Euler recursion's sign convention
    ``d rho / dt = i (rho H - H rho)``.
    """
    h = _check(rho, h)
    u = cmatrix.unitary_propagator(h, t)
    return rho.with_matrix(u @ rho.matrix @ u.conj().T)
