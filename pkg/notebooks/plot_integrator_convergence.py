"""
Euler against the exact propagator
==================================

The default integrator takes first-order Euler steps of the von Neumann
equation.  The exact integrator diagonalizes the Hamiltonian with a Jacobi
sweep and applies exp(-iHt).  Halving dt should halve the Euler error.
"""

import numpy as np

from intertrace import EvolutionParams, PairCouplingSpec, pauli_eigenstate, tensor_compose
from intertrace.cmatrix import hermitian_eig
from intertrace.evolution import evolve_euler, evolve_exact
from intertrace.hamiltonians import heisenberg_embedded

rho = tensor_compose([pauli_eigenstate("x", "+", "A"), pauli_eigenstate("y", "+", "B")])
h = heisenberg_embedded(rho.layout, PairCouplingSpec("A", "B"))

eig = hermitian_eig(h)
print("spectrum:", np.round(eig.eigenvalues, 12), "after", eig.sweeps, "sweeps")

###############################################################################
# Error at t = 0.05 for a ladder of step sizes.

t = 0.05
exact = evolve_exact(rho, h, t).matrix
prev = None
for dt in (2e-3, 1e-3, 5e-4, 2.5e-4, 1.25e-4):
    out = evolve_euler(rho, h, EvolutionParams(dt, round(t / dt)))
    err = np.abs(out.matrix - exact).max()
    ratio = "" if prev is None else f"  ratio {prev / err:.3f}"
    print(f"dt={dt:.2e}  error={err:.3e}{ratio}")
    prev = err

###############################################################################
# At t = pi/4 the Heisenberg pair swaps the two states exactly.

a = pauli_eigenstate("x", "+", "A")
b = pauli_eigenstate("z", "-", "B")
swapped = evolve_exact(tensor_compose([a, b]), heisenberg_embedded(rho.layout, PairCouplingSpec("A", "B")),
                       np.pi / 4)
print(np.abs(swapped.matrix - np.kron(b.matrix, a.matrix)).max())
