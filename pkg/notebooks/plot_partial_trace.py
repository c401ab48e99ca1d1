"""
Tracing out an idle system
==========================

When a Hamiltonian acts on A alone, evolving the composite A x B and then
tracing out B gives exactly the same reduced state as evolving A by itself.
This is what allows a simulator to drop a system as soon as it stops
interacting.
"""

import numpy as np

from intertrace import DensityMatrix, EvolutionParams, partial_trace, tensor_compose
from intertrace.evolution import euler_trajectory
from intertrace.hamiltonians import embed_noninteracting

rng = np.random.default_rng(0)


def random_density(n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


# a qutrit A next to a qubit B
a = DensityMatrix.single("A", random_density(3))
b = DensityMatrix.single("B", random_density(2))
g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
h_a = (g + g.conj().T) / 2

ab = tensor_compose([a, b])
print(ab)

###############################################################################
# The composite Hamiltonian is H_A x I.

h = embed_noninteracting(h_a, ab.layout, {"A"})
params = EvolutionParams(dt=1e-3, steps=300)

worst_a = worst_b = 0.0
for comp, alone in zip(euler_trajectory(ab, h, params), euler_trajectory(a, h_a, params)):
    worst_a = max(worst_a, np.abs(partial_trace(comp, "A").matrix - alone.matrix).max())
    worst_b = max(worst_b, np.abs(partial_trace(comp, "B").matrix - b.matrix).max())
print("A: composite vs standalone", worst_a)
print("B: drift from its initial state", worst_b)

###############################################################################
# Partial traces on a three-party state.  Tracing one factor, then another,
# is the same as tracing both at once.

c = DensityMatrix.single("C", random_density(2))
abc = tensor_compose([a, b, c])
one_step = partial_trace(abc, {"A", "C"})
two_steps = partial_trace(partial_trace(abc, {"A", "B"}), {"A"})
print(np.abs(one_step.matrix - np.kron(a.matrix, c.matrix)).max())
print(np.abs(two_steps.matrix - a.matrix).max())
