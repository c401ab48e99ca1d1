"""Random states and operators shared by the test modules."""

import numpy as np

from intertrace import DensityMatrix


def random_matrix(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian(rng, n, scale=1.0):
    g = random_matrix(rng, n)
    return scale * (g + g.conj().T) / 2


def random_density_matrix(rng, n):
    g = random_matrix(rng, n)
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_pure(rng, n):
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_state(rng, label, n=2, pure=False):
    m = random_pure(rng, n) if pure else random_density_matrix(rng, n)
    return DensityMatrix.single(label, m)


def random_chain_scenario(rng, n_incident=None, pure=None):
    """Target qubit "T" meeting random incident qubits, random couplings and steps."""
    from intertrace import EvolutionParams, Interaction, PairCouplingSpec, Scenario, SystemSpec

    if n_incident is None:
        n_incident = int(rng.integers(1, 4))
    labels = ["T"] + [f"I{k}" for k in range(1, n_incident + 1)]
    systems = []
    for label in labels:
        is_pure = bool(rng.integers(2)) if pure is None else pure
        systems.append(SystemSpec(label, random_state(rng, label, 2, pure=is_pure)))
    interactions = [
        Interaction(
            PairCouplingSpec("T", label, float(rng.uniform(0.5, 2.0))),
            EvolutionParams(1e-4, int(rng.integers(100, 501))),
        )
        for label in labels[1:]
    ]
    return Scenario(tuple(systems), tuple(interactions))
