import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intertrace.evolution import (
    EvolutionParams,
    euler_step,
    euler_trajectory,
    evolve_euler,
    evolve_exact,
)
from intertrace.exceptions import DimensionError, NotHermitianError
from intertrace.hamiltonians import PairCouplingSpec, embed_noninteracting, heisenberg_embedded
from intertrace.quantum import (
    DensityMatrix,
    SubsystemLayout,
    measure_prob,
    partial_trace,
    pauli_eigenstate,
    tensor_compose,
)
from strategies import random_density_matrix, random_hermitian, random_state

seeds = st.integers(min_value=0, max_value=2**32 - 1)
SX = np.array([[0, 1], [1, 0]], dtype=complex)


def paper_pair():
    rho = tensor_compose([pauli_eigenstate("x", "+", "A"), pauli_eigenstate("y", "+", "B")])
    return rho, heisenberg_embedded(rho.layout, PairCouplingSpec("A", "B"))


def test_params_defaults_and_validation():
    p = EvolutionParams()
    assert (p.dt, p.steps) == (1e-4, 500)
    assert p.duration == pytest.approx(0.05)
    with pytest.raises(ValueError):
        EvolutionParams(0.0, 10)
    with pytest.raises(ValueError):
        EvolutionParams(1e-3, -1)


class TestEulerStep:
    def test_zero_hamiltonian(self, rng):
        rho = random_state(rng, "q", 3)
        out = euler_step(rho, np.zeros((3, 3)), 0.1)
        np.testing.assert_array_equal(out.matrix, rho.matrix)

    def test_hand_evaluated(self):
        # rho sx - sx rho = [[0, 1], [-1, 0]] for rho = diag(1, 0)
        rho = DensityMatrix.single("q", np.diag([1.0, 0.0]))
        out = euler_step(rho, SX, 1e-4)
        np.testing.assert_allclose(out.matrix, [[1, 1e-4j], [-1e-4j, 0]], atol=1e-20)

    def test_trace_and_hermiticity(self, rng):
        rho = random_state(rng, "q", 4)
        out = euler_step(rho, random_hermitian(rng, 4), 1e-2)
        assert abs(np.trace(out.matrix) - np.trace(rho.matrix)) <= 1e-15
        assert np.max(np.abs(out.matrix - out.matrix.conj().T)) <= 1e-15
        assert out.layout == rho.layout

    def test_dim_mismatch(self, rng):
        with pytest.raises(DimensionError):
            euler_step(random_state(rng, "q", 2), np.eye(3), 1e-3)

    def test_non_hermitian(self, rng):
        with pytest.raises(NotHermitianError):
            euler_step(random_state(rng, "q", 2), np.array([[0, 1], [0, 0]]), 1e-3)


class TestEvolveEuler:
    def test_zero_steps(self, rng):
        rho = random_state(rng, "q")
        out = evolve_euler(rho, random_hermitian(rng, 2), EvolutionParams(1e-3, 0))
        np.testing.assert_array_equal(out.matrix, rho.matrix)

    def test_matches_repeated_steps(self, rng):
        rho = random_state(rng, "q", 3)
        h = random_hermitian(rng, 3)
        m = rho
        for _ in range(7):
            m = euler_step(m, h, 1e-3)
        out = evolve_euler(rho, h, EvolutionParams(1e-3, 7))
        np.testing.assert_array_equal(out.matrix, m.matrix)

    def test_trajectory_ends_at_evolve(self, rng):
        rho = random_state(rng, "q", 2)
        h = random_hermitian(rng, 2)
        params = EvolutionParams(1e-3, 5)
        traj = list(euler_trajectory(rho, h, params))
        assert len(traj) == 5
        np.testing.assert_array_equal(traj[-1].matrix, evolve_euler(rho, h, params).matrix)

    def test_paper_first_interaction(self):
        rho, h = paper_pair()
        out = evolve_euler(rho, h, EvolutionParams(1e-4, 500))
        a, b = partial_trace(out, {"A"}), partial_trace(out, {"B"})
        expected = {"A": (0.995, 0.505, 0.4503), "B": (0.505, 0.995, 0.5497)}
        for label, st_ in (("A", a), ("B", b)):
            got = [measure_prob(st_, ax) for ax in "xyz"]
            np.testing.assert_allclose(got, expected[label], atol=1e-3)

    def test_first_order_convergence(self):
        rho, h = paper_pair()
        t = 0.05
        exact = evolve_exact(rho, h, t).matrix

        def err(dt):
            out = evolve_euler(rho, h, EvolutionParams(dt, round(t / dt)))
            return np.max(np.abs(out.matrix - exact))

        errors = [err(1e-3), err(5e-4), err(2.5e-4)]
        for coarse, fine in zip(errors, errors[1:]):
            assert 1.8 <= coarse / fine <= 2.2
        # error <= C dt with a modest constant
        assert errors[0] <= 1.0 * 1e-3


class TestEvolveExact:
    def test_zero_hamiltonian(self, rng):
        rho = random_state(rng, "q", 3)
        out = evolve_exact(rho, np.zeros((3, 3)), 2.5)
        assert np.max(np.abs(out.matrix - rho.matrix)) <= 1e-15

    def test_purity_and_trace_preserved(self, rng):
        rho = random_state(rng, "q", 5)
        out = evolve_exact(rho, random_hermitian(rng, 5), 1.3)
        assert abs(out.purity() - rho.purity()) <= 1e-10
        assert abs(np.trace(out.matrix) - 1) <= 1e-10

    def test_swap(self, rng):
        a, b = random_state(rng, "A"), random_state(rng, "B")
        rho = tensor_compose([a, b])
        h = heisenberg_embedded(rho.layout, PairCouplingSpec("A", "B"))
        out = evolve_exact(rho, h, np.pi / 4)
        assert np.max(np.abs(out.matrix - np.kron(b.matrix, a.matrix))) <= 1e-10

    def test_sign_convention_matches_euler_limit(self, rng):
        rho = random_state(rng, "q", 2)
        h = random_hermitian(rng, 2)
        euler = evolve_euler(rho, h, EvolutionParams(1e-6, 1000)).matrix
        exact = evolve_exact(rho, h, 1e-3).matrix
        assert np.max(np.abs(euler - exact)) <= 1e-8


def _theorem_case(rng, da, db, steps, dt=1e-4):
    """Composite and standalone trajectories in lockstep; returns worst deviations."""
    a = DensityMatrix.single("A", random_density_matrix(rng, da))
    b = DensityMatrix.single("B", random_density_matrix(rng, db))
    h_a = random_hermitian(rng, da)
    comp = tensor_compose([a, b])
    h_s = embed_noninteracting(h_a, comp.layout, {"A"})
    params = EvolutionParams(dt, steps)
    dev_a = dev_b = 0.0
    for s_comp, s_a in zip(euler_trajectory(comp, h_s, params), euler_trajectory(a, h_a, params)):
        dev_a = max(dev_a, np.max(np.abs(partial_trace(s_comp, {"A"}).matrix - s_a.matrix)))
        dev_b = max(dev_b, np.max(np.abs(partial_trace(s_comp, {"B"}).matrix - b.matrix)))
    return dev_a, dev_b


@settings(max_examples=20, deadline=None)
@given(seed=seeds, da=st.integers(2, 4), db=st.integers(2, 4))
def test_tracing_idle_system_commutes_with_evolution(seed, da, db):
    dev_a, dev_b = _theorem_case(np.random.default_rng(seed), da, db, steps=100)
    assert dev_a <= 1e-12
    assert dev_b <= 1e-12


def test_product_structure_is_kept_exactly(rng):
    a = DensityMatrix.single("A", random_density_matrix(rng, 3))
    b = DensityMatrix.single("B", random_density_matrix(rng, 2))
    h_a = random_hermitian(rng, 3)
    comp = tensor_compose([a, b])
    h_s = embed_noninteracting(h_a, comp.layout, {"A"})
    params = EvolutionParams(1e-3, 500)
    out = evolve_euler(comp, h_s, params)
    expected = np.kron(evolve_euler(a, h_a, params).matrix, b.matrix)
    assert np.max(np.abs(out.matrix - expected)) <= 1e-12


@pytest.mark.parametrize("axis", "xyz")
def test_total_spin_conserved_by_euler(rng, axis):
    a, b = random_state(rng, "A"), random_state(rng, "B")
    rho = tensor_compose([a, b])
    h = heisenberg_embedded(rho.layout, PairCouplingSpec("A", "B", 1.3))
    s = {"x": SX, "y": np.array([[0, -1j], [1j, 0]]), "z": np.diag([1.0, -1.0])}[axis]
    total = np.kron(s, np.eye(2)) + np.kron(np.eye(2), s)
    start = np.trace(rho.matrix @ total)
    for state in euler_trajectory(rho, h, EvolutionParams(1e-4, 500)):
        assert abs(np.trace(state.matrix @ total) - start) <= 1e-13


def test_layout_preserved():
    rho = DensityMatrix(np.eye(6) / 6, SubsystemLayout(("P", "Q"), (3, 2)))
    out = evolve_euler(rho, np.eye(6), EvolutionParams(1e-2, 3))
    assert out.layout == rho.layout
