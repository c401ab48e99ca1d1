"""Simulate chains of pairwise quantum interactions and the add/trace policies for them."""

from .chain import (
    POLICIES,
    Interaction,
    PolicyComparison,
    Report,
    Scenario,
    Snapshot,
    SystemSpec,
    compare_policies,
    paper_scenario,
    pauli_system,
    run_chain,
    snapshot_report,
    target_chain_scenario,
)
from .evolution import EvolutionParams, euler_step, evolve_euler, evolve_exact
from .hamiltonians import PairCouplingSpec, heisenberg_embedded, pauli_matrix
from .quantum import (
    BlochParams,
    DensityMatrix,
    SubsystemLayout,
    bloch_params,
    measure_prob,
    partial_trace,
    pauli_eigenstate,
    tensor_compose,
    validate_density,
)
from .scenario_io import load_scenario, parse_scenario, serialize_scenario

__version__ = "0.1.0"
