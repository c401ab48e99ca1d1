"""
Sequential pairwise interaction chains under three add/trace policies.

A scenario declares systems with their initial states and an ordered list of
pair interactions. Interactions never overlap in time. Three schedules decide
when systems join the composite density matrix and when they are traced out:

``full``
    Compose every system up front and evolve the whole composite through
    every interaction. Reduced states are read out at the end.
``lazy``
    Compose every system up front, but trace a system out as soon as its last
    interaction finishes.
``minimal``
    Before each interaction compose only the two participants' current
    reduced states. Trace both back out afterwards.

Reduced states of all systems agree between the three schedules as long as
two systems never re-interact after becoming correlated, which
:func:`run_chain` checks before running ``minimal``.
"""

import time
from dataclasses import dataclass, field
from math import prod
from typing import Optional

import numpy as np

from . import cmatrix
from .cmatrix import DEFAULT_MAX_DIM, HERMITIAN_TOL
from .evolution import EvolutionParams, evolve_euler, evolve_exact
from .exceptions import DimensionError, ScenarioError
from .hamiltonians import PairCouplingSpec, embed_site_operators, heisenberg_embedded
from .quantum import (
    AXES,
    BlochParams,
    DensityMatrix,
    bloch_params,
    measure_prob,
    partial_trace,
    pauli_eigenstate,
    tensor_compose,
)

POLICIES = ("full", "lazy", "minimal")
INTEGRATORS = ("euler", "exact")
FLOPS_PER_MULTIPLY = 8  # complex multiply-add = 8 real flops per inner-product term
MULTIPLIES_PER_EXACT = 3


@dataclass(frozen=True, eq=False)
class SystemSpec:
    """One system of a scenario.

    `prep` records how the state was specified (``{"pauli": {...}}`` or
    ``None`` for an explicit matrix); it only matters for serialization.
    `drift` is an optional self-Hamiltonian applied while the system takes
    part in an interaction.
    """

    label: str
    state: DensityMatrix
    prep: Optional[dict] = None
    drift: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.state.layout.labels) != 1:
            raise ScenarioError(f"system {self.label!r} must be a single-factor state")
        if self.state.labels != (self.label,):
            object.__setattr__(self, "state", self.state.relabel(self.label))
        if self.drift is not None:
            d = cmatrix.as_matrix(self.drift)
            if d.shape[0] != self.state.dim:
                raise ScenarioError(
                    f"drift of system {self.label!r} has dim {d.shape[0]}, state has {self.state.dim}"
                )
            if cmatrix.hermiticity_defect(d) > HERMITIAN_TOL:
                raise ScenarioError(f"drift of system {self.label!r} is not Hermitian")
            object.__setattr__(self, "drift", d)

    @property
    def dim(self):
        return self.state.dim

    def __eq__(self, other):
        if not isinstance(other, SystemSpec):
            return NotImplemented
        drift_eq = (self.drift is None and other.drift is None) or (
            self.drift is not None and other.drift is not None
            and np.array_equal(self.drift, other.drift)
        )
        return (
            self.label == other.label
            and self.state.layout == other.state.layout
            and np.array_equal(self.state.matrix, other.state.matrix)
            and drift_eq
        )


@dataclass(frozen=True)
class Interaction:
    coupling: PairCouplingSpec
    params: EvolutionParams = EvolutionParams()

    @property
    def pair(self):
        return self.coupling.pair


@dataclass(frozen=True)
class Scenario:
    systems: tuple
    interactions: tuple = ()
    policy: str = "all"
    integrator: str = "euler"
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        object.__setattr__(self, "systems", tuple(self.systems))
        object.__setattr__(self, "interactions", tuple(self.interactions))
        if not self.systems:
            raise ScenarioError("scenario declares no systems")
        labels = [s.label for s in self.systems]
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        if dupes:
            raise ScenarioError(f"duplicate system labels: {dupes}")
        if self.policy not in POLICIES + ("all",):
            raise ScenarioError(
                f"unknown policy {self.policy!r}; valid policies are {list(POLICIES) + ['all']}"
            )
        if self.integrator not in INTEGRATORS:
            raise ScenarioError(
                f"unknown integrator {self.integrator!r}; valid integrators are {list(INTEGRATORS)}"
            )
        dims = dict(zip(labels, (s.dim for s in self.systems)))
        for k, inter in enumerate(self.interactions, 1):
            i, j = inter.pair
            for label in (i, j):
                if label not in dims:
                    raise ScenarioError(f"interaction {k} references unknown system {label!r}")
            try:
                inter.coupling.pair_matrix(dims[i], dims[j])
            except (DimensionError, ValueError) as exc:
                raise ScenarioError(f"interaction {k}: {exc}") from None

    @property
    def labels(self):
        return tuple(s.label for s in self.systems)

    def system(self, label):
        for s in self.systems:
            if s.label == label:
                return s
        raise ScenarioError(f"unknown system {label!r}")

    def with_policy(self, policy):
        return Scenario(self.systems, self.interactions, policy, self.integrator, self.max_dim)


@dataclass
class Snapshot:
    stage: str
    states: dict
    bloch: dict
    probs: dict
    pair_sums: dict


@dataclass
class Report:
    policy: str
    integrator: str
    snapshots: list
    final_states: dict
    final_bloch: dict
    wall_time: float
    peak_dim: int
    flops: float
    max_trace_deviation: float


@dataclass
class PolicyComparison:
    max_deviation: float
    state_deviation: float
    probability_deviation: float
    reports: dict


def ordinal(n):
    if 10 <= n % 100 <= 20:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def stage_name(k):
    return "initial" if k == 0 else f"after {ordinal(k)} interaction"


def _qubit_readout(state):
    if state.layout.dims != (2,):
        return None, None
    return bloch_params(state), tuple(measure_prob(state, a, clamp=True) for a in AXES)


def _snapshot(k, states, interactions):
    bloch, probs = {}, {}
    for label, st in states.items():
        bloch[label], probs[label] = _qubit_readout(st)
    pairs = []
    if k >= 1:
        pairs.append(interactions[k - 1].pair)
    if k < len(interactions) and interactions[k].pair not in pairs:
        pairs.append(interactions[k].pair)
    sums = {}
    for i, j in pairs:
        if probs[i] is not None and probs[j] is not None:
            sums[(i, j)] = tuple(a + b for a, b in zip(probs[i], probs[j]))
    return Snapshot(stage_name(k), dict(states), bloch, probs, sums)


def correlation_conflicts(scenario):
    """Indices (1-based) of interactions whose two systems are already correlated.

    Systems become correlated when they interact, directly or through a chain
    of earlier interactions. Such interactions cannot be simulated from
    reduced states alone.
    """
    parent = {label: label for label in scenario.labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    conflicts = []
    for k, inter in enumerate(scenario.interactions, 1):
        ri, rj = find(inter.pair[0]), find(inter.pair[1])
        if ri == rj:
            conflicts.append(k)
        parent[ri] = rj
    return conflicts


def _interaction_hamiltonian(scenario, layout, inter):
    h = heisenberg_embedded(layout, inter.coupling, max_dim=scenario.max_dim)
    for label in inter.pair:
        drift = scenario.system(label).drift
        if drift is not None:
            h = h + embed_site_operators(layout, {label: drift}, scenario.max_dim)
    return h


def _evolve(scenario, rho, h, params):
    if scenario.integrator == "euler":
        return evolve_euler(rho, h, params), 2 * params.steps
    return evolve_exact(rho, h, params.duration), MULTIPLIES_PER_EXACT


def _trace_dev(rho):
    return abs(complex(np.trace(rho.matrix)) - 1.0)


def run_chain(scenario, policy=None):
    """Run every interaction of `scenario` under one policy and return a Report."""
    policy = policy or scenario.policy
    if policy not in POLICIES:
        raise ScenarioError(f"invalid policy {policy!r} for run_chain; choose one of {list(POLICIES)}")
    if policy == "minimal":
        conflicts = correlation_conflicts(scenario)
        if conflicts:
            raise ScenarioError(
                f"interactions {conflicts} couple systems that are already correlated; "
                "the minimal policy would drop those correlations, use 'lazy' or 'full'"
            )
    if policy in ("full", "lazy"):
        total = prod(s.dim for s in scenario.systems)
        if total > scenario.max_dim:
            raise DimensionError(
                f"policy {policy!r} needs a composite of dimension {total}, above the cap of "
                f"{scenario.max_dim}; use the 'minimal' policy for long chains"
            )

    runner = {"full": _run_full, "lazy": _run_lazy, "minimal": _run_minimal}[policy]
    t0 = time.perf_counter()
    snapshots, final, peak, multiplies, trace_dev = runner(scenario)
    wall = time.perf_counter() - t0
    return Report(
        policy=policy,
        integrator=scenario.integrator,
        snapshots=snapshots,
        final_states=final,
        final_bloch={label: snapshots[-1].bloch[label] for label in scenario.labels},
        wall_time=wall,
        peak_dim=peak,
        flops=float(sum(FLOPS_PER_MULTIPLY * n * d**3 for n, d in multiplies)),
        max_trace_deviation=trace_dev,
    )


def _initial(scenario):
    return {s.label: s.state for s in scenario.systems}


def _run_full(scenario):
    states = _initial(scenario)
    comp = tensor_compose(states.values(), max_dim=scenario.max_dim)
    snapshots = [_snapshot(0, states, scenario.interactions)]
    multiplies, trace_dev = [], _trace_dev(comp)
    for k, inter in enumerate(scenario.interactions, 1):
        h = _interaction_hamiltonian(scenario, comp.layout, inter)
        comp, n = _evolve(scenario, comp, h, inter.params)
        multiplies.append((n, comp.dim))
        trace_dev = max(trace_dev, _trace_dev(comp))
        # read-out only; the composite itself is never reduced
        readout = {label: partial_trace(comp, {label}) for label in scenario.labels}
        snapshots.append(_snapshot(k, readout, scenario.interactions))
    final = {label: partial_trace(comp, {label}) for label in scenario.labels}
    return snapshots, final, comp.dim, multiplies, trace_dev


def _run_lazy(scenario):
    states = _initial(scenario)
    comp = tensor_compose(states.values(), max_dim=scenario.max_dim)
    peak = comp.dim
    snapshots = [_snapshot(0, states, scenario.interactions)]
    multiplies, trace_dev = [], _trace_dev(comp)
    interactions = scenario.interactions
    for k, inter in enumerate(interactions, 1):
        h = _interaction_hamiltonian(scenario, comp.layout, inter)
        comp, n = _evolve(scenario, comp, h, inter.params)
        multiplies.append((n, comp.dim))
        trace_dev = max(trace_dev, _trace_dev(comp))
        for label in comp.labels:
            states[label] = partial_trace(comp, {label})
        later = {label for nxt in interactions[k:] for label in nxt.pair}
        expired = [label for label in inter.pair if label not in later]
        remaining = [label for label in comp.labels if label not in expired]
        if remaining and expired:
            comp = partial_trace(comp, remaining)
            trace_dev = max(trace_dev, _trace_dev(comp))
        snapshots.append(_snapshot(k, states, interactions))
        if not remaining:
            break
    return snapshots, dict(states), peak, multiplies, trace_dev


def _run_minimal(scenario):
    states = _initial(scenario)
    snapshots = [_snapshot(0, states, scenario.interactions)]
    peak = max(s.dim for s in scenario.systems)
    multiplies, trace_dev = [], 0.0
    for k, inter in enumerate(scenario.interactions, 1):
        i, j = inter.pair
        comp = tensor_compose([states[i], states[j]], max_dim=scenario.max_dim)
        peak = max(peak, comp.dim)
        h = _interaction_hamiltonian(scenario, comp.layout, inter)
        comp, n = _evolve(scenario, comp, h, inter.params)
        multiplies.append((n, comp.dim))
        trace_dev = max(trace_dev, _trace_dev(comp))
        states[i] = partial_trace(comp, {i})
        states[j] = partial_trace(comp, {j})
        snapshots.append(_snapshot(k, states, scenario.interactions))
    return snapshots, dict(states), peak, multiplies, trace_dev


def compare_policies(scenario, policies=POLICIES):
    """Run `scenario` under each policy and report the largest disagreement.

    The deviation is the maximum elementwise difference over all final
    reduced density matrices and all snapshot probabilities, taken against
    the first policy.
    """
    reports = {p: run_chain(scenario, p) for p in policies}
    ref = reports[policies[0]]
    state_dev = prob_dev = 0.0
    for p in policies[1:]:
        rep = reports[p]
        for label in scenario.labels:
            diff = np.abs(rep.final_states[label].matrix - ref.final_states[label].matrix)
            state_dev = max(state_dev, float(diff.max()))
        for s_ref, s in zip(ref.snapshots, rep.snapshots):
            for label, probs in s_ref.probs.items():
                if probs is not None:
                    d = max(abs(a - b) for a, b in zip(probs, s.probs[label]))
                    prob_dev = max(prob_dev, d)
    return PolicyComparison(max(state_dev, prob_dev), state_dev, prob_dev, reports)


TABLE_COLUMNS = ("qubit", "stage", "px", "py", "pz")


def snapshot_report(report):
    """Table-1 style rows ``(name, stage, px, py, pz)``, one per qubit and stage.

    Per-qubit rows come first, then one row per interacting pair and stage
    holding the summed probabilities. Values are unrounded; rounding to four
    decimals is a display concern.
    """
    rows = []
    labels = list(report.snapshots[0].states)
    for label in labels:
        for snap in report.snapshots:
            probs = snap.probs.get(label)
            if probs is not None:
                rows.append((label, snap.stage, *probs))
    pairs = []
    for snap in report.snapshots:
        for pair in snap.pair_sums:
            if pair not in pairs:
                pairs.append(pair)
    for pair in pairs:
        for snap in report.snapshots:
            if pair in snap.pair_sums:
                rows.append(("+".join(pair), snap.stage, *snap.pair_sums[pair]))
    return rows


def pauli_system(label, axis, sign="+"):
    return SystemSpec(label, pauli_eigenstate(axis, sign, label), {"pauli": {"axis": axis, "sign": sign}})


def paper_scenario(policy="all", integrator="euler", dt=1e-4, steps=500, coupling=1.0):
    """Three qubits A, B, C in the +x, +y, +z eigenstates; A couples to B, then to C."""
    params = EvolutionParams(dt, steps)
    return Scenario(
        systems=(pauli_system("A", "x"), pauli_system("B", "y"), pauli_system("C", "z")),
        interactions=(
            Interaction(PairCouplingSpec("A", "B", coupling), params),
            Interaction(PairCouplingSpec("A", "C", coupling), params),
        ),
        policy=policy,
        integrator=integrator,
    )


def target_chain_scenario(n_incident, dt=1e-4, steps=500, coupling=1.0, integrator="euler",
                          max_dim=DEFAULT_MAX_DIM):
    """A +x target qubit ``T`` meeting `n_incident` fresh qubits one after another.

    Incident qubits alternate between the +y and +z eigenstates, so
    ``n_incident=2`` has the same shape as :func:`paper_scenario`.
    """
    params = EvolutionParams(dt, steps)
    systems = [pauli_system("T", "x")]
    interactions = []
    for n in range(1, n_incident + 1):
        label = f"I{n}"
        systems.append(pauli_system(label, "y" if n % 2 else "z"))
        interactions.append(Interaction(PairCouplingSpec("T", label, coupling), params))
    return Scenario(tuple(systems), tuple(interactions), "all", integrator, max_dim)


__all__ = [
    "BlochParams",
    "Interaction",
    "POLICIES",
    "PolicyComparison",
    "Report",
    "Scenario",
    "Snapshot",
    "SystemSpec",
    "compare_policies",
    "correlation_conflicts",
    "paper_scenario",
    "pauli_system",
    "run_chain",
    "snapshot_report",
    "stage_name",
    "target_chain_scenario",
]
