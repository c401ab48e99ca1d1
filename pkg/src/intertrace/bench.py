"""
Timing and working-set measurements for the chain policies.

Wall times are medians over repeated runs of :func:`run_chain` after warmup
runs are discarded. Alongside them every record carries a deterministic cost
estimate (8 dim^3 real flops per complex matrix multiply, two multiplies per
Euler step), which does not depend on the machine.
"""

import statistics
from dataclasses import dataclass, field
from math import prod
from typing import Optional

import numpy as np

from .chain import POLICIES, Report, run_chain, target_chain_scenario
from .cmatrix import DEFAULT_MAX_DIM


@dataclass
class BenchRecord:
    policy: str
    n_incident: int
    wall_time_median: float
    wall_time_runs: list
    peak_dim: int
    estimated_flops: float
    skipped: bool = False
    reason: str = ""
    report: Optional[Report] = field(default=None, repr=False)

    @classmethod
    def skip(cls, policy, n_incident, peak_dim, reason):
        return cls(policy, n_incident, float("nan"), [], peak_dim, float("nan"), True, reason)


def time_policy(scenario, policy, repeats=5, warmup=1, n_incident=None):
    """Median wall time of ``run_chain(scenario, policy)`` over `repeats` runs."""
    if repeats < 3:
        raise ValueError(f"repeats must be at least 3, got {repeats}")
    if warmup < 0:
        raise ValueError(f"warmup must be non-negative, got {warmup}")
    for _ in range(warmup):
        run_chain(scenario, policy)
    runs, report = [], None
    for _ in range(repeats):
        report = run_chain(scenario, policy)
        runs.append(report.wall_time)
    if n_incident is None:
        n_incident = len(scenario.interactions)
    return BenchRecord(
        policy=policy,
        n_incident=n_incident,
        wall_time_median=statistics.median(runs),
        wall_time_runs=runs,
        peak_dim=report.peak_dim,
        estimated_flops=report.flops,
        report=report,
    )


def scaling_suite(n_incident_range, base=target_chain_scenario, policies=POLICIES,
                  repeats=5, warmup=1, max_dim=DEFAULT_MAX_DIM, **base_kwargs):
    """Time each policy on chains of a target meeting N incident systems.

    `base` maps ``n_incident`` (plus `base_kwargs`) to a Scenario. Cells
    whose full composite would exceed `max_dim` are returned as skipped
    records instead of raising.
    """
    n_values = list(n_incident_range)
    if not n_values:
        raise ValueError("n_incident_range is empty")
    records = []
    for n in n_values:
        scenario = base(n, **base_kwargs)
        total = prod(s.dim for s in scenario.systems)
        for policy in policies:
            if policy in ("full", "lazy") and total > max_dim:
                records.append(BenchRecord.skip(
                    policy, n, total, f"composite dimension {total} exceeds cap {max_dim}"))
                continue
            records.append(time_policy(scenario, policy, repeats, warmup, n_incident=n))
    return records


def max_final_deviation(records):
    """Largest elementwise disagreement of final states among non-skipped records."""
    reports = [r.report for r in records if not r.skipped and r.report is not None]
    if len(reports) < 2:
        return 0.0
    ref = reports[0]
    dev = 0.0
    for rep in reports[1:]:
        for label, st in ref.final_states.items():
            dev = max(dev, float(np.max(np.abs(rep.final_states[label].matrix - st.matrix))))
    return dev
