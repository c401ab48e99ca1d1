"""
How the policies scale
======================

A target qubit T meets N incident qubits one after the other.  The full
policy carries a 2^(N+1) dimensional matrix, the minimal policy never
exceeds 4.  Wall time is the median of a few repeats; the FLOP estimate
is deterministic.
"""

from intertrace.bench import max_final_deviation, scaling_suite
from intertrace.reporting import bench_table

records = scaling_suite(range(1, 6), steps=200, repeats=3, warmup=1)
print(bench_table(records))
print("largest disagreement between policies:", max_final_deviation(records))

###############################################################################
# Ratio of estimated work, minimal over full, per chain length.

by_n = {}
for rec in records:
    by_n.setdefault(rec.n_incident, {})[rec.policy] = rec
for n, recs in sorted(by_n.items()):
    print(n, f"{recs['minimal'].estimated_flops / recs['full'].estimated_flops:.2e}")

###############################################################################
# Chains that would not fit under a dimension cap are skipped rather than run.

for rec in scaling_suite([4], steps=10, repeats=3, warmup=0, max_dim=16):
    print(rec.policy, "skipped: " + rec.reason if rec.skipped else rec.peak_dim)
