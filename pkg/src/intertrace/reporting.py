"""Rendering of chain reports: text table, CSV, JSON and Bloch plot data."""

import csv
import io
import json

from .chain import snapshot_report
from .quantum import bloch_vector
from .scenario_io import matrix_to_json

FORMATS = ("table", "table-csv", "structured", "plotdata")


def fmt_prob(p):
    return f"{p:.4f}"


def fmt_sig(x, digits=5):
    s = f"{x:.{digits}g}"
    return "0" if s == "-0" else s


def bloch_line(label, params):
    return (
        f"{label}: r={fmt_sig(params.r)} theta={fmt_sig(params.theta_deg)} "
        f"phi={fmt_sig(params.phi_deg)}"
    )


def render_table(report):
    """Table-1 layout: one column group (Px Py Pz) per stage, then pair sums."""
    stages = [s.stage for s in report.snapshots]
    rows = snapshot_report(report)
    names = list(dict.fromkeys(r[0] for r in rows))
    cells = {(r[0], r[1]): r[2:] for r in rows}

    group_w = 3 * 6 + 2
    name_w = max([5] + [len(n) for n in names])
    widths = [max(group_w, len(s)) for s in stages]

    def line(first, groups):
        return " | ".join([first.ljust(name_w)] + [g.ljust(w) for g, w in zip(groups, widths)]).rstrip()

    out = [
        f"policy: {report.policy}  integrator: {report.integrator}",
        "P(+ eigenstate) along x, y, z",
        line("", stages),
        line("qubit", ["Px     Py     Pz"] * len(stages)),
    ]
    rule = "-" * len(out[-2])
    out.insert(2, rule)
    out.append(rule)
    pair_rule_done = False
    for name in names:
        if "+" in name and not pair_rule_done:
            out.append(rule)
            pair_rule_done = True
        groups = []
        for stage in stages:
            vals = cells.get((name, stage))
            groups.append(" ".join(fmt_prob(v) for v in vals) if vals else "")
        out.append(line(name, groups))
    out.append(rule)
    out.append("Final Bloch parameters (degrees)")
    for label, params in report.final_bloch.items():
        if params is not None:
            out.append(bloch_line(label, params))
    return "\n".join(out) + "\n"


def render_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["qubit", "stage", "px", "py", "pz"])
    for name, stage, *probs in snapshot_report(report):
        writer.writerow([name, stage, *(fmt_prob(p) for p in probs)])
    return buf.getvalue()


def report_to_dict(report):
    """Full-precision, timing-free representation of a report."""
    snapshots = []
    for snap in report.snapshots:
        systems = {}
        for label, st in snap.states.items():
            entry = {"dims": list(st.layout.dims), "rho": matrix_to_json(st.matrix)}
            b = snap.bloch.get(label)
            if b is not None:
                entry["bloch"] = {"r": b.r, "theta_deg": b.theta_deg, "phi_deg": b.phi_deg}
                entry["probs"] = dict(zip(("px", "py", "pz"), snap.probs[label]))
            systems[label] = entry
        snapshots.append({
            "stage": snap.stage,
            "systems": systems,
            "pair_sums": [{"pair": list(p), "sums": list(v)} for p, v in snap.pair_sums.items()],
        })
    return {
        "policy": report.policy,
        "integrator": report.integrator,
        "peak_dim": report.peak_dim,
        "estimated_flops": report.flops,
        "max_trace_deviation": report.max_trace_deviation,
        "snapshots": snapshots,
        "final_bloch": {
            label: {"r": b.r, "theta_deg": b.theta_deg, "phi_deg": b.phi_deg}
            for label, b in report.final_bloch.items() if b is not None
        },
    }


def render_structured(reports):
    return json.dumps({"reports": [report_to_dict(r) for r in reports]}, indent=2) + "\n"


def render_plotdata(report):
    """CSV of initial and final Bloch vectors per qubit, for external plotting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["qubit", "stage", "vx", "vy", "vz", "r", "theta_deg", "phi_deg"])
    first, last = report.snapshots[0], report.snapshots[-1]
    for label in first.states:
        for tag, snap in (("initial", first), ("final", last)):
            b = snap.bloch.get(label)
            if b is None:
                continue
            v = bloch_vector(snap.states[label])
            writer.writerow([label, tag, *(repr(float(x)) for x in v),
                             repr(b.r), repr(b.theta_deg), repr(b.phi_deg)])
    return buf.getvalue()


def emit_report(reports, fmt="table", out=None):
    """Render one report (or a list) in `fmt`; write to `out` when given.

    Returns the rendered text. ``OSError`` propagates if `out` cannot be
    written.
    """
    if not isinstance(reports, (list, tuple)):
        reports = [reports]
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose one of {FORMATS}")
    if fmt == "structured":
        text = render_structured(reports)
    else:
        render = {"table": render_table, "table-csv": render_csv, "plotdata": render_plotdata}[fmt]
        text = "\n".join(render(r) for r in reports)
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def deviation_line(value):
    return f"max policy deviation: {value:.3e}"


def bench_table(records):
    lines = [f"{'policy':<8} {'N':>3} {'peak_dim':>8} {'median_s':>10} {'est_flops':>12}"]
    for r in records:
        if r.skipped:
            lines.append(f"{r.policy:<8} {r.n_incident:>3} {r.peak_dim:>8} skipped: {r.reason}")
        else:
            lines.append(
                f"{r.policy:<8} {r.n_incident:>3} {r.peak_dim:>8} "
                f"{r.wall_time_median:>10.4f} {r.estimated_flops:>12.4g}"
            )
    return "\n".join(lines) + "\n"


__all__ = ["FORMATS", "bloch_line", "emit_report", "render_table", "report_to_dict"]
