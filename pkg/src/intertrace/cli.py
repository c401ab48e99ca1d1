"""
Command-line entry point.

Subcommands::

    intertrace run <file> [--policy P|all] [--integrator euler|exact]
                          [--out PATH] [--format F]
    intertrace compare <file>
    intertrace bench (<file> | --incident N) [--repeats R] [--warmup W]
    intertrace paper-demo

Exit codes: 0 success, 1 policies disagree (compare), 2 usage error,
3 scenario error, 4 numerical failure.
"""

import argparse
import sys
from dataclasses import replace

from . import reporting
from .bench import max_final_deviation, scaling_suite, time_policy
from .chain import POLICIES, compare_policies, paper_scenario, run_chain
from .exceptions import ConvergenceError, IntertraceError, NotHermitianError
from .quantum import validate_density
from .scenario_io import load_scenario

EXIT_OK = 0
EXIT_COMPARE = 1
EXIT_USAGE = 2
EXIT_SCENARIO = 3
EXIT_NUMERICAL = 4

COMPARE_TOL = 1e-9


class NumericalFailure(Exception):
    pass


class _UsageError(Exception):
    pass


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="intertrace",
        description="Simulate chains of pairwise quantum interactions under add/trace policies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("file")
    run.add_argument("--policy", choices=POLICIES + ("all",))
    run.add_argument("--integrator", choices=("euler", "exact"))
    run.add_argument("--out")
    run.add_argument("--format", default="table", choices=reporting.FORMATS)

    cmp_ = sub.add_parser("compare", help="run all policies and print their largest deviation")
    cmp_.add_argument("file")

    bench = sub.add_parser("bench", help="time the policies")
    src = bench.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?")
    src.add_argument("--incident", type=int, help="target chain with N incident qubits")
    bench.add_argument("--repeats", type=int, default=5)
    bench.add_argument("--warmup", type=int, default=1)

    sub.add_parser("paper-demo", help="run the built-in three-qubit example")
    return parser


def _check_reports(reports):
    for rep in reports:
        for label, st in rep.final_states.items():
            diag = validate_density(st)
            if not diag.ok:
                raise NumericalFailure(
                    f"final state of {label!r} under policy {rep.policy!r} failed validation: {diag}"
                )


def _with_overrides(scenario, integrator):
    if integrator is None:
        return scenario
    return replace(scenario, integrator=integrator)


def cmd_run(args, out):
    scenario = _with_overrides(load_scenario(args.file), args.integrator)
    policy = args.policy or scenario.policy
    if policy == "all":
        comparison = compare_policies(scenario)
        reports = list(comparison.reports.values())
    else:
        comparison = None
        reports = [run_chain(scenario, policy)]
    _check_reports(reports)
    text = reporting.emit_report(reports, args.format, args.out)
    if args.out is None or args.format == "table":
        out.write(text)
    if comparison is not None and args.format == "table":
        out.write(reporting.deviation_line(comparison.max_deviation) + "\n")
    return EXIT_OK


def cmd_compare(args, out):
    scenario = load_scenario(args.file)
    comparison = compare_policies(scenario)
    _check_reports(comparison.reports.values())
    out.write(reporting.deviation_line(comparison.max_deviation) + "\n")
    return EXIT_OK if comparison.max_deviation <= COMPARE_TOL else EXIT_COMPARE


def cmd_bench(args, out):
    if args.repeats < 3:
        raise _UsageError("--repeats must be at least 3")
    if args.warmup < 0:
        raise _UsageError("--warmup must be non-negative")
    if args.incident is not None:
        if args.incident < 0:
            raise _UsageError("--incident must be non-negative")
        records = scaling_suite([args.incident], repeats=args.repeats, warmup=args.warmup)
    else:
        scenario = load_scenario(args.file)
        records = [time_policy(scenario, p, args.repeats, args.warmup) for p in POLICIES]
    out.write(reporting.bench_table(records))
    out.write(reporting.deviation_line(max_final_deviation(records)) + "\n")
    return EXIT_OK


def cmd_paper_demo(args, out):
    comparison = compare_policies(paper_scenario())
    reports = list(comparison.reports.values())
    _check_reports(reports)
    out.write("Three qubits A(+x), B(+y), C(+z); A interacts with B, then with C.\n")
    out.write("Heisenberg coupling 1, Euler dt=1e-4, 500 steps per interaction.\n\n")
    out.write(reporting.render_table(comparison.reports["minimal"]))
    out.write("\n")
    for rep in reports:
        out.write(f"policy {rep.policy:<8} peak dim {rep.peak_dim:>3}  "
                  f"est. flops {rep.flops:.4g}\n")
    out.write(reporting.deviation_line(comparison.max_deviation) + "\n")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "bench": cmd_bench,
    "paper-demo": cmd_paper_demo,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(f"intertrace: error: {exc}\n")
        return EXIT_USAGE
    except (NumericalFailure, ConvergenceError, NotHermitianError) as exc:
        err.write(f"intertrace: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (IntertraceError, ValueError) as exc:
        err.write(f"intertrace: scenario error: {exc}\n")
        return EXIT_SCENARIO
    except OSError as exc:
        err.write(f"intertrace: cannot write output: {exc}\n")
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
