"""Command-line entry point.

Subcommands:
    solve       run a pivot rule on an instance or builtin family
    verify      run property checks on a tabulated orientation
    gen         write an instance (or random orientation table) to a file
    export      tabulate an orientation and write the table file
    experiment  run a named experiment, write CSV (+ JSON summary)

Exit codes: 0 success (solve: sink reached; verify/experiment: all pass),
2 cycle detected, 3 step limit hit, 4 some check or experiment cell
failed, 1 usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import experiments as exps
from . import verify as ver
from .cube import vertex_from_string, vertex_to_string, zeros
from .exact import format_rational
from .gen import FAMILIES, GenSpec, gen_instance, generate
from .lcp import basis_of_vertex, extract_solution, load_instance, save_instance
from .pivot import (
    CYCLE_DETECTED,
    PivotRule,
    RULE_KINDS,
    SINK_REACHED,
    solve as pivot_solve,
    write_trace_csv,
)
from .uso import (
    MorrisOracle,
    PlcpOracle,
    read_table,
    tabulate,
    write_table,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CYCLE = 2
EXIT_STEP_LIMIT = 3
EXIT_CHECK_FAILED = 4


class CliError(Exception):
    """Usage or data error; reported on stderr with exit code 1."""


def _add_source_args(p: argparse.ArgumentParser, with_uso: bool = False) -> None:
    p.add_argument("--instance", help="instance JSON file")
    p.add_argument(
        "--family",
        choices=[f for f in FAMILIES if with_uso or f != "random-orientation"],
        help="builtin family instead of an instance file",
    )
    p.add_argument("--n", type=int, help="dimension for --family")
    if with_uso:
        p.add_argument("--uso", help="orientation table file")


def _load_source(args, seed: int):
    """Resolve (oracle, instance-or-None) from --instance/--family flags."""
    if args.instance:
        inst = load_instance(args.instance)
        return PlcpOracle(inst), inst
    if args.family:
        if args.n is None:
            raise CliError("--family requires --n")
        inst = gen_instance(args.family, args.n, seed)
        if args.family == "morris":
            # the transducer is the reference oracle for this family
            return MorrisOracle(args.n), inst
        return PlcpOracle(inst), inst
    raise CliError("provide --instance or --family")


def _parse_pi(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise CliError(f"bad --pi value {text!r}: {e}") from e


def cmd_solve(args) -> int:
    oracle, inst = _load_source(args, args.seed)
    rule_kwargs = {}
    if args.rule == "murty-pi":
        if not args.pi:
            raise CliError("--rule murty-pi requires --pi")
        rule_kwargs["pi"] = _parse_pi(args.pi)
    elif args.pi:
        raise CliError("--pi is only valid with --rule murty-pi")
    if args.rule in ("randomized-murty", "random-edge"):
        rule_kwargs["seed"] = args.seed
    rule = PivotRule(args.rule, **rule_kwargs)
    start = vertex_from_string(args.start) if args.start else zeros(oracle.n)
    if len(start) != oracle.n:
        raise CliError(f"--start has length {len(start)}, dimension is {oracle.n}")
    trace = pivot_solve(oracle, rule, start, max_steps=args.max_steps)
    if args.trace:
        write_trace_csv(trace, args.trace)
    print(f"steps={trace.step_count} flips={trace.total_flips} status={trace.status}")
    print(f"final={vertex_to_string(trace.final_vertex)}")
    if trace.status == SINK_REACHED and inst is not None:
        sol = extract_solution(inst, basis_of_vertex(trace.final_vertex))
        print("w=" + " ".join(format_rational(x) for x in sol.w))
        print("z=" + " ".join(format_rational(x) for x in sol.z))
    if trace.status == SINK_REACHED:
        return EXIT_OK
    if trace.status == CYCLE_DETECTED:
        return EXIT_CYCLE
    return EXIT_STEP_LIMIT


def _table_for_verify(args):
    if args.uso:
        return read_table(args.uso)
    oracle, _inst = _load_source(args, args.seed)
    return tabulate(oracle)


def cmd_verify(args) -> int:
    table = _table_for_verify(args)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not names:
        raise CliError("--checks must name at least one check")
    reports = [ver.run_check(name, table) for name in names]
    payload = [r.to_json_dict() for r in reports]
    text = json.dumps(payload, indent=1, default=str)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    for r in reports:
        print(f"{r.name}: {r.verdict}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_gen(args) -> int:
    spec = GenSpec(args.family, args.n, args.seed)
    obj = generate(spec)
    if args.family == "random-orientation":
        write_table(obj, args.output)
    else:
        save_instance(obj, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_export(args) -> int:
    if args.uso:
        raise CliError("export reads an instance or family, not a table")
    oracle, _inst = _load_source(args, args.seed)
    table = tabulate(oracle)
    write_table(table, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def _parse_ns(text):
    if not text:
        return None
    return tuple(int(x) for x in text.split(","))


def cmd_experiment(args) -> int:
    fn = exps.EXPERIMENTS.get(args.name)
    if fn is None:
        raise CliError(f"unknown experiment {args.name!r}; choose from {sorted(exps.EXPERIMENTS)}")
    kwargs = {}
    ns = _parse_ns(args.n_list)
    if ns and args.name != "greedy-cycle":
        kwargs["ns"] = ns
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.trials and args.name == "random-edge":
        kwargs["trials"] = args.trials
    if args.samples and args.name == "thm-general":
        kwargs["samples"] = args.samples
    if args.instances and args.name == "k-bound":
        kwargs["instances"] = args.instances
    result = fn(**kwargs)
    if args.output:
        result.to_csv(args.output)
        json_path = args.output.rsplit(".", 1)[0] + ".json"
        result.write_json(json_path)
        print(f"wrote {args.output} and {json_path}")
    for c in result.cells:
        print(f"{c.experiment} n={c.n} {c.params}: observed={c.observed} bound={c.bound} {c.verdict}")
    print(f"experiment {result.name}: {'pass' if result.passed else 'FAIL'}")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="usolcp", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a pivot rule to the sink")
    _add_source_args(p)
    p.add_argument("--rule", required=True, choices=RULE_KINDS)
    p.add_argument("--pi", help="comma-separated permutation for murty-pi")
    p.add_argument("--start", help="start vertex bitstring (default: all zeros)")
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--trace", help="write the run trace CSV here")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="run property checks")
    _add_source_args(p, with_uso=True)
    p.add_argument("--checks", default="uso", help=f"comma list from {sorted(ver.CHECKS)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="write the JSON report here")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance or orientation file")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("export", help="tabulate an orientation to a table file")
    _add_source_args(p, with_uso=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("--name", required=True, choices=sorted(exps.EXPERIMENTS))
    p.add_argument("--n", dest="n_list", help="comma-separated dimensions")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--instances", type=int, default=None)
    p.add_argument("-o", "--output", help="CSV output path (JSON written alongside)")
    p.set_defaults(fn=cmd_experiment)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; keep 2 reserved for cycles
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    try:
        return args.fn(args)
    except (CliError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
