"""``lotbound`` command line.

Exit codes: 0 ok, 1 verification failure, 2 unreadable or malformed input,
3 bad usage (wrong flags, unsupported instance shape, cap exceeded).
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import bench as benchmod
from .core import (DimensionError, Instance, LotSizingError, UsageError, check_feasibility,
                   evaluate_cost)
from .generate import random_instance
from .ibr import solve_ibr
from .ibsr import solve_ibsr
from .io import (ParseError, certificate_to_json, dumps, instance_to_json, read_instance,
                 read_plan, report_to_json, solution_to_json, write_json)
from .oracle import brute_force_nls, brute_force_optimal
from .reductions import (embed_nls_retailer, subset_sum_to_ibs,
                         three_partition_to_uls_ib_nls)

EXIT_OK, EXIT_INFEASIBLE, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3
ALGORITHMS = ("auto", "ibr-dp", "ibsr-dp", "oracle", "nls-oracle")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> tuple:
    vals = _int_list(text)
    if len(vals) != 2 or vals[0] > vals[1]:
        raise argparse.ArgumentTypeError(f"expected LO,HI with LO <= HI, got {text!r}")
    return tuple(vals)


def pick_algorithm(inst: Instance) -> str:
    if inst.nls:
        return "nls-oracle"
    if inst.uR is not None and inst.uS is None:
        return "ibr-dp"
    return "ibsr-dp"


def run_solver(inst: Instance, algorithm: str, cap: Optional[int] = None) -> tuple:
    if algorithm == "auto":
        algorithm = pick_algorithm(inst)
    if algorithm == "ibr-dp":
        cost, plan = solve_ibr(inst)
    elif algorithm == "ibsr-dp":
        cost, plan = solve_ibsr(inst)
    elif algorithm == "oracle":
        cost, plan = brute_force_optimal(inst, cap=cap)
    elif algorithm == "nls-oracle":
        cost, plan = brute_force_nls(inst, cap=cap)
    else:
        raise UsageError(f"unknown algorithm {algorithm!r}")
    return algorithm, cost, plan


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    t0 = time.perf_counter()
    algorithm, cost, plan = run_solver(inst, args.algorithm, args.cap)
    wall = time.perf_counter() - t0
    report = check_feasibility(inst, plan)
    if not report or evaluate_cost(inst, plan) != cost:
        print("solver output failed the feasibility/cost audit", file=sys.stderr)
        write_json(args.output, report_to_json(report, evaluate_cost(inst, plan)))
        return EXIT_INFEASIBLE
    write_json(args.output, solution_to_json(cost, plan, algorithm, wall))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    plan = read_plan(args.plan)
    try:
        report = check_feasibility(inst, plan)
        cost = evaluate_cost(inst, plan)
    except DimensionError as exc:
        raise ParseError(f"plan does not match the instance: {exc}") from None
    write_json(args.output, report_to_json(report, cost))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    inst = random_instance(args.T, args.seed, demand=args.demand, cost=args.cost,
                           bound=args.bound, profile=args.profile, nls=args.nls)
    write_json(args.output, instance_to_json(inst))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.algorithm == "ibr-dp":
        rows = benchmod.bench_ibr(args.sizes or [20, 40, 80, 160], args.trials, args.seed)
        header = ("T", "median_seconds")
    elif args.algorithm == "ibsr-dp":
        rows = benchmod.bench_ibsr(args.bounds or [16, 32, 64], args.T, args.trials, args.seed)
        header = ("bound", "median_seconds")
    elif args.algorithm == "oracle":
        rows = benchmod.bench_solver(brute_force_optimal, args.sizes or [2, 3, 4, 5],
                                     args.trials, args.seed)
        header = ("T", "median_seconds")
    else:
        raise UsageError(f"bench supports ibr-dp, ibsr-dp and oracle, not {args.algorithm!r}")
    text = benchmod.to_csv(rows, header)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.kind == "subset-sum":
        if args.s is None:
            raise UsageError("subset-sum needs --s")
        cert = subset_sum_to_ibs(args.s, args.a)
        inst = cert.produced
    else:
        if args.b is None:
            raise UsageError("3partition needs --b")
        cert = three_partition_to_uls_ib_nls(args.b, args.a)
        # the single-level instance is written as a two-level one with a free supplier
        inst = embed_nls_retailer(cert.produced)
    inst_json = instance_to_json(inst)
    cert_json = certificate_to_json(cert)
    if args.instance is None and args.certificate is None:
        sys.stdout.write(dumps({"instance": inst_json, "certificate": cert_json}))
        return EXIT_OK
    write_json(args.instance, inst_json)
    write_json(args.certificate, cert_json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lotbound", description="Two-level lot sizing with inventory bounds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None, help="solution JSON path (default stdout)")
    p.add_argument("-a", "--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--cap", type=int, default=None, help="oracle size cap (overrides LOTBOUND_CAP)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="audit a plan against an instance")
    p.add_argument("instance")
    p.add_argument("plan", help="plan JSON or a solution JSON")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--demand", type=_range, default=(0, 6), metavar="LO,HI")
    p.add_argument("--cost", type=_range, default=(0, 10), metavar="LO,HI")
    p.add_argument("--bound", type=_range, default=(0, 8), metavar="LO,HI")
    p.add_argument("--profile", default="retailer",
                   help="none, retailer, supplier, both or stationary-K")
    p.add_argument("--nls", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="median DP timings as CSV")
    p.add_argument("-a", "--algorithm", default="ibr-dp", choices=("ibr-dp", "ibsr-dp", "oracle"))
    p.add_argument("--sizes", type=_int_list, default=None, help="horizons, e.g. 20,40,80")
    p.add_argument("--bounds", type=_int_list, default=None, help="stationary bounds for ibsr-dp")
    p.add_argument("--T", type=int, default=10, help="horizon for the bound sweep")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("reduce", help="emit a reduction instance and its certificate")
    p.add_argument("kind", choices=("subset-sum", "3partition"))
    p.add_argument("--s", type=int, default=None, help="subset-sum target")
    p.add_argument("--b", type=int, default=None, help="3-partition bin size")
    p.add_argument("--a", type=_int_list, required=True, help="comma-separated items")
    p.add_argument("--instance", default=None, help="instance JSON path")
    p.add_argument("--certificate", default=None, help="certificate JSON path")
    p.set_defaults(func=cmd_reduce)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gen" and args.T < 1:
            raise UsageError("--T must be at least 1")
        return args.func(args)
    except ParseError as exc:
        print(f"lotbound: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"lotbound: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, LotSizingError, ValueError) as exc:
        print(f"lotbound: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
