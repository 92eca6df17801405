"""owabp command line: solve, verify, generate, bench.

Exit codes:
    0  success (verify: values agree / guarantee holds)
    1  verify mismatch, or bench had nothing it could run
    2  usage error
    3  instance or formula could not be parsed / violates an invariant
    4  feasible set is empty
    5  enumeration budget exceeded

Diagnostics go to stderr, results to stdout (or ``--out``).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .errors import BudgetExceeded, Infeasible, InvalidInstance
from .fileformat import dumps_instance, dumps_report, read_instance, report_text
from .generators import SAT_MODES, RANDOM_KINDS, gen_3sat_path, gen_random, gen_table1, parse_dimacs
from .model import format_rational, parse_rational
from .oracle import brute_force_owa
from .solvers import ALGORITHMS, DEFAULT_MAX_CANDIDATES, solve, weights_for

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_BUDGET = 5


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _algorithm_args(args, inst) -> dict:
    params = {}
    if args.algorithm == "hurwicz":
        if args.alpha is not None:
            params["alpha"] = parse_rational(args.alpha)
        elif inst.weights.kind == "hurwicz":
            params["alpha"] = inst.weights.alpha
        else:
            raise UsageError("hurwicz needs --alpha (or a hurwicz instance preset)")
    if args.algorithm == "quantile":
        if args.k is not None:
            params["k"] = args.k
        elif inst.weights.kind == "quantile":
            params["k"] = inst.weights.k
        else:
            raise UsageError("quantile needs --k (or a quantile instance preset)")
    return params


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    params = _algorithm_args(args, inst)
    rep = solve(args.algorithm, inst.family, inst.scenarios, inst.weight_vector(), budget=args.budget, **params)
    extra = {"budget": args.budget}
    name = inst.name or Path(args.instance).stem
    text = report_text(rep, name, extra) if args.format == "text" else dumps_report(rep, name, extra)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    params = _algorithm_args(args, inst)
    w = inst.weight_vector()
    rep = solve(args.algorithm, inst.family, inst.scenarios, w, budget=args.budget, **params)
    target = weights_for(args.algorithm, inst.K, w, **params)
    ref = brute_force_owa(inst.family, inst.scenarios, target, budget=args.oracle_budget)
    if args.algorithm == "approx":
        ok = rep.value <= rep.certified_ratio * ref.value
        relation = f"<= {format_rational(rep.certified_ratio)} * oracle"
    else:
        ok = rep.value == ref.value
        relation = "== oracle"
    print(f"solver {args.algorithm}: {format_rational(rep.value)}")
    print(f"oracle: {format_rational(ref.value)}")
    print(f"check {relation}: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_generate(args) -> int:
    if args.generator == "table1":
        if args.k is None:
            raise UsageError("table1 needs --k")
        inst = gen_table1(args.k)
    elif args.generator == "3sat":
        if not args.formula:
            raise UsageError("3sat needs --formula FILE (DIMACS CNF)")
        phi = parse_dimacs(Path(args.formula).read_text(encoding="utf-8"))
        inst = gen_3sat_path(phi, args.mode, args.L, family=args.family or "path")
    else:
        if args.family is None or args.elements is None or args.scenarios is None:
            raise UsageError("random needs --family, --elements and --scenarios")
        inst = gen_random(
            args.family,
            args.elements,
            args.scenarios,
            args.cost_max,
            args.seed if args.seed is not None else 0,
            n_nodes=args.nodes,
            p=args.p,
        )
    if args.seed is not None:
        inst.metadata["seed"] = args.seed
    _emit(dumps_instance(inst), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    files = sorted(corpus.glob("*.json")) if corpus.is_dir() else []
    instances = []
    for f in files:
        try:
            inst = read_instance(f)
        except (OSError, InvalidInstance) as exc:
            print(f"warning: skipping {f.name}: {exc}", file=sys.stderr)
            continue
        if not inst.name:
            inst = type(inst)(inst.family, inst.scenarios, inst.weights, f.stem, inst.metadata)
        instances.append(inst)
    if not instances:
        print(f"error: no readable instances in {corpus}", file=sys.stderr)
        return EXIT_MISMATCH
    rows = bench.run_bench(instances, args.budget, args.oracle_budget, args.workers)
    if args.format == "structured":
        agg = {
            p: {k: None if v is None else format_rational(v) for k, v in a.items()}
            for p, a in bench.worst_ratios(rows).items()
        }
        text = json.dumps({"format_version": 1, "rows": [r.as_dict() for r in rows], "worst_ratios": agg}, indent=2, sort_keys=True) + "\n"
    else:
        text = bench.format_table(rows)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="owabp", description="OWA minimisation for bottleneck problems under scenario uncertainty")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_args(p):
        p.add_argument("instance")
        p.add_argument("--algorithm", choices=ALGORITHMS, default="exact")
        p.add_argument("--alpha", help="hurwicz parameter as p/q")
        p.add_argument("--k", type=int, help="quantile rank (1 = largest)")
        p.add_argument("--budget", type=int, default=DEFAULT_MAX_CANDIDATES)

    p = sub.add_parser("solve", help="solve an instance file")
    solver_args(p)
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "structured"), default="structured")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="compare a solver against the brute-force oracle")
    solver_args(p)
    p.add_argument("--oracle-budget", type=int, default=5000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated instance file")
    p.add_argument("generator", choices=("table1", "3sat", "random"))
    p.add_argument("--k", type=int, help="table1: number of scenarios K")
    p.add_argument("--mode", choices=SAT_MODES, default="average")
    p.add_argument("--formula", help="3sat: DIMACS CNF file")
    p.add_argument("--L", type=int, help="3sat median/nondecreasing: clause threshold")
    p.add_argument("--family", choices=RANDOM_KINDS, help="random: family; 3sat: path or spanning_tree")
    p.add_argument("--elements", type=int)
    p.add_argument("--scenarios", type=int)
    p.add_argument("--cost-max", type=int, default=9)
    p.add_argument("--nodes", type=int)
    p.add_argument("--p", type=int, help="selection size")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run all algorithms over a directory of instance files")
    p.add_argument("corpus")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--oracle-budget", type=int, default=5000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInstance, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"parse error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
