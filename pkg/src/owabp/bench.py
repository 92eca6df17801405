"""Run every algorithm over a corpus and compare against the oracle where it fits."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, Infeasible
from .instance import Instance
from .model import format_rational
from .oracle import brute_force_owa, solution_profiles, worst_quantile_optimal
from .solvers import ALGORITHMS, DEFAULT_MAX_CANDIDATES, solve, weights_for


@dataclass
class BenchRow:
    instance: str
    preset: str
    algorithm: str
    params: dict
    value: Fraction | None
    elapsed_ns: int | None
    oracle_calls: int | None
    oracle_value: Fraction | None
    certified_ratio: Fraction | None = None
    empirical_ratio: Fraction | None = None
    adversarial_ratio: Fraction | None = None
    note: str = ""

    @property
    def gap(self) -> Fraction | None:
        if self.value is None or self.oracle_value is None:
            return None
        return self.value - self.oracle_value

    def as_dict(self) -> dict:
        def r(x):
            return None if x is None else format_rational(x)

        return {
            "instance": self.instance,
            "preset": self.preset,
            "algorithm": self.algorithm,
            "params": {k: r(v) if isinstance(v, Fraction) else v for k, v in self.params.items()},
            "value": r(self.value),
            "elapsed_ns": self.elapsed_ns,
            "oracle_calls": self.oracle_calls,
            "oracle_value": r(self.oracle_value),
            "gap": r(self.gap),
            "certified_ratio": r(self.certified_ratio),
            "empirical_ratio": r(self.empirical_ratio),
            "adversarial_ratio": r(self.adversarial_ratio),
            "note": self.note,
        }


def _ratio(value: Fraction, opt: Fraction) -> Fraction:
    if opt == 0:
        if value != 0:
            raise ArithmeticError(f"positive value {value} against optimum 0")
        return Fraction(1)
    return value / opt


def algorithm_params(inst: Instance, algorithm: str) -> dict:
    """hurwicz/quantile parameters taken from the instance preset when it has them."""
    p = inst.weights
    if algorithm == "hurwicz":
        return {"alpha": p.alpha if p.kind == "hurwicz" else Fraction(1, 2)}
    if algorithm == "quantile":
        return {"k": p.k if p.kind == "quantile" else inst.weight_vector().first_positive() + 1}
    return {}


def bench_instance(inst: Instance, budget: int = DEFAULT_MAX_CANDIDATES, oracle_budget: int = 5000) -> list[BenchRow]:
    fam, M, w = inst.family, inst.scenarios, inst.weight_vector()
    try:
        table = solution_profiles(fam, M, oracle_budget)
    except BudgetExceeded:
        table = None
    rows = []
    for algorithm in ALGORITHMS:
        params = algorithm_params(inst, algorithm)
        aw = weights_for(algorithm, M.K, w, **params)
        oracle_value = brute_force_owa(fam, M, aw, table=table).value if table else None
        row = BenchRow(inst.name, inst.weights.kind, algorithm, params, None, None, None, oracle_value)
        try:
            rep = solve(algorithm, fam, M, w, budget=budget, **params)
        except (BudgetExceeded, Infeasible) as exc:
            row.note = str(exc)
            rows.append(row)
            continue
        row.value, row.elapsed_ns, row.oracle_calls = rep.value, rep.elapsed_ns, rep.oracle_calls
        if algorithm == "approx":
            row.certified_ratio = rep.certified_ratio
            if oracle_value is not None:
                row.empirical_ratio = _ratio(rep.value, oracle_value)
                _, worst = worst_quantile_optimal(fam, M, w, table=table)
                row.adversarial_ratio = _ratio(worst, oracle_value)
        rows.append(row)
    return rows


def _bench_one(args):
    inst, budget, oracle_budget = args
    return bench_instance(inst, budget, oracle_budget)


def run_bench(instances: list[Instance], budget=DEFAULT_MAX_CANDIDATES, oracle_budget=5000, workers: int = 1) -> list[BenchRow]:
    """Rows ordered by instance name, then algorithm, whatever the completion order."""
    ordered = sorted(instances, key=lambda i: i.name)
    jobs = [(inst, budget, oracle_budget) for inst in ordered]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_bench_one, jobs))
    else:
        chunks = [_bench_one(j) for j in jobs]
    return [row for chunk in chunks for row in chunk]


def worst_ratios(rows: list[BenchRow]) -> dict[str, dict[str, Fraction | None]]:
    """Per weight preset: worst returned and worst adversarial approximation ratio."""
    out: dict[str, dict[str, Fraction | None]] = {}
    for row in rows:
        if row.algorithm != "approx":
            continue
        agg = out.setdefault(row.preset, {"empirical": None, "adversarial": None, "certified": None})
        for key, val in (
            ("empirical", row.empirical_ratio),
            ("adversarial", row.adversarial_ratio),
            ("certified", row.certified_ratio),
        ):
            if val is not None and (agg[key] is None or val > agg[key]):
                agg[key] = val
    return out


def format_table(rows: list[BenchRow]) -> str:
    header = ["instance", "algorithm", "value", "oracle", "gap", "ratio", "adv_ratio", "bound", "calls", "elapsed_ns"]
    body = []
    for row in rows:
        d = row.as_dict()
        body.append([
            d["instance"], d["algorithm"], d["value"] or d["note"] or "-", d["oracle_value"] or "-",
            d["gap"] or "-", d["empirical_ratio"] or "-", d["adversarial_ratio"] or "-",
            d["certified_ratio"] or "-", str(d["oracle_calls"] if d["oracle_calls"] is not None else "-"),
            str(d["elapsed_ns"] if d["elapsed_ns"] is not None else "-"),
        ])
    widths = [max(len(h), *(len(r[c]) for r in body)) if body else len(h) for c, h in enumerate(header)]
    lines = ["  ".join(h.ljust(wd) for h, wd in zip(header, widths))]
    lines += ["  ".join(v.ljust(wd) for v, wd in zip(r, widths)) for r in body]
    lines.append("")
    lines.append("worst approximation ratio per weight preset:")
    for preset, agg in sorted(worst_ratios(rows).items()):
        fmt = {k: ("-" if v is None else format_rational(v)) for k, v in agg.items()}
        lines.append(f"  {preset}: returned {fmt['empirical']}, adversarial {fmt['adversarial']}, certified bound {fmt['certified']}")
    return "\n".join(lines) + "\n"
