"""OWA minimisation over bottleneck problems.

Exact and specialised solvers share one report type. All values are exact
``Fraction``s recomputed from the returned solution, never carried over from
an intermediate bound.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .bottleneck import CountingOracle, solve_bottleneck
from .errors import BudgetExceeded, Infeasible, InvalidInstance
from .families import Family
from .model import (
    ScenarioMatrix,
    Solution,
    WeightPreset,
    WeightVector,
    cost_profile,
    expand_preset,
    median_index,
    owa,
    owa_of_cost_vector,
    parse_rational,
)

DEFAULT_MAX_CANDIDATES = 10**7

ALGORITHMS = ("exact", "minmax", "minmin", "hurwicz", "quantile", "median", "approx")


@dataclass(frozen=True)
class SolveReport:
    solution: Solution
    value: Fraction
    algorithm: str
    certified_ratio: Fraction | None
    per_scenario_costs: tuple[int, ...]
    oracle_calls: int
    elapsed_ns: int
    params: dict = field(default_factory=dict, compare=False)

    def key(self) -> tuple:
        """Everything except timing; equal keys mean identical results."""
        return (
            self.solution,
            self.value,
            self.algorithm,
            self.certified_ratio,
            self.per_scenario_costs,
            self.oracle_calls,
            tuple(sorted(self.params.items())),
        )


def _check_instance(fam: Family, M: ScenarioMatrix, w: WeightVector | None = None) -> None:
    if M.n != fam.n:
        raise InvalidInstance(f"scenario matrix has {M.n} columns, family has {fam.n} elements")
    if w is not None and len(w) != M.K:
        raise InvalidInstance(f"{len(w)} weights for K={M.K} scenarios")


def _report(algorithm, X, M, w, calls, started, ratio=None, **params) -> SolveReport:
    return SolveReport(
        solution=X,
        value=owa(X, M, w),
        algorithm=algorithm,
        certified_ratio=ratio,
        per_scenario_costs=cost_profile(X, M),
        oracle_calls=calls,
        elapsed_ns=time.perf_counter_ns() - started,
        params=params,
    )


def solve_minmax(fam: Family, M: ScenarioMatrix) -> SolveReport:
    """Bottleneck problem under the per-element worst-case costs."""
    started = time.perf_counter_ns()
    _check_instance(fam, M)
    oracle = CountingOracle()
    X, _ = solve_bottleneck(fam, M.max_costs(), oracle)
    return _report("minmax", X, M, expand_preset(WeightPreset("max"), M.K), oracle.calls, started)


def solve_minmin(fam: Family, M: ScenarioMatrix) -> SolveReport:
    """Best single-scenario bottleneck solution; ties go to the lowest scenario."""
    started = time.perf_counter_ns()
    _check_instance(fam, M)
    oracle = CountingOracle()
    best = None
    for j in range(M.K):
        X, value = solve_bottleneck(fam, M.row(j), oracle)
        if best is None or value < best[0]:
            best = (value, X)
    return _report("minmin", best[1], M, expand_preset(WeightPreset("min"), M.K), oracle.calls, started)


# ---------------------------------------------------------------- exact solver


def threshold_levels(M: ScenarioMatrix) -> list[list[int]]:
    """Sorted distinct costs of every scenario row."""
    return [sorted(set(row)) for row in M.costs]


def count_threshold_vectors(M: ScenarioMatrix) -> int:
    return math.prod(len(levels) for levels in threshold_levels(M))


def allowed_under(M: ScenarioMatrix, t: Sequence[int]) -> set[int]:
    """Elements whose cost stays within ``t[j]`` in every scenario j."""
    return {i for i in range(M.n) if all(M.costs[j][i] <= t[j] for j in range(M.K))}


def iter_candidates(
    fam: Family,
    M: ScenarioMatrix,
    budget: int = DEFAULT_MAX_CANDIDATES,
    oracle=None,
    first_levels: Sequence[int] | None = None,
) -> Iterator[tuple[tuple[int, ...], Solution]]:
    """Yield (thresholds, witness) for every feasible threshold vector.

    Vectors range over the product of distinct row values, in lexicographic
    order. ``first_levels`` restricts the first coordinate (used to split work).
    """
    _check_instance(fam, M)
    count = count_threshold_vectors(M)
    if count > budget:
        raise BudgetExceeded("threshold vectors", count, budget)
    oracle = oracle or (lambda f, allowed: f.find_feasible(allowed))
    levels = threshold_levels(M)
    if first_levels is not None:
        levels[0] = list(first_levels)
    for t in itertools.product(*levels):
        X = oracle(fam, allowed_under(M, t))
        if X is not None:
            yield t, X


def pareto_candidates(
    fam: Family, M: ScenarioMatrix, budget: int = DEFAULT_MAX_CANDIDATES
) -> tuple[list[tuple[tuple[int, ...], Solution]], int]:
    """Componentwise-minimal feasible threshold vectors with witnesses, plus oracle call count.

    OWA is monotone, so the minimum over all feasible vectors (and its
    lexicographic tie-break) is always attained on this list. It does not
    depend on the weights and can be reused across many weight vectors.
    A vector dominated by a kept one is skipped without an oracle call:
    anything dominating it comes earlier in lexicographic order.
    """
    _check_instance(fam, M)
    count = count_threshold_vectors(M)
    if count > budget:
        raise BudgetExceeded("threshold vectors", count, budget)
    kept: list[tuple[tuple[int, ...], Solution]] = []
    calls = 0
    for t in itertools.product(*threshold_levels(M)):
        if any(all(a <= b for a, b in zip(s, t)) for s, _ in kept):
            continue
        calls += 1
        X = fam.find_feasible(allowed_under(M, t))
        if X is not None:
            kept.append((t, X))
    return kept, calls


def _best_candidate(cands, w: WeightVector):
    best = None
    for t, X in cands:
        value = owa_of_cost_vector(t, w)
        if best is None or (value, t) < (best[0], best[1]):
            best = (value, t, X)
    return best


def _exact_chunk(fam, M, w, budget, first_levels):
    oracle = CountingOracle()
    best = _best_candidate(iter_candidates(fam, M, budget, oracle, first_levels), w)
    return best, oracle.calls


def solve_exact(
    fam: Family,
    M: ScenarioMatrix,
    w: WeightVector,
    budget: int = DEFAULT_MAX_CANDIDATES,
    candidates: Sequence[tuple[tuple[int, ...], Solution]] | None = None,
    workers: int = 1,
) -> SolveReport:
    """OWA-optimal solution by enumerating per-scenario threshold vectors.

    Each feasible vector t yields a witness X with OWA(X) <= owa(t); the
    smallest owa(t) is the optimum. Ties keep the lexicographically smallest t.
    Pass ``candidates`` from :func:`pareto_candidates` to skip enumeration.
    With ``workers > 1`` the first coordinate is split across processes and
    partial winners are merged by (value, t), matching the sequential result.
    """
    started = time.perf_counter_ns()
    _check_instance(fam, M, w)
    if candidates is not None:
        best, calls = _best_candidate(candidates, w), 0
    elif workers <= 1:
        best, calls = _exact_chunk(fam, M, w, budget, None)
    else:
        count = count_threshold_vectors(M)
        if count > budget:
            raise BudgetExceeded("threshold vectors", count, budget)
        first = threshold_levels(M)[0]
        chunks = [first[k::workers] for k in range(workers) if first[k::workers]]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_exact_chunk, *zip(*[(fam, M, w, budget, c) for c in chunks])))
        winners = [b for b, _ in parts if b is not None]
        best = min(winners, key=lambda b: (b[0], b[1])) if winners else None
        calls = sum(c for _, c in parts)
    if best is None:
        raise Infeasible("feasible set is empty")
    return _report("exact", best[2], M, w, calls, started)


# ------------------------------------------------------- hurwicz and quantile


def solve_hurwicz(fam: Family, M: ScenarioMatrix, alpha, budget: int = DEFAULT_MAX_CANDIDATES) -> SolveReport:
    """alpha * worst + (1 - alpha) * best case, via K two-scenario exact problems.

    Subproblem j pairs the per-element maxima with scenario j; its optimum
    X_j minimises H_j, and the overall optimum is the best X_j.
    """
    started = time.perf_counter_ns()
    _check_instance(fam, M)
    alpha = parse_rational(alpha)
    if not 0 <= alpha <= 1:
        raise InvalidInstance("alpha must lie in [0, 1]")
    worst = M.max_costs()
    pair_w = WeightVector((alpha, 1 - alpha))
    calls = 0
    best = None
    for j in range(M.K):
        sub = solve_exact(fam, ScenarioMatrix((worst, M.row(j))), pair_w, budget)
        calls += sub.oracle_calls
        if best is None or sub.value < best[0]:
            best = (sub.value, sub.solution)
    w = expand_preset(WeightPreset.hurwicz(alpha), M.K)
    return _report("hurwicz", best[1], M, w, calls, started, alpha=alpha)


def solve_quantile(fam: Family, M: ScenarioMatrix, k: int, budget: int = DEFAULT_MAX_CANDIDATES) -> SolveReport:
    """Minimise the k-th largest scenario cost.

    For every set C of k-1 scenarios, solve min-max on the others; the best of
    these is optimal.
    """
    started = time.perf_counter_ns()
    _check_instance(fam, M)
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= M.K:
        raise InvalidInstance(f"quantile k={k!r} outside [1, {M.K}]")
    subsets = math.comb(M.K, k - 1)
    if subsets > budget:
        raise BudgetExceeded("scenario subsets", subsets, budget)
    oracle = CountingOracle()
    best = None
    for dropped in itertools.combinations(range(M.K), k - 1):
        rest = M.select_rows(j for j in range(M.K) if j not in dropped)
        X, value = solve_bottleneck(fam, rest.max_costs(), oracle)
        if best is None or value < best[0]:
            best = (value, X)
    w = expand_preset(WeightPreset.quantile(k), M.K)
    return _report("quantile", best[1], M, w, oracle.calls, started, k=k)


def solve_median(fam: Family, M: ScenarioMatrix, budget: int = DEFAULT_MAX_CANDIDATES) -> SolveReport:
    rep = solve_quantile(fam, M, median_index(M.K), budget)
    return replace(rep, algorithm="median")


def solve_approx(fam: Family, M: ScenarioMatrix, w: WeightVector, budget: int = DEFAULT_MAX_CANDIDATES) -> SolveReport:
    """Quantile solution at the first positive weight w_k; OWA within 1/w_k of optimal."""
    started = time.perf_counter_ns()
    _check_instance(fam, M, w)
    k = w.first_positive() + 1
    rep = solve_quantile(fam, M, k, budget)
    return _report("approx", rep.solution, M, w, rep.oracle_calls, started, ratio=1 / w[k - 1], k=k)


def weights_for(algorithm: str, K: int, w: WeightVector | None = None, alpha=None, k: int | None = None) -> WeightVector:
    """The weight vector whose OWA a given algorithm minimises."""
    if algorithm == "minmax":
        return expand_preset(WeightPreset("max"), K)
    if algorithm == "minmin":
        return expand_preset(WeightPreset("min"), K)
    if algorithm == "median":
        return expand_preset(WeightPreset("median"), K)
    if algorithm == "hurwicz":
        return expand_preset(WeightPreset.hurwicz(alpha), K)
    if algorithm == "quantile":
        return expand_preset(WeightPreset.quantile(k), K)
    if algorithm in ("exact", "approx"):
        if w is None:
            raise InvalidInstance(f"{algorithm} needs a weight vector")
        return w
    raise InvalidInstance(f"unknown algorithm {algorithm!r}")


def solve(
    algorithm: str,
    fam: Family,
    M: ScenarioMatrix,
    w: WeightVector | None = None,
    alpha=None,
    k: int | None = None,
    budget: int = DEFAULT_MAX_CANDIDATES,
) -> SolveReport:
    """Dispatch by algorithm name (see ``ALGORITHMS``)."""
    if algorithm == "exact":
        return solve_exact(fam, M, weights_for("exact", M.K, w), budget)
    if algorithm == "minmax":
        return solve_minmax(fam, M)
    if algorithm == "minmin":
        return solve_minmin(fam, M)
    if algorithm == "hurwicz":
        if alpha is None:
            raise InvalidInstance("hurwicz needs alpha")
        return solve_hurwicz(fam, M, alpha, budget)
    if algorithm == "quantile":
        if k is None:
            raise InvalidInstance("quantile needs k")
        return solve_quantile(fam, M, k, budget)
    if algorithm == "median":
        return solve_median(fam, M, budget)
    if algorithm == "approx":
        return solve_approx(fam, M, weights_for("approx", M.K, w), budget)
    raise InvalidInstance(f"unknown algorithm {algorithm!r}")
