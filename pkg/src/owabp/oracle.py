"""Brute-force reference solvers for certifying everything else on small instances."""
from __future__ import annotations

import itertools
import time
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, Infeasible
from .families import DEFAULT_ENUMERATION_BUDGET, Family
from .model import ScenarioMatrix, Solution, WeightVector, cost_profile, kth_largest, owa_of_cost_vector
from .solvers import SolveReport

ProfileTable = list[tuple[Solution, tuple[int, ...]]]


def solution_profiles(fam: Family, M: ScenarioMatrix, budget: int = DEFAULT_ENUMERATION_BUDGET) -> ProfileTable:
    """Every member of Phi with its per-scenario bottleneck costs, in lexicographic order."""
    return [(X, cost_profile(X, M)) for X in fam.enumerate_all(budget)]


def brute_force_owa(
    fam: Family,
    M: ScenarioMatrix,
    w: WeightVector,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    table: ProfileTable | None = None,
) -> SolveReport:
    """Minimum OWA over all of Phi; ties go to the lexicographically smallest set."""
    started = time.perf_counter_ns()
    table = solution_profiles(fam, M, budget) if table is None else table
    best = None
    for X, prof in table:
        value = owa_of_cost_vector(prof, w)
        if best is None or value < best[0]:
            best = (value, X, prof)
    if best is None:
        raise Infeasible("feasible set is empty")
    return SolveReport(
        solution=best[1],
        value=best[0],
        algorithm="oracle",
        certified_ratio=None,
        per_scenario_costs=best[2],
        oracle_calls=0,
        elapsed_ns=time.perf_counter_ns() - started,
    )


def brute_force_bottleneck(
    fam: Family, c: Sequence[int], budget: int = DEFAULT_ENUMERATION_BUDGET
) -> tuple[Solution, int]:
    best = None
    for X in fam.enumerate_all(budget):
        value = max(c[i] for i in X)
        if best is None or value < best[1]:
            best = (X, value)
    if best is None:
        raise Infeasible("feasible set is empty")
    return best


def worst_quantile_optimal(
    fam: Family,
    M: ScenarioMatrix,
    w: WeightVector,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    table: ProfileTable | None = None,
) -> tuple[Solution, Fraction]:
    """Largest OWA among all solutions optimal for the k-th largest cost (w_k first positive).

    This is the worst answer the quantile-based approximation could legally
    return, so its ratio to the optimum is the adversarial empirical ratio.
    """
    table = solution_profiles(fam, M, budget) if table is None else table
    if not table:
        raise Infeasible("feasible set is empty")
    k = w.first_positive() + 1
    target = min(kth_largest(prof, k) for _, prof in table)
    worst = None
    for X, prof in table:
        if kth_largest(prof, k) != target:
            continue
        value = owa_of_cost_vector(prof, w)
        if worst is None or value > worst[1]:
            worst = (X, value)
    return worst


def exact_by_element_tuples(
    fam: Family, M: ScenarioMatrix, w: WeightVector, budget: int = 10**6
) -> Fraction:
    """Optimum via the plain n^K enumeration of element tuples (one element per scenario).

    Only for tiny instances: cross-checks the distinct-threshold shortcut.
    """
    count = M.n**M.K
    if count > budget:
        raise BudgetExceeded("element tuples", count, budget)
    best = None
    for picks in itertools.product(range(M.n), repeat=M.K):
        t = [M.costs[j][f] for j, f in enumerate(picks)]
        allowed = {i for i in range(M.n) if all(M.costs[j][i] <= t[j] for j in range(M.K))}
        if fam.find_feasible(allowed) is None:
            continue
        value = owa_of_cost_vector(t, w)
        if best is None or value < best:
            best = value
    if best is None:
        raise Infeasible("feasible set is empty")
    return best
