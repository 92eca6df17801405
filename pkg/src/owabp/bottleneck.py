"""Deterministic bottleneck problem: min over X in Phi of max_{e_i in X} c_i."""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import Infeasible, InvalidInstance
from .families import Family
from .model import Solution

Oracle = Callable[[Family, "set[int] | None"], "Solution | None"]


class CountingOracle:
    """find_feasible wrapper that counts calls."""

    def __init__(self):
        self.calls = 0

    def __call__(self, fam: Family, allowed=None) -> Solution | None:
        self.calls += 1
        return fam.find_feasible(allowed)


def _check_costs(fam: Family, c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(c)
    if len(c) != fam.n:
        raise InvalidInstance(f"cost vector has {len(c)} entries, family has {fam.n} elements")
    if any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in c):
        raise InvalidInstance("costs must be nonnegative integers")
    return c


def below(c: Sequence[int], t: int) -> set[int]:
    return {i for i, x in enumerate(c) if x <= t}


def solve_bottleneck(fam: Family, c: Sequence[int], oracle: Oracle | None = None) -> tuple[Solution, int]:
    """Binary search over the distinct costs for the smallest feasible threshold.

    The witness is whatever the family oracle returns at that threshold.
    Raises :class:`Infeasible` if Phi is empty.
    """
    c = _check_costs(fam, c)
    oracle = oracle or (lambda f, allowed: f.find_feasible(allowed))
    values = sorted(set(c))
    hi = len(values) - 1
    best = oracle(fam, below(c, values[hi]))
    if best is None:
        raise Infeasible("feasible set is empty")
    lo = 0
    # invariant: values[hi] feasible with witness `best`; everything below lo infeasible
    while lo < hi:
        mid = (lo + hi) // 2
        X = oracle(fam, below(c, values[mid]))
        if X is None:
            lo = mid + 1
        else:
            hi, best = mid, X
    return best, max(c[i] for i in best)


def solve_bottleneck_linear(fam: Family, c: Sequence[int], oracle: Oracle | None = None) -> tuple[Solution, int]:
    """Reference: drop elements in nonincreasing cost order until Phi empties.

    Ties are dropped in ascending id order. The last witness found is optimal.
    """
    c = _check_costs(fam, c)
    oracle = oracle or (lambda f, allowed: f.find_feasible(allowed))
    remaining = set(range(fam.n))
    last = oracle(fam, remaining)
    if last is None:
        raise Infeasible("feasible set is empty")
    for i in sorted(range(fam.n), key=lambda i: (-c[i], i)):
        remaining.discard(i)
        X = oracle(fam, remaining)
        if X is None:
            break
        last = X
    return last, max(c[i] for i in last)


def is_tight(fam: Family, c: Sequence[int], value: int) -> bool:
    """Feasible at ``value`` and infeasible at the next smaller distinct cost."""
    if fam.find_feasible(below(c, value)) is None:
        return False
    smaller = [x for x in set(c) if x < value]
    return not smaller or fam.find_feasible(below(c, max(smaller))) is None
