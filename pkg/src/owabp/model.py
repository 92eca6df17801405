"""Scenario data model and exact OWA evaluation.

Costs are nonnegative ints, weights are :class:`fractions.Fraction`, and every
OWA value is a ``Fraction``. Nothing in here touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInstance

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an integer literal, an int or a Fraction.

    Floats and decimal strings are refused so nothing inexact sneaks in.
    """
    if isinstance(value, bool):
        raise InvalidInstance(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            num, den = m.group(1), m.group(2)
            if den is not None and int(den) == 0:
                raise InvalidInstance(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den is not None else 1)
    raise InvalidInstance(f"not a rational: {value!r}")


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ScenarioMatrix:
    """K scenario rows over n elements; ``costs[j][i]`` is the cost of e_i under c_j.

    Duplicate rows are allowed (the median-padding reduction relies on them).
    """

    costs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.costs)
        if not rows:
            raise InvalidInstance("scenario matrix needs K >= 1 rows")
        n = len(rows[0])
        if n == 0:
            raise InvalidInstance("scenario matrix needs n >= 1 elements")
        for j, row in enumerate(rows):
            if len(row) != n:
                raise InvalidInstance(f"scenario {j} has {len(row)} entries, expected {n}")
            for c in row:
                if isinstance(c, bool) or not isinstance(c, int):
                    raise InvalidInstance(f"scenario {j}: cost {c!r} is not an integer")
                if c < 0:
                    raise InvalidInstance(f"scenario {j}: negative cost {c}")
        object.__setattr__(self, "costs", rows)

    @property
    def K(self) -> int:
        return len(self.costs)

    @property
    def n(self) -> int:
        return len(self.costs[0])

    def row(self, j: int) -> tuple[int, ...]:
        return self.costs[j]

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.costs)

    def max_costs(self) -> tuple[int, ...]:
        """Per-element worst case over all scenarios (the min-max cost vector)."""
        return tuple(max(col) for col in zip(*self.costs))

    def select_rows(self, rows: Iterable[int]) -> ScenarioMatrix:
        return ScenarioMatrix(tuple(self.costs[j] for j in rows))


@dataclass(frozen=True)
class WeightVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(parse_rational(v) for v in self.values)
        if not vals:
            raise InvalidInstance("weight vector is empty")
        for v in vals:
            if v < 0 or v > 1:
                raise InvalidInstance(f"weight {format_rational(v)} outside [0, 1]")
        total = sum(vals, Fraction(0))
        if total != 1:
            raise InvalidInstance(f"weights sum to {format_rational(total)}, not 1")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def first_positive(self) -> int:
        """0-based index of the first positive weight (always exists)."""
        return next(j for j, v in enumerate(self.values) if v > 0)

    def is_nonincreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))


@dataclass(frozen=True, order=True)
class Solution:
    """A nonempty set of element ids, stored sorted."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        if not elems:
            raise InvalidInstance("empty solution")
        if elems[0] < 0:
            raise InvalidInstance(f"negative element id {elems[0]}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, elements: Iterable[int]) -> Solution:
        return cls(tuple(elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, i) -> bool:
        return i in self.elements


PRESET_KINDS = ("max", "min", "average", "quantile", "median", "hurwicz", "explicit")


@dataclass(frozen=True)
class WeightPreset:
    """Named weight distribution; expands to a WeightVector once K is known."""

    kind: str
    alpha: Fraction | None = None
    k: int | None = None
    values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind not in PRESET_KINDS:
            raise InvalidInstance(f"unknown weight preset {self.kind!r}")
        if self.kind == "hurwicz":
            if self.alpha is None:
                raise InvalidInstance("hurwicz preset needs alpha")
            alpha = parse_rational(self.alpha)
            if not 0 <= alpha <= 1:
                raise InvalidInstance(f"hurwicz alpha {format_rational(alpha)} outside [0, 1]")
            object.__setattr__(self, "alpha", alpha)
        if self.kind == "quantile" and (self.k is None or isinstance(self.k, bool) or not isinstance(self.k, int)):
            raise InvalidInstance("quantile preset needs an integer k")
        if self.kind == "explicit":
            if self.values is None:
                raise InvalidInstance("explicit preset needs values")
            object.__setattr__(self, "values", tuple(parse_rational(v) for v in self.values))

    @classmethod
    def explicit(cls, values: Iterable) -> WeightPreset:
        return cls("explicit", values=tuple(values))

    @classmethod
    def hurwicz(cls, alpha) -> WeightPreset:
        return cls("hurwicz", alpha=parse_rational(alpha))

    @classmethod
    def quantile(cls, k: int) -> WeightPreset:
        return cls("quantile", k=k)


def median_index(K: int) -> int:
    """1-based rank of the median: floor(K/2) + 1."""
    return K // 2 + 1


def expand_preset(preset: WeightPreset, K: int) -> WeightVector:
    if K < 1:
        raise InvalidInstance(f"K must be >= 1, got {K}")

    def indicator(pos: int) -> WeightVector:
        w = [Fraction(0)] * K
        w[pos - 1] = Fraction(1)
        return WeightVector(tuple(w))

    kind = preset.kind
    if kind == "max":
        return indicator(1)
    if kind == "min":
        return indicator(K)
    if kind == "average":
        return WeightVector(tuple(Fraction(1, K) for _ in range(K)))
    if kind == "quantile":
        if not 1 <= preset.k <= K:
            raise InvalidInstance(f"quantile k={preset.k} outside [1, {K}]")
        return indicator(preset.k)
    if kind == "median":
        return indicator(median_index(K))
    if kind == "hurwicz":
        w = [Fraction(0)] * K
        w[0] += preset.alpha
        w[K - 1] += 1 - preset.alpha  # K == 1 folds both onto the single weight
        return WeightVector(tuple(w))
    if len(preset.values) != K:
        raise InvalidInstance(f"{len(preset.values)} explicit weights for K={K}")
    return WeightVector(preset.values)


def bottleneck_cost(X: Solution | Iterable[int], j: int, M: ScenarioMatrix) -> int:
    """max of c_ij over e_i in X."""
    elems = X.elements if isinstance(X, Solution) else tuple(X)
    if not elems:
        raise InvalidInstance("empty solution")
    if not 0 <= j < M.K:
        raise IndexError(f"scenario index {j} outside [0, {M.K})")
    row = M.costs[j]
    return max(row[i] for i in elems)


def cost_profile(X: Solution | Iterable[int], M: ScenarioMatrix) -> tuple[int, ...]:
    """(F(X, c_1), ..., F(X, c_K))."""
    elems = X.elements if isinstance(X, Solution) else tuple(X)
    if not elems:
        raise InvalidInstance("empty solution")
    return tuple(max(row[i] for i in elems) for row in M.costs)


def rank_order(v: Sequence[int]) -> list[int]:
    """Permutation sorting v nonincreasing; ties keep ascending index."""
    return sorted(range(len(v)), key=lambda j: -v[j])


def owa_of_cost_vector(v: Sequence[int], w: WeightVector) -> Fraction:
    if len(v) != len(w):
        raise InvalidInstance(f"cost vector has {len(v)} entries, weights have {len(w)}")
    return sum((w[r] * v[j] for r, j in enumerate(rank_order(v))), Fraction(0))


def owa(X: Solution | Iterable[int], M: ScenarioMatrix, w: WeightVector) -> Fraction:
    return owa_of_cost_vector(cost_profile(X, M), w)


def kth_largest(v: Sequence[int], k: int) -> int:
    """k is 1-based."""
    return sorted(v, reverse=True)[k - 1]
