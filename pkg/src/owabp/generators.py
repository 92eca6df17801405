"""Instance families: the tight approximation example, Min 3-SAT reductions, random corpora.

Randomness comes from :class:`SplitMix64`, a 64-bit generator whose output
sequence is fixed by its published constants, so a seed reproduces the same
instance on any platform or in any language.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInstance
from .families import AssignmentFamily, CutFamily, PathFamily, SelectionFamily, SpanningTreeFamily
from .instance import Instance
from .model import ScenarioMatrix, WeightPreset

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Steele/Lea/Flood SplitMix64. ``below`` uses rejection sampling (no modulo bias)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# ------------------------------------------------------------------ table 1


def gen_table1(K: int) -> Instance:
    """2K elements, choose K, uniform weights.

    Elements e_1..e_K cost K only in the last scenario; e_{K+j} costs K only
    in scenario j. Optimum is {e_1..e_K} with OWA 1, while every solution has
    max cost K, so min-max may return {e_{K+1}..e_{2K}} with OWA K.
    """
    if isinstance(K, bool) or not isinstance(K, int) or K < 2:
        raise InvalidInstance(f"table1 needs K >= 2, got {K!r}")
    n = 2 * K
    rows = tuple(
        tuple(K if (i < K and j == K - 1) or i == K + j else 0 for i in range(n)) for j in range(K)
    )
    return Instance(
        SelectionFamily(n, K),
        ScenarioMatrix(rows),
        WeightPreset("average"),
        name=f"table1-K{K}",
        metadata={"provenance": "table1", "K": K},
    )


# ------------------------------------------------------------------ 3-SAT


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of 1-3 literals; literal +v / -v means x_v / not x_v."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        if self.num_vars < 1:
            raise InvalidInstance("formula needs at least one variable")
        if not clauses:
            raise InvalidInstance("formula needs at least one clause")
        for c in clauses:
            if not 1 <= len(c) <= 3:
                raise InvalidInstance(f"clause {c} must have 1 to 3 literals")
            for lit in c:
                if isinstance(lit, bool) or not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                    raise InvalidInstance(f"bad literal {lit!r} for {self.num_vars} variables")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_count(self, assignment: Sequence[bool]) -> int:
        """``assignment[v - 1]`` is the value of x_v."""
        return sum(
            any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in self.clauses
        )

    def min_satisfied(self) -> int:
        """Fewest clauses any assignment satisfies, by truth table."""
        return min(
            self.satisfied_count(bits) for bits in itertools.product((False, True), repeat=self.num_vars)
        )

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.m}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Minimal DIMACS CNF: ``c`` comments, one ``p cnf`` header, 0-terminated clauses."""
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InvalidInstance(f"bad DIMACS header {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InvalidInstance(f"bad DIMACS token {tok!r}")
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise InvalidInstance("missing DIMACS header")
    return CnfFormula(num_vars, tuple(clauses))


def literal_element(lit: int) -> int:
    """Arc/edge id for a literal: x_v -> 2(v-1), not x_v -> 2(v-1)+1."""
    return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)


def assignment_solution(bits: Sequence[bool]) -> tuple[int, ...]:
    """Elements of the path (or tree) picking e_v for x_v = 1, f_v for x_v = 0."""
    return tuple(literal_element(v + 1 if b else -(v + 1)) for v, b in enumerate(bits))


def chain_family(num_vars: int, family: str = "path"):
    """Series chain s=v0 -> v1 -> ... -> vn=t with two parallel links per position.

    Position v holds e_v (id 2(v-1)) and f_v (id 2(v-1)+1). As a path family
    every source-sink path picks one of each pair; read undirected, the same
    multigraph's spanning trees are exactly those picks.
    """
    nodes = ["s"] + [f"v{k}" for k in range(1, num_vars)] + ["t"]
    links = []
    for v in range(1, num_vars + 1):
        u, w = nodes[v - 1], nodes[v]
        links.append((u, w, literal_element(v)))
        links.append((u, w, literal_element(-v)))
    if family == "path":
        return PathFamily(tuple(nodes), tuple(links), "s", "t")
    if family == "spanning_tree":
        return SpanningTreeFamily(tuple(nodes), tuple(links))
    raise InvalidInstance(f"3-SAT chain is available as path or spanning_tree, not {family!r}")


SAT_MODES = ("average", "median", "nondecreasing")


def gen_3sat_path(phi: CnfFormula, mode: str = "average", L: int | None = None, family: str = "path") -> Instance:
    """Min 3-SAT reduction instance.

    One scenario per clause: cost 1 on the links of its literals, 0 elsewhere.

    * ``average``: uniform weights; min OWA = (fewest satisfied clauses)/m.
    * ``median``: pad with all-ones (L < floor(m/2)) or all-zeros
      (L > floor(m/2)) scenarios and put all weight on the median rank; min
      OWA = 0 iff some assignment satisfies at most L clauses.
    * ``nondecreasing``: weights 0 on the first L ranks, 1/(m-L) after;
      same zero test.
    """
    if mode not in SAT_MODES:
        raise InvalidInstance(f"unknown mode {mode!r}")
    fam = chain_family(phi.num_vars, family)
    m = phi.m
    rows = []
    for clause in phi.clauses:
        row = [0] * fam.n
        for lit in clause:
            row[literal_element(lit)] = 1
        rows.append(tuple(row))
    meta = {"provenance": f"3sat-{mode}", "num_vars": phi.num_vars, "clauses": [list(c) for c in phi.clauses]}

    if mode == "average":
        weights = WeightPreset("average")
    else:
        if L is None or isinstance(L, bool) or not isinstance(L, int) or not 0 <= L <= m:
            raise InvalidInstance(f"mode {mode} needs 0 <= L <= m={m}, got {L!r}")
        meta["L"] = L
        if mode == "median":
            half = m // 2
            if L < half:
                rows += [tuple([1] * fam.n)] * (m - 2 * L)
                weights = WeightPreset.quantile(m - L + 1)
            elif L > half:
                rows += [tuple([0] * fam.n)] * (2 * L - m)
                weights = WeightPreset.quantile(L + 1)
            else:
                raise InvalidInstance(f"unsupported boundary case L = floor(m/2) = {half}")
        else:
            if L >= m:
                raise InvalidInstance(f"nondecreasing mode needs L < m={m}")
            weights = WeightPreset.explicit([Fraction(0)] * L + [Fraction(1, m - L)] * (m - L))
    name = f"3sat-{mode}-n{phi.num_vars}-m{m}" + ("" if L is None or mode == "average" else f"-L{L}")
    return Instance(fam, ScenarioMatrix(tuple(rows)), weights, name=name, metadata=meta)


def random_formula(rng: SplitMix64, num_vars: int, m: int, max_len: int = 3) -> CnfFormula:
    clauses = []
    for _ in range(m):
        size = rng.randint(1, min(max_len, num_vars))
        vars_ = list(range(1, num_vars + 1))
        rng.shuffle(vars_)
        clauses.append(tuple(v if rng.below(2) else -v for v in vars_[:size]))
    return CnfFormula(num_vars, tuple(clauses))


# ------------------------------------------------------------------ random


RANDOM_KINDS = ("selection", "path", "st_cut", "spanning_tree", "assignment")


def random_weights(rng: SplitMix64, K: int, max_units: int = 4) -> WeightPreset:
    """Random exact weights; numerators drawn in [0, max_units], then normalised."""
    while True:
        units = [rng.randint(0, max_units) for _ in range(K)]
        if sum(units):
            break
    total = sum(units)
    return WeightPreset.explicit(Fraction(u, total) for u in units)


def _random_digraph(rng: SplitMix64, n_elements: int, n_nodes: int):
    if n_nodes < 2:
        raise InvalidInstance("directed families need at least 2 nodes")
    inner = [f"v{k}" for k in range(1, n_nodes - 1)]
    nodes = ["s"] + inner + ["t"]
    hops = list(inner)
    rng.shuffle(hops)
    hops = hops[: rng.randint(0, min(len(hops), n_elements - 1))]
    route = ["s"] + hops + ["t"]
    pairs = list(zip(route, route[1:]))
    while len(pairs) < n_elements:
        u, v = nodes[rng.below(n_nodes)], nodes[rng.below(n_nodes)]
        if u != v:
            pairs.append((u, v))
    rng.shuffle(pairs)
    return tuple(nodes), tuple((u, v, i) for i, (u, v) in enumerate(pairs))


def gen_random(
    kind: str,
    n_elements: int,
    K: int,
    cost_max: int,
    seed: int,
    n_nodes: int | None = None,
    p: int | None = None,
    weights: WeightPreset | None = None,
) -> Instance:
    """Seeded random instance with a guaranteed-nonempty feasible set.

    Graph families plant a feasible backbone (a source-sink route, a
    spanning tree, a perfect matching) and add random extra links; element ids
    are shuffled afterwards. ``n_nodes`` is the node count (per side for
    assignment); it defaults to a size that fits ``n_elements``.
    Weights default to random exact weights drawn from the same stream.
    """
    if kind not in RANDOM_KINDS:
        raise InvalidInstance(f"unknown family {kind!r}")
    if n_elements < 1 or K < 1 or cost_max < 0:
        raise InvalidInstance("need n_elements >= 1, K >= 1, cost_max >= 0")
    rng = SplitMix64(seed)

    if kind == "selection":
        p = rng.randint(1, n_elements) if p is None else p
        fam = SelectionFamily(n_elements, p)
    elif kind in ("path", "st_cut"):
        n_nodes = n_nodes if n_nodes is not None else min(5, n_elements + 1)
        nodes, arcs = _random_digraph(rng, n_elements, n_nodes)
        fam = (PathFamily if kind == "path" else CutFamily)(nodes, arcs, "s", "t")
    elif kind == "spanning_tree":
        n_nodes = n_nodes if n_nodes is not None else min(5, n_elements + 1)
        if n_nodes < 2 or n_elements < n_nodes - 1:
            raise InvalidInstance(f"{n_elements} edges cannot span {n_nodes} nodes")
        nodes = [f"v{k}" for k in range(n_nodes)]
        order = list(nodes)
        rng.shuffle(order)
        pairs = [(order[k], order[rng.below(k)]) for k in range(1, n_nodes)]
        while len(pairs) < n_elements:
            u, v = nodes[rng.below(n_nodes)], nodes[rng.below(n_nodes)]
            if u != v:
                pairs.append((u, v))
        rng.shuffle(pairs)
        fam = SpanningTreeFamily(tuple(nodes), tuple((u, v, i) for i, (u, v) in enumerate(pairs)))
    else:
        side = n_nodes if n_nodes is not None else max(1, min(3, n_elements))
        if side < 1 or n_elements < side:
            raise InvalidInstance(f"{n_elements} edges cannot match {side} + {side} nodes")
        left = [f"l{k}" for k in range(side)]
        right = [f"r{k}" for k in range(side)]
        perm = list(right)
        rng.shuffle(perm)
        pairs = list(zip(left, perm))
        while len(pairs) < n_elements:
            pairs.append((left[rng.below(side)], right[rng.below(side)]))
        rng.shuffle(pairs)
        fam = AssignmentFamily(tuple(left), tuple(right), tuple((u, v, i) for i, (u, v) in enumerate(pairs)))

    rows = tuple(tuple(rng.randint(0, cost_max) for _ in range(fam.n)) for _ in range(K))
    preset = weights if weights is not None else random_weights(rng, K)
    meta = {
        "provenance": "random",
        "seed": seed,
        "family": kind,
        "n_elements": n_elements,
        "K": K,
        "cost_max": cost_max,
    }
    return Instance(fam, ScenarioMatrix(rows), preset, name=f"random-{kind}-{seed}", metadata=meta)


def random_corpus(kind: str, count: int, base_seed: int = 0, max_elements: int = 10, max_K: int = 4, cost_max: int = 9) -> Iterable[Instance]:
    """``count`` seeded instances; sizes (n <= max_elements, K <= max_K) come from a separate stream."""
    sizer = SplitMix64(base_seed ^ 0x5EED)
    for k in range(count):
        K = sizer.randint(1, max_K)
        if kind == "selection":
            yield gen_random(kind, sizer.randint(1, max_elements), K, cost_max, base_seed + k)
        elif kind == "assignment":
            side = sizer.randint(1, 3)
            yield gen_random(kind, sizer.randint(side, min(max_elements, side * side + 1)), K, cost_max, base_seed + k, n_nodes=side)
        elif kind == "spanning_tree":
            nodes = sizer.randint(2, 6)
            yield gen_random(kind, sizer.randint(nodes - 1, max_elements), K, cost_max, base_seed + k, n_nodes=nodes)
        else:
            nodes = sizer.randint(2, 6)
            yield gen_random(kind, sizer.randint(min(nodes, max_elements), max_elements), K, cost_max, base_seed + k, n_nodes=nodes)
