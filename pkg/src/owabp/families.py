"""Problem families and their feasibility oracles.

Every family answers two questions about its feasible set Phi:

* ``find_feasible(allowed)`` - is there a member of Phi using only ``allowed``
  elements? Returns a witness :class:`Solution` or ``None``.
* ``enumerate_all(budget)`` - every member of Phi, in lexicographic order of
  the sorted id tuples.

Witnesses are deterministic: each oracle scans elements in ascending id order.
Graph families map element ids ``0..n-1`` one-to-one onto arcs/edges; node
names are strings and parallel arcs/edges are allowed.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Collection, Iterable, Iterator

from .errors import BudgetExceeded, InvalidInstance
from .model import Solution

DEFAULT_ENUMERATION_BUDGET = 5000

Link = tuple[str, str, int]


def _index_links(links: Iterable, what: str) -> tuple[Link, ...]:
    """Normalise (u, v, id) triples and order them so that ``result[i]`` has id i."""
    out = []
    for link in links:
        try:
            u, v, i = link
        except (TypeError, ValueError):
            raise InvalidInstance(f"{what} must be (tail, head, element_id) triples, got {link!r}")
        if isinstance(i, bool) or not isinstance(i, int):
            raise InvalidInstance(f"{what} element id {i!r} is not an integer")
        out.append((str(u), str(v), i))
    out.sort(key=lambda t: t[2])
    ids = [t[2] for t in out]
    if ids != list(range(len(out))):
        raise InvalidInstance(f"{what} element ids must be exactly 0..{len(out) - 1}")
    if not out:
        raise InvalidInstance(f"no {what}")
    return tuple(out)


def _check_nodes(nodes: Iterable, links: tuple[Link, ...]) -> tuple[str, ...]:
    names = tuple(str(v) for v in nodes)
    if len(set(names)) != len(names):
        raise InvalidInstance("duplicate node names")
    known = set(names)
    for u, v, i in links:
        if u not in known or v not in known:
            raise InvalidInstance(f"element {i} touches unknown node")
    return names


def _allowed_set(allowed: Collection[int] | None, n: int) -> set[int]:
    if allowed is None:
        return set(range(n))
    out = set(allowed)
    for i in out:
        if not 0 <= i < n:
            raise InvalidInstance(f"allowed element {i} outside [0, {n})")
    return out


def _reachable(adj: dict[str, list[tuple[str, int]]], start: str, skip: Collection[int] = ()) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, i in adj[u]:
            if v not in seen and i not in skip:
                seen.add(v)
                queue.append(v)
    return seen


class Family:
    """Common surface; subclasses provide ``n``, ``kind`` and the oracles."""

    kind = ""
    n: int

    def find_feasible(self, allowed: Collection[int] | None = None) -> Solution | None:
        raise NotImplementedError

    def _members(self) -> Iterator[tuple[int, ...]]:
        raise NotImplementedError

    def enumerate_all(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Solution]:
        """Yield Phi in lexicographic order; raises BudgetExceeded past ``budget`` members."""
        if budget <= 0:
            raise ValueError("budget must be positive")
        found = set()
        for members in self._members():
            found.add(members)
            if len(found) > budget:
                raise BudgetExceeded("solutions", len(found), budget)
        for members in sorted(found):
            yield Solution(members)


@dataclass(frozen=True)
class SelectionFamily(Family):
    """All subsets of exactly ``p`` elements out of ``n``."""

    n: int
    p: int
    kind = "selection"

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.p <= self.n:
            raise InvalidInstance(f"selection needs 1 <= p <= n, got n={self.n}, p={self.p}")

    def find_feasible(self, allowed=None):
        picked = sorted(_allowed_set(allowed, self.n))[: self.p]
        return Solution(tuple(picked)) if len(picked) == self.p else None

    def _members(self):
        return itertools.combinations(range(self.n), self.p)


@dataclass(frozen=True)
class PathFamily(Family):
    """Simple directed source-sink paths; elements are arcs."""

    nodes: tuple[str, ...]
    arcs: tuple[Link, ...]
    source: str
    sink: str
    kind = "path"

    def __post_init__(self):
        arcs = _index_links(self.arcs, "arcs")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "nodes", _check_nodes(self.nodes, arcs))
        object.__setattr__(self, "source", str(self.source))
        object.__setattr__(self, "sink", str(self.sink))
        if self.source == self.sink:
            raise InvalidInstance("source and sink must differ")
        if self.source not in self.nodes or self.sink not in self.nodes:
            raise InvalidInstance("source/sink not among nodes")

    @property
    def n(self) -> int:
        return len(self.arcs)

    def _out(self, allowed: set[int] | None = None) -> dict[str, list[tuple[str, int]]]:
        adj = {v: [] for v in self.nodes}
        for u, v, i in self.arcs:
            if allowed is None or i in allowed:
                adj[u].append((v, i))
        return adj

    def find_feasible(self, allowed=None):
        adj = self._out(_allowed_set(allowed, self.n))
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            if u == self.sink:
                break
            for v, i in adj[u]:
                if v not in parent:
                    parent[v] = (u, i)
                    queue.append(v)
        if self.sink not in parent:
            return None
        path = []
        v = self.sink
        while parent[v] is not None:
            u, i = parent[v]
            path.append(i)
            v = u
        return Solution(tuple(path))

    def _members(self):
        adj = self._out()
        on_path = {self.source}
        used: list[int] = []

        def walk(u):
            if u == self.sink:
                yield tuple(sorted(used))
                return
            for v, i in adj[u]:
                if v in on_path:
                    continue
                on_path.add(v)
                used.append(i)
                yield from walk(v)
                used.pop()
                on_path.discard(v)

        return walk(self.source)


@dataclass(frozen=True)
class CutFamily(Family):
    """Inclusion-minimal arc sets separating source from sink.

    Each member equals the forward cut-set of a node bipartition with the
    source on one side and the sink on the other.
    """

    nodes: tuple[str, ...]
    arcs: tuple[Link, ...]
    source: str
    sink: str
    kind = "st_cut"

    def __post_init__(self):
        arcs = _index_links(self.arcs, "arcs")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "nodes", _check_nodes(self.nodes, arcs))
        object.__setattr__(self, "source", str(self.source))
        object.__setattr__(self, "sink", str(self.sink))
        if self.source == self.sink:
            raise InvalidInstance("source and sink must differ")
        if self.source not in self.nodes or self.sink not in self.nodes:
            raise InvalidInstance("source/sink not among nodes")
        if self.sink not in _reachable(self._out(), self.source):
            # the only separating set would be empty
            raise InvalidInstance("sink unreachable from source; no nonempty cut exists")

    @property
    def n(self) -> int:
        return len(self.arcs)

    def _out(self) -> dict[str, list[tuple[str, int]]]:
        adj = {v: [] for v in self.nodes}
        for u, v, i in self.arcs:
            adj[u].append((v, i))
        return adj

    def _separates(self, removed: Collection[int], adj=None) -> bool:
        return self.sink not in _reachable(adj or self._out(), self.source, removed)

    def _forward_cut(self, side: set[str]) -> tuple[int, ...]:
        return tuple(i for u, v, i in self.arcs if u in side and v not in side)

    def _minimalize(self, cut: Iterable[int], adj) -> tuple[int, ...]:
        kept = set(cut)
        for i in sorted(kept, reverse=True):
            kept.discard(i)
            if not self._separates(kept, adj):
                kept.add(i)
        return tuple(sorted(kept))

    def find_feasible(self, allowed=None):
        allowed = _allowed_set(allowed, self.n)
        adj = self._out()
        # grow the source side through arcs that may not be cut
        side = _reachable(adj, self.source, skip=allowed)
        if self.sink in side:
            return None
        return Solution(self._minimalize(self._forward_cut(side), adj))

    def _members(self):
        adj = self._out()
        inner = [v for v in self.nodes if v not in (self.source, self.sink)]
        for r in range(len(inner) + 1):
            for extra in itertools.combinations(inner, r):
                cut = self._forward_cut({self.source, *extra})
                if not cut or not self._separates(cut, adj):
                    continue
                if all(not self._separates([a for a in cut if a != i], adj) for i in cut):
                    yield cut


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class SpanningTreeFamily(Family):
    """Spanning trees of an undirected multigraph; elements are edges."""

    nodes: tuple[str, ...]
    edges: tuple[Link, ...]
    kind = "spanning_tree"

    def __post_init__(self):
        edges = _index_links(self.edges, "edges")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "nodes", _check_nodes(self.nodes, edges))
        if len(self.nodes) < 2:
            raise InvalidInstance("spanning tree family needs at least 2 nodes")

    @property
    def n(self) -> int:
        return len(self.edges)

    def find_feasible(self, allowed=None):
        allowed = _allowed_set(allowed, self.n)
        dsu = _DSU(self.nodes)
        tree = [i for u, v, i in self.edges if i in allowed and dsu.union(u, v)]
        return Solution(tuple(tree)) if len(tree) == len(self.nodes) - 1 else None

    def _members(self):
        need = len(self.nodes) - 1
        edges = self.edges
        index = {v: k for k, v in enumerate(self.nodes)}

        def find(parent, x):
            while parent[x] != x:
                x = parent[x]
            return x

        def grow(start, chosen, parent):
            if len(chosen) == need:
                yield tuple(chosen)
                return
            for pos in range(start, len(edges) - (need - len(chosen)) + 1):
                u, v, i = edges[pos]
                ru, rv = find(parent, index[u]), find(parent, index[v])
                if ru == rv:
                    continue
                nxt = list(parent)
                nxt[rv] = ru
                chosen.append(i)
                yield from grow(pos + 1, chosen, nxt)
                chosen.pop()

        return grow(0, [], list(range(len(self.nodes))))


@dataclass(frozen=True)
class AssignmentFamily(Family):
    """Perfect matchings of a balanced bipartite multigraph; edges run left -> right."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: tuple[Link, ...]
    kind = "assignment"

    def __post_init__(self):
        edges = _index_links(self.edges, "edges")
        left = tuple(str(v) for v in self.left)
        right = tuple(str(v) for v in self.right)
        if len(left) != len(right) or not left:
            raise InvalidInstance("assignment needs two nonempty sides of equal size")
        if len(set(left) | set(right)) != 2 * len(left):
            raise InvalidInstance("node names must be distinct across both sides")
        ls, rs = set(left), set(right)
        for u, v, i in edges:
            if u not in ls or v not in rs:
                raise InvalidInstance(f"edge {i} must join a left node to a right node")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.left + self.right

    def _adj(self, allowed=None) -> dict[str, list[tuple[str, int]]]:
        adj = {u: [] for u in self.left}
        for u, v, i in self.edges:
            if allowed is None or i in allowed:
                adj[u].append((v, i))
        return adj

    def find_feasible(self, allowed=None):
        adj = self._adj(_allowed_set(allowed, self.n))
        match_of_right: dict[str, tuple[str, int]] = {}

        def augment(u, seen):
            for v, i in adj[u]:
                if v in seen:
                    continue
                seen.add(v)
                if v not in match_of_right or augment(match_of_right[v][0], seen):
                    match_of_right[v] = (u, i)
                    return True
            return False

        for u in self.left:
            if not augment(u, set()):
                return None
        return Solution(tuple(i for _, i in match_of_right.values()))

    def _members(self):
        adj = self._adj()
        taken: set[str] = set()
        chosen: list[int] = []

        def place(k):
            if k == len(self.left):
                yield tuple(sorted(chosen))
                return
            for v, i in adj[self.left[k]]:
                if v in taken:
                    continue
                taken.add(v)
                chosen.append(i)
                yield from place(k + 1)
                chosen.pop()
                taken.discard(v)

        return place(0)


FAMILY_KINDS = {
    "selection": SelectionFamily,
    "path": PathFamily,
    "st_cut": CutFamily,
    "spanning_tree": SpanningTreeFamily,
    "assignment": AssignmentFamily,
}


def find_feasible(fam: Family, allowed: Collection[int] | None = None) -> Solution | None:
    return fam.find_feasible(allowed)


def enumerate_all(fam: Family, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Solution]:
    return fam.enumerate_all(budget)
