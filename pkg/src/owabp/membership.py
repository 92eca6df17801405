"""Membership checkers for Phi, kept apart from the constructive oracles.

These go through networkx so that they share no code with
:mod:`owabp.families`; tests use them to certify every witness and every
enumerated member.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

import networkx as nx

from .families import AssignmentFamily, CutFamily, Family, PathFamily, SelectionFamily, SpanningTreeFamily


def _ids(X: Iterable[int]) -> list[int]:
    return [int(i) for i in X]


def _multidigraph(nodes, links, keep) -> nx.MultiDiGraph:
    G = nx.MultiDiGraph()
    G.add_nodes_from(nodes)
    for u, v, i in links:
        if i in keep:
            G.add_edge(u, v, key=i)
    return G


def is_simple_path(fam: PathFamily, X) -> bool:
    ids = set(_ids(X))
    if not ids or len(ids) != len(_ids(X)) or not ids <= set(range(fam.n)):
        return False
    G = _multidigraph(fam.nodes, fam.arcs, ids)
    G.remove_nodes_from([v for v in list(G) if G.degree(v) == 0])
    if fam.source not in G or fam.sink not in G:
        return False
    for v in G:
        want = (0, 1) if v == fam.source else (1, 0) if v == fam.sink else (1, 1)
        if (G.in_degree(v), G.out_degree(v)) != want:
            return False
    return nx.is_weakly_connected(G)


def is_spanning_tree(fam: SpanningTreeFamily, X) -> bool:
    ids = _ids(X)
    if not ids or len(set(ids)) != len(ids) or not set(ids) <= set(range(fam.n)):
        return False
    G = nx.MultiGraph()
    G.add_nodes_from(fam.nodes)
    for u, v, i in fam.edges:
        if i in ids:
            G.add_edge(u, v, key=i)
    return nx.is_tree(G)


def is_minimal_cut(fam: CutFamily, X) -> bool:
    ids = set(_ids(X))
    if not ids or len(ids) != len(_ids(X)) or not ids <= set(range(fam.n)):
        return False
    everything = set(range(fam.n))

    def connected_without(removed):
        return nx.has_path(_multidigraph(fam.nodes, fam.arcs, everything - removed), fam.source, fam.sink)

    if connected_without(ids):
        return False
    rest = _multidigraph(fam.nodes, fam.arcs, everything - ids)
    side = nx.descendants(rest, fam.source) | {fam.source}
    induced = {i for u, v, i in fam.arcs if u in side and v not in side}
    if induced != ids:
        return False
    return all(connected_without(ids - {i}) for i in ids)


def is_perfect_matching(fam: AssignmentFamily, X) -> bool:
    ids = _ids(X)
    if len(set(ids)) != len(ids) or not set(ids) <= set(range(fam.n)):
        return False
    if len(ids) != len(fam.left):
        return False
    left = Counter(fam.edges[i][0] for i in ids)
    right = Counter(fam.edges[i][1] for i in ids)
    return set(left) == set(fam.left) and set(right) == set(fam.right)


def is_selection(fam: SelectionFamily, X) -> bool:
    ids = _ids(X)
    return len(set(ids)) == len(ids) == fam.p and all(0 <= i < fam.n for i in ids)


_CHECKERS = {
    "path": is_simple_path,
    "spanning_tree": is_spanning_tree,
    "st_cut": is_minimal_cut,
    "assignment": is_perfect_matching,
    "selection": is_selection,
}


def is_member(fam: Family, X) -> bool:
    """True iff the id set ``X`` belongs to Phi for ``fam``."""
    return _CHECKERS[fam.kind](fam, X)
