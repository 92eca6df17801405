import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from owabp.errors import BudgetExceeded, InvalidInstance
from owabp.families import AssignmentFamily, CutFamily, PathFamily, SelectionFamily, SpanningTreeFamily, enumerate_all, find_feasible
from owabp.generators import chain_family
from owabp.membership import is_member

from conftest import random_instances


def complete_bipartite(m):
    left = [f"l{a}" for a in range(m)]
    right = [f"r{b}" for b in range(m)]
    edges = [(left[a], right[b], a * m + b) for a in range(m) for b in range(m)]
    return AssignmentFamily(tuple(left), tuple(right), tuple(edges))


def triangle():
    return SpanningTreeFamily(("a", "b", "c"), (("a", "b", 0), ("b", "c", 1), ("a", "c", 2)))


def test_chain_path_picks_one_per_position():
    fam = chain_family(4)
    X = find_feasible(fam)
    assert len(X) == 4
    for v in range(4):
        assert len({2 * v, 2 * v + 1} & set(X)) == 1
    assert is_member(fam, X)


def test_selection_shortfall():
    fam = SelectionFamily(6, 3)
    assert find_feasible(fam, {0, 4}) is None
    assert find_feasible(fam, {5, 1, 3, 4}).elements == (1, 3, 4)


def test_triangle_two_edges():
    assert find_feasible(triangle(), {0, 2}).elements == (0, 2)
    assert find_feasible(triangle(), {1}) is None


def test_enumeration_counts():
    assert len(list(enumerate_all(SelectionFamily(4, 2)))) == 6
    assert len(list(enumerate_all(complete_bipartite(3)))) == 6
    assert len(list(enumerate_all(triangle()))) == 3


def test_chain_of_three_pairs_has_eight_paths():
    fam = chain_family(3)
    paths = list(enumerate_all(fam))
    # independent count: one arc per position
    expected = sorted(tuple(sorted(p)) for p in itertools.product((0, 1), (2, 3), (4, 5)))
    assert [p.elements for p in paths] == expected
    assert len(paths) == 8


def test_enumeration_is_lexicographic():
    sols = [s.elements for s in enumerate_all(SelectionFamily(5, 3))]
    assert sols == sorted(sols)
    assert sols[0] == (0, 1, 2)


def test_budget_exceeded_carries_count():
    with pytest.raises(BudgetExceeded) as info:
        list(enumerate_all(SelectionFamily(10, 5), budget=100))
    assert info.value.count == 101
    assert "search space too large" in str(info.value)


def test_cut_on_diamond():
    # s->a->t and s->b->t: minimal cuts pick one arc per route
    fam = CutFamily(("s", "a", "b", "t"), (("s", "a", 0), ("a", "t", 1), ("s", "b", 2), ("b", "t", 3)), "s", "t")
    cuts = [c.elements for c in enumerate_all(fam)]
    assert cuts == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert find_feasible(fam, {1, 3}).elements == (1, 3)
    assert find_feasible(fam, {0, 1}) is None


def test_cut_witness_is_minimal_even_if_bipartition_is_not():
    # back arc a->s means S={s,a} has forward cut {a->t} only, but S={s} cuts {s->a}
    arcs = (("s", "a", 0), ("a", "t", 1), ("s", "t", 2), ("a", "s", 3))
    fam = CutFamily(("s", "a", "t"), arcs, "s", "t")
    for X in enumerate_all(fam):
        assert is_member(fam, X)
    assert is_member(fam, find_feasible(fam))


def test_cut_rejects_disconnected():
    with pytest.raises(InvalidInstance):
        CutFamily(("s", "t"), (("t", "s", 0),), "s", "t")


def test_path_ignores_cycles():
    arcs = (("s", "a", 0), ("a", "s", 1), ("a", "t", 2), ("s", "t", 3))
    fam = PathFamily(("s", "a", "t"), arcs, "s", "t")
    assert [p.elements for p in enumerate_all(fam)] == [(0, 2), (3,)]
    assert find_feasible(fam).elements == (3,)


def test_malformed_structures():
    with pytest.raises(InvalidInstance):
        PathFamily(("s", "t"), (("s", "t", 1),), "s", "t")
    with pytest.raises(InvalidInstance):
        PathFamily(("s", "t"), (("s", "x", 0),), "s", "t")
    with pytest.raises(InvalidInstance):
        PathFamily(("s",), (("s", "s", 0),), "s", "s")
    with pytest.raises(InvalidInstance):
        AssignmentFamily(("a",), ("b", "c"), (("a", "b", 0),))
    with pytest.raises(InvalidInstance):
        SelectionFamily(3, 4)


def test_parallel_edges_spanning_tree():
    fam = chain_family(3, "spanning_tree")
    trees = list(enumerate_all(fam))
    assert len(trees) == 8
    assert all(is_member(fam, t) for t in trees)


@settings(max_examples=60)
@given(random_instances(max_elements=9))
def test_enumeration_equals_membership_filter(inst):
    fam = inst.family
    listed = [s.elements for s in enumerate_all(fam)]
    brute = [c for r in range(1, fam.n + 1) for c in itertools.combinations(range(fam.n), r) if is_member(fam, c)]
    assert listed == sorted(brute)


@settings(max_examples=150)
@given(random_instances(max_elements=10), st.data())
def test_witness_soundness_and_restriction_monotonicity(inst, data):
    fam = inst.family
    allowed = data.draw(st.sets(st.integers(0, fam.n - 1)))
    X = find_feasible(fam, allowed)
    if X is not None:
        assert set(X) <= allowed
        assert is_member(fam, X)
    else:
        smaller = data.draw(st.sets(st.sampled_from(sorted(allowed)))) if allowed else set()
        assert find_feasible(fam, smaller) is None
        # no member of Phi fits inside allowed
        assert not any(set(s) <= allowed for s in enumerate_all(fam))
    assert find_feasible(fam, allowed) == X


@settings(max_examples=100)
@given(random_instances(max_elements=10))
def test_full_set_always_feasible(inst):
    assert find_feasible(inst.family) is not None
