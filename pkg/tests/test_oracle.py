from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from owabp.families import AssignmentFamily, CutFamily, PathFamily, SelectionFamily, SpanningTreeFamily, enumerate_all
from owabp.generators import CnfFormula, gen_3sat_path, gen_table1
from owabp.instance import Instance
from owabp.model import ScenarioMatrix, WeightVector, cost_profile, owa
from owabp.oracle import brute_force_bottleneck, brute_force_owa, worst_quantile_optimal

from conftest import random_instances, weight_vectors


def relabel(inst: Instance, perm):
    """Element i becomes perm[i]; cost columns move with it."""
    fam = inst.family
    move = lambda links: tuple((u, v, perm[i]) for u, v, i in links)
    if isinstance(fam, SelectionFamily):
        new = fam
    elif isinstance(fam, (PathFamily, CutFamily)):
        new = type(fam)(fam.nodes, move(fam.arcs), fam.source, fam.sink)
    elif isinstance(fam, SpanningTreeFamily):
        new = SpanningTreeFamily(fam.nodes, move(fam.edges))
    else:
        new = AssignmentFamily(fam.left, fam.right, move(fam.edges))
    rows = []
    for row in inst.scenarios.costs:
        out = [0] * len(row)
        for i, c in enumerate(row):
            out[perm[i]] = c
        rows.append(tuple(out))
    return Instance(new, ScenarioMatrix(tuple(rows)), inst.weights)


def test_table1_k3():
    inst = gen_table1(3)
    assert brute_force_owa(inst.family, inst.scenarios, inst.weight_vector()).value == 1


def test_single_solution():
    fam = SelectionFamily(3, 3)
    M = ScenarioMatrix(((1, 5, 2), (3, 0, 0)))
    w = WeightVector((Fraction(1, 2), Fraction(1, 2)))
    rep = brute_force_owa(fam, M, w)
    assert rep.solution.elements == (0, 1, 2)
    assert rep.value == 4


def test_two_clause_formula():
    inst = gen_3sat_path(CnfFormula(2, ((1, 2), (-1, 2))), "average")
    rep = brute_force_owa(inst.family, inst.scenarios, inst.weight_vector())
    assert rep.value == Fraction(1, 2)


def test_bottleneck_oracle_examples():
    fam = SelectionFamily(2, 2)
    assert brute_force_bottleneck(fam, (4, 6)) == (next(iter(enumerate_all(fam))), 6)
    X, v = brute_force_bottleneck(SelectionFamily(4, 1), (5, 2, 2, 7))
    assert (X.elements, v) == ((1,), 2)


def test_worst_quantile_optimal_on_table1():
    for K in range(2, 6):
        inst = gen_table1(K)
        X, value = worst_quantile_optimal(inst.family, inst.scenarios, inst.weight_vector())
        assert value == K


@settings(max_examples=80)
@given(random_instances(max_elements=8), st.data())
def test_relabeling_invariance_and_bounds(inst, data):
    w = data.draw(weight_vectors(inst.K))
    perm = data.draw(st.permutations(range(inst.n)))
    base = brute_force_owa(inst.family, inst.scenarios, w).value
    moved = relabel(inst, perm)
    assert brute_force_owa(moved.family, moved.scenarios, w).value == base
    for X in enumerate_all(inst.family):
        prof = cost_profile(X, inst.scenarios)
        assert min(prof) <= owa(X, inst.scenarios, w) <= max(prof)
