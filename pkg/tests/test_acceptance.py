"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible with ``-s`` or in
``pytest -v`` output) before asserting.  Run alone with::

    pytest -m acceptance -s
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

import pytest

from owabp.bottleneck import is_tight, solve_bottleneck
from owabp.generators import SplitMix64, gen_3sat_path, gen_table1, random_corpus, random_formula, random_weights
from owabp.model import (
    ScenarioMatrix,
    WeightPreset,
    WeightVector,
    expand_preset,
    median_index,
    owa,
    owa_of_cost_vector,
)
from owabp.oracle import brute_force_bottleneck, brute_force_owa, solution_profiles
from owabp.solvers import (
    solve_approx,
    solve_exact,
    solve_hurwicz,
    solve_median,
    solve_minmax,
    solve_minmin,
    solve_quantile,
)

pytestmark = pytest.mark.acceptance

FAMILIES = ("selection", "path", "st_cut", "spanning_tree", "assignment")
PER_FAMILY = 500
WEIGHTS_PER_INSTANCE = 20
ALPHAS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
PROPERTY_CASES = 10_000
FORMULAS = 100


def report(capsys, ok: bool, label: str, detail: str) -> None:
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {label}: {detail}")


def preset_weights(K: int) -> list[WeightVector]:
    presets = [WeightPreset("max"), WeightPreset("min"), WeightPreset("average"), WeightPreset("median")]
    presets += [WeightPreset.hurwicz(a) for a in ALPHAS]
    return [expand_preset(p, K) for p in presets]


def sampled_weights(rng: SplitMix64, K: int) -> list[WeightVector]:
    """Presets, then random vectors cycling through general, nonincreasing, nondecreasing."""
    out = preset_weights(K)
    while len(out) < WEIGHTS_PER_INSTANCE:
        values = list(expand_preset(random_weights(rng, K), K).values)
        shape = len(out) % 3
        if shape:
            values.sort(reverse=shape == 1)
        out.append(WeightVector(tuple(values)))
    return out


@dataclass
class CorpusCase:
    inst: object
    table: list
    weights: list
    exact: dict = field(default_factory=dict)


@pytest.fixture(scope="module")
def corpus():
    rng = SplitMix64(0xC0FFEE)
    cases = {}
    for base, kind in enumerate(FAMILIES):
        items = []
        for inst in random_corpus(kind, PER_FAMILY, base_seed=100_000 * (base + 1)):
            assert inst.n <= 10 and inst.K <= 4
            items.append(CorpusCase(inst, solution_profiles(inst.family, inst.scenarios), sampled_weights(rng, inst.K)))
        cases[kind] = items
    return cases


def test_tight_ratio_table1(capsys):
    failures, slowest = [], 0.0
    for K in range(2, 7):
        start = time.perf_counter()
        inst = gen_table1(K)
        fam, M, w = inst.family, inst.scenarios, inst.weight_vector()
        best = brute_force_owa(fam, M, w).value
        mm = solve_minmax(fam, M).value
        witness = owa(range(K, 2 * K), M, w)
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        if not (best == 1 and mm == K and witness == K == 1 / w[0] and elapsed < 1.0):
            failures.append((K, best, mm, witness, elapsed))
    report(capsys, not failures, "criterion 1 tight ratio", f"K=2..6, slowest {slowest:.3f}s, failures {failures}")
    assert not failures


def test_oracle_equivalence(capsys, corpus):
    checked, mismatches = 0, []
    for kind, cases in corpus.items():
        for case in cases:
            fam, M = case.inst.family, case.inst.scenarios
            for w in case.weights:
                got = solve_exact(fam, M, w).value
                want = brute_force_owa(fam, M, w, table=case.table).value
                case.exact[w] = got
                checked += 1
                if got != want:
                    mismatches.append((kind, case.inst.metadata.get("seed"), w.values, got, want))
    n_inst = sum(len(c) for c in corpus.values())
    report(capsys, not mismatches, "criterion 2 oracle equivalence",
           f"{n_inst} instances, {checked} weight vectors, {len(mismatches)} mismatches")
    assert n_inst >= PER_FAMILY * len(FAMILIES)
    assert not mismatches


def exact_for(case: CorpusCase, w: WeightVector) -> Fraction:
    if w not in case.exact:
        case.exact[w] = solve_exact(case.inst.family, case.inst.scenarios, w).value
    return case.exact[w]


def test_specialised_solvers(capsys, corpus):
    checks, mismatches = 0, []
    for kind, cases in corpus.items():
        for case in cases:
            fam, M = case.inst.family, case.inst.scenarios
            K = M.K
            pairs = [
                ("minmax", solve_minmax(fam, M).value, WeightPreset("max")),
                ("minmin", solve_minmin(fam, M).value, WeightPreset("min")),
                ("median", solve_median(fam, M).value, WeightPreset.quantile(median_index(K))),
            ]
            pairs += [(f"quantile{k}", solve_quantile(fam, M, k).value, WeightPreset.quantile(k)) for k in range(1, K + 1)]
            pairs += [(f"hurwicz{a}", solve_hurwicz(fam, M, a).value, WeightPreset.hurwicz(a)) for a in ALPHAS]
            for name, got, preset in pairs:
                checks += 1
                want = exact_for(case, expand_preset(preset, K))
                if got != want:
                    mismatches.append((kind, case.inst.metadata.get("seed"), name, got, want))
    report(capsys, not mismatches, "criterion 3 specialised solvers", f"{checks} comparisons, {len(mismatches)} mismatches")
    assert not mismatches


def test_approximation_guarantee(capsys, corpus):
    checks, violations, worst = 0, [], Fraction(1)
    for kind, cases in corpus.items():
        for case in cases:
            fam, M = case.inst.family, case.inst.scenarios
            for w in case.weights:
                rep = solve_approx(fam, M, w)
                bound = 1 / w[w.first_positive()]
                opt = exact_for(case, w)
                checks += 1
                if rep.certified_ratio != bound or rep.value > bound * opt:
                    violations.append((kind, case.inst.metadata.get("seed"), w.values, rep.value, opt))
                if opt:
                    worst = max(worst, rep.value / opt)
    report(capsys, not violations, "criterion 4 approximation guarantee",
           f"{checks} weight vectors, {len(violations)} violations, worst observed ratio {worst}")
    assert not violations


@pytest.fixture(scope="module")
def formulas():
    rng = SplitMix64(2024)
    return [random_formula(rng, rng.randint(1, 10), rng.randint(1, 8)) for _ in range(FORMULAS)]


def test_reduction_average_mode(capsys, formulas):
    mismatches = []
    for phi in formulas:
        inst = gen_3sat_path(phi, "average")
        fam, M, w = inst.family, inst.scenarios, inst.weight_vector()
        want = Fraction(phi.min_satisfied(), phi.m)
        brute = brute_force_owa(fam, M, w).value
        exact = solve_exact(fam, M, w).value
        if not (brute == exact == want):
            mismatches.append((phi, brute, exact, want))
    report(capsys, not mismatches, "criterion 5 average-mode reduction",
           f"{len(formulas)} formulas, {len(mismatches)} mismatches")
    assert len(formulas) >= 100 and not mismatches


def valid_levels(phi, mode):
    if mode == "median":
        return [L for L in range(phi.m + 1) if L != phi.m // 2]
    return list(range(phi.m))


def test_reduction_median_and_nondecreasing(capsys, formulas):
    checks, mismatches = 0, []
    for phi in formulas:
        best = phi.min_satisfied()
        for mode in ("median", "nondecreasing"):
            for L in valid_levels(phi, mode):
                inst = gen_3sat_path(phi, mode, L=L)
                value = brute_force_owa(inst.family, inst.scenarios, inst.weight_vector()).value
                checks += 1
                if (value == 0) != (best <= L):
                    mismatches.append((phi, mode, L, value, best))
    report(capsys, not mismatches, "criterion 6 median/nondecreasing reductions",
           f"{checks} (formula, mode, L) cases, {len(mismatches)} mismatches")
    assert not mismatches


def random_case(rng: SplitMix64):
    K = rng.randint(1, 6)
    v = [rng.randint(0, 9) for _ in range(K)]
    w = expand_preset(random_weights(rng, K), K)
    return K, v, w


def test_owa_properties(capsys):
    rng = SplitMix64(77)
    failures = {"bounds": 0, "idempotence": 0, "monotonicity": 0, "symmetry": 0}
    for _ in range(PROPERTY_CASES):
        K, v, w = random_case(rng)
        value = owa_of_cost_vector(v, w)
        if not min(v) <= value <= max(v):
            failures["bounds"] += 1
        a = rng.randint(0, 9)
        if owa_of_cost_vector([a] * K, w) != a:
            failures["idempotence"] += 1
        bumped = [x + rng.randint(0, 3) for x in v]
        if owa_of_cost_vector(bumped, w) < value:
            failures["monotonicity"] += 1

        # solution-level symmetry: reorder the scenario rows of a random matrix
        n = rng.randint(1, 6)
        M = ScenarioMatrix(tuple(tuple(rng.randint(0, 9) for _ in range(n)) for _ in range(K)))
        X = [i for i in range(n) if rng.below(2)] or [0]
        perm = list(range(K))
        rng.shuffle(perm)
        if owa(X, M.select_rows(perm), w) != owa(X, M, w):
            failures["symmetry"] += 1
    ok = not any(failures.values())
    report(capsys, ok, "criterion 7 OWA properties", f"{PROPERTY_CASES} cases per property, failures {failures}")
    assert ok


def test_bottleneck_tightness(capsys, corpus):
    checks, mismatches = 0, []
    for kind, cases in corpus.items():
        for case in cases:
            fam, M = case.inst.family, case.inst.scenarios
            for c in list(M.costs) + [M.max_costs()]:
                X, value = solve_bottleneck(fam, c)
                checks += 1
                if value != brute_force_bottleneck(fam, c)[1] or max(c[i] for i in X) != value or not is_tight(fam, c, value):
                    mismatches.append((kind, case.inst.metadata.get("seed"), c))
    report(capsys, not mismatches, "criterion 8 bottleneck tightness", f"{checks} cost vectors, {len(mismatches)} mismatches")
    assert not mismatches
