"""Minimising the OWA criterion over bottleneck combinatorial problems with cost scenarios."""
from .bottleneck import solve_bottleneck, solve_bottleneck_linear
from .errors import BudgetExceeded, Infeasible, InvalidInstance, OwaError
from .families import (
    AssignmentFamily,
    CutFamily,
    PathFamily,
    SelectionFamily,
    SpanningTreeFamily,
    enumerate_all,
    find_feasible,
)
from .generators import SplitMix64, gen_3sat_path, gen_random, gen_table1, random_corpus
from .instance import Instance
from .model import (
    ScenarioMatrix,
    Solution,
    WeightPreset,
    WeightVector,
    bottleneck_cost,
    expand_preset,
    owa,
    owa_of_cost_vector,
)
from .oracle import brute_force_bottleneck, brute_force_owa
from .solvers import (
    SolveReport,
    solve,
    solve_approx,
    solve_exact,
    solve_hurwicz,
    solve_median,
    solve_minmax,
    solve_minmin,
    solve_quantile,
)

__version__ = "0.1.0"
