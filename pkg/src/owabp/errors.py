"""Exception types shared across the package."""


class OwaError(Exception):
    """Base class for every error raised by owabp."""


class InvalidInstance(OwaError, ValueError):
    """Input data violates a model invariant (bad matrix, weights, graph...)."""


class Infeasible(OwaError):
    """The feasible set is empty (or empty after restriction)."""


class BudgetExceeded(OwaError):
    """An enumeration hit its budget before finishing.

    ``count`` is how far the enumeration got, ``budget`` the configured limit.
    """

    def __init__(self, what: str, count: int, budget: int):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"search space too large: {what} reached {count} (budget {budget})")
