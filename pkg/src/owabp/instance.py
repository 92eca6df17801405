from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInstance
from .families import Family
from .model import ScenarioMatrix, WeightPreset, WeightVector, expand_preset


@dataclass(frozen=True)
class Instance:
    """A family, its scenario costs and the OWA weights to minimise."""

    family: Family
    scenarios: ScenarioMatrix
    weights: WeightPreset = WeightPreset("average")
    name: str = ""
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.scenarios.n != self.family.n:
            raise InvalidInstance(
                f"scenario matrix has {self.scenarios.n} columns, family has {self.family.n} elements"
            )
        self.weight_vector()

    @property
    def K(self) -> int:
        return self.scenarios.K

    @property
    def n(self) -> int:
        return self.family.n

    def weight_vector(self) -> WeightVector:
        return expand_preset(self.weights, self.K)
