from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict


class Trajectory(BaseModel):
    """
    Discrete solution: times with uniform spacing `step` and the state
    (x1..xn, p1..pn) at each time, one row per time.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: np.ndarray
    method: str
    step: float

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_time(self) -> float:
        return float(self.times[-1])


class DriftStats(BaseModel):
    """Deviation of W from its initial value along a trajectory."""
    model_config = ConfigDict(frozen=True)

    initial_value: float
    max_abs_deviation: float
    final_deviation: float
    samples: int
    method: str
    step: float
    values: Optional[List[float]] = None

    def within(self, tolerance: float) -> bool:
        return self.max_abs_deviation < tolerance


class CommutationReport(BaseModel):
    """
    Distance between symmetry-then-evolve (A) and evolve-then-symmetry (B).
    """
    model_config = ConfigDict(frozen=True)

    A: List[float]
    B: List[float]
    error: float
    tolerance: float
    passed: bool
    method: str
    step: float
    flow_parameter: float
