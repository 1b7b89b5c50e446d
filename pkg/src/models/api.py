from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CandidateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    expression: str


class FieldSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    xi: List[str]
    pi: List[str]


class AnsatzSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(ge=0)
    include_t: bool = False


class SimulateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    initial: List[float]
    t0: float = 0.0
    t1: float
    h: float = Field(gt=0)
    method: Optional[Literal["verlet", "implicit_midpoint"]] = Field(
        default=None, description="Omit to pick verlet when H is separable"
    )
    flow_parameter: float = Field(default=0.1, description="Symmetry flow parameter s used by `commute`")

    @model_validator(mode="after")
    def _check_interval(self):
        if self.t1 <= self.t0:
            raise ValueError("simulate.t1 must be greater than simulate.t0")
        return self


class ProblemFile(BaseModel):
    """
    Input of every command. Expressions are strings in the expression
    language; they are parsed against x1..xn, p1..pn and t.
    """
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    hamiltonian: str
    candidates: List[CandidateSpec] = []
    fields: List[FieldSpec] = []
    ansatz: Optional[AnsatzSpec] = None
    simulate: Optional[SimulateSpec] = None
    base_point: Optional[List[float]] = None
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check_lengths(self):
        for spec in self.fields:
            if len(spec.xi) != self.n or len(spec.pi) != self.n:
                raise ValueError(f"Field '{spec.name}' needs {self.n} entries in xi and pi")
        if self.simulate is not None and len(self.simulate.initial) != 2 * self.n:
            raise ValueError(f"simulate.initial needs {2 * self.n} values")
        if self.base_point is not None and len(self.base_point) != 2 * self.n:
            raise ValueError(f"base_point needs {2 * self.n} values")
        return self


class ResultEntry(BaseModel):
    """One checked object of a report; optional parts depend on the command."""
    name: str
    verdict: str
    passed: bool
    residual: Optional[str] = None
    field: Optional[Dict[str, Any]] = None
    stats: Optional[Dict[str, Any]] = None
    details: Optional[Dict[str, Any]] = None


class ReportConfig(BaseModel):
    version: str
    seed: int
    tolerances: Dict[str, float]
    hamiltonian: str


class Report(BaseModel):
    command: str
    inputs: Dict[str, Any]
    results: List[ResultEntry]
    config: ReportConfig

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)
