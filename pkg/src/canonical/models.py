"""
Domain models for canonical systems.

PhaseSpace fixes the naming of coordinates x1..xn, momenta p1..pn, time t and
the first-order jet variables dx1..dxn, dp1..dpn used when a field is
prolonged to derivatives.
"""

import re
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from errors import JetVariablePresent
from exparse import render
from symcore import Expr, Var, differentiate, free_variables, normalize

JET_NAME = re.compile(r"d[xp]\d+")
TIME = "t"


def jet_names_in(e: Expr) -> Tuple[str, ...]:
    return tuple(sorted(n for n in free_variables(e) if JET_NAME.fullmatch(n)))


class PhaseSpace(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Degrees of freedom")

    @property
    def coordinates(self) -> Tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.n + 1))

    @property
    def momenta(self) -> Tuple[str, ...]:
        return tuple(f"p{i}" for i in range(1, self.n + 1))

    @property
    def time(self) -> str:
        return TIME

    @property
    def coordinate_rates(self) -> Tuple[str, ...]:
        return tuple(f"dx{i}" for i in range(1, self.n + 1))

    @property
    def momentum_rates(self) -> Tuple[str, ...]:
        return tuple(f"dp{i}" for i in range(1, self.n + 1))

    @property
    def jets(self) -> Tuple[str, ...]:
        return self.coordinate_rates + self.momentum_rates

    @property
    def names(self) -> Tuple[str, ...]:
        return self.coordinates + self.momenta + (self.time,) + self.jets

    @property
    def state(self) -> Tuple[str, ...]:
        """Numerical state ordering: x1..xn then p1..pn."""
        return self.coordinates + self.momenta

    def x(self, i: int) -> Var:
        return Var(self.coordinates[i])

    def p(self, i: int) -> Var:
        return Var(self.momenta[i])

    def t(self) -> Var:
        return Var(self.time)


class HamiltonianSystem(BaseModel):
    """
    System dx_i/dt = dH/dp_i, dp_i/dt = -dH/dx_i for a Hamiltonian H(t, x, p).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: PhaseSpace
    H: Expr

    @model_validator(mode="after")
    def _jet_free(self):
        jets = jet_names_in(self.H)
        if jets:
            raise JetVariablePresent(jets)
        return self

    @field_serializer("H")
    def _serialize_h(self, H: Expr) -> str:
        return render(H)

    def residual_equations(self) -> Tuple[List[Expr], List[Expr]]:
        """
        The residuals E1_i = dx_i - dH/dp_i and E2_i = dp_i + dH/dx_i whose
        vanishing defines the system.
        """
        first = [normalize(Var(self.space.coordinate_rates[i]) - differentiate(self.H, self.space.momenta[i]))
                 for i in range(self.space.n)]
        second = [normalize(Var(self.space.momentum_rates[i]) + differentiate(self.H, self.space.coordinates[i]))
                  for i in range(self.space.n)]
        return first, second


class IntegralCandidate(BaseModel):
    """
    A function W(t, x, p) proposed as a first integral.

    `normalized` is true once the additive function of t has been fixed so
    that dW/dt + {W, H} vanishes exactly.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "W"
    W: Expr
    normalized: bool = False

    @field_validator("W")
    @classmethod
    def _jet_free(cls, W: Expr) -> Expr:
        jets = jet_names_in(W)
        if jets:
            raise JetVariablePresent(jets)
        return W

    @field_serializer("W")
    def _serialize_w(self, W: Expr) -> str:
        return render(W)
