from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from canonical import PhaseSpace, ResidualVerdict, jet_names_in
from errors import JetVariablePresent
from exparse import render
from symcore import Expr


class ContactField(BaseModel):
    """
    Vertical infinitesimal transformation with increments xi_i of x_i and
    pi_i of p_i; t is left invariant. The characteristic function is kept as
    metadata when the field was built from one.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: PhaseSpace
    xi: Tuple[Expr, ...]
    pi: Tuple[Expr, ...]
    characteristic: Optional[Expr] = None
    name: str = "f"

    @model_validator(mode="after")
    def _check_components(self):
        if len(self.xi) != self.space.n or len(self.pi) != self.space.n:
            raise ValueError(f"Expected {self.space.n} components in xi and pi, got {len(self.xi)} and {len(self.pi)}")
        for component in self.xi + self.pi:
            jets = jet_names_in(component)
            if jets:
                raise JetVariablePresent(jets)
        return self

    @field_serializer("xi", "pi")
    def _serialize_components(self, components: Tuple[Expr, ...]) -> List[str]:
        return [render(c) for c in components]

    @field_serializer("characteristic")
    def _serialize_characteristic(self, characteristic: Optional[Expr]) -> Optional[str]:
        return render(characteristic) if characteristic is not None else None


class ProlongedField(BaseModel):
    """Field extended to dx_i, dp_i: the total derivatives of its increments."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: ContactField
    dxi_dt: Tuple[Expr, ...]
    dpi_dt: Tuple[Expr, ...]

    @field_serializer("dxi_dt", "dpi_dt")
    def _serialize_components(self, components: Tuple[Expr, ...]) -> List[str]:
        return [render(c) for c in components]


class EquationVerdict(BaseModel):
    """On-shell residual of the prolonged field applied to one equation."""
    model_config = ConfigDict(frozen=True)

    label: str
    verdict: ResidualVerdict


class InvarianceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    field_name: str
    equations: List[EquationVerdict]

    @property
    def passed(self) -> bool:
        return all(entry.verdict.is_zero for entry in self.equations)

    def failures(self) -> List[EquationVerdict]:
        return [entry for entry in self.equations if not entry.verdict.is_zero]
