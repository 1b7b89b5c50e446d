from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_serializer

from canonical import ResidualVerdict
from exparse import render
from symcore import Expr, constant_value


class ClosednessCondition(BaseModel):
    """
    One mixed-partial condition for -pi.dx + xi.dp to be closed.

    kind is "xi_p" (dxi_i/dp_j = dxi_j/dp_i), "pi_x" (dpi_i/dx_j = dpi_j/dx_i)
    or "xi_x_pi_p" (dxi_i/dx_j = -dpi_j/dp_i); indices are 1-based.
    """
    model_config = ConfigDict(frozen=True)

    kind: str
    i: int
    j: int
    verdict: ResidualVerdict


class ClosednessReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    conditions: List[ClosednessCondition]

    @property
    def closed(self) -> bool:
        return all(c.verdict.is_zero for c in self.conditions)

    def first_violation(self) -> Optional[ClosednessCondition]:
        return next((c for c in self.conditions if not c.verdict.is_zero), None)


class ContactConditionReport(BaseModel):
    """
    Coordinate form of preserving the Liouville form p.dx:
    pi_j + sum_i p_i dxi_i/dx_j = 0 and sum_i p_i dxi_i/dp_j = 0.
    """
    model_config = ConfigDict(frozen=True)

    momentum_conditions: List[ResidualVerdict]
    homogeneity_conditions: List[ResidualVerdict]

    @property
    def preserves_liouville_form(self) -> bool:
        return all(v.is_zero for v in self.momentum_conditions + self.homogeneity_conditions)


class LevyCerrutiReport(BaseModel):
    """
    Point-transformation case of H = T - U.

    degree_residuals holds the conditions by degree in p: 2 -> {W, T},
    1 -> dW/dt, 0 -> {W, U}; the first-integral residual is their
    combination {W, T} + dW/dt - {W, U}.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    is_linear_homogeneous: bool
    point_field: Optional[Tuple[Expr, ...]] = None
    T: Optional[Expr] = None
    U: Optional[Expr] = None
    T_admits: Optional[ResidualVerdict] = None
    U_admits: Optional[ResidualVerdict] = None
    degree_residuals: Dict[int, Expr] = {}

    @property
    def admits(self) -> bool:
        if not self.is_linear_homogeneous or self.T_admits is None or self.U_admits is None:
            return False
        static = self.degree_residuals.get(1)
        static_ok = static is None or constant_value(static) == 0
        return self.T_admits.is_zero and self.U_admits.is_zero and static_ok

    @field_serializer("point_field")
    def _serialize_point_field(self, point_field: Optional[Tuple[Expr, ...]]) -> Optional[List[str]]:
        return [render(c) for c in point_field] if point_field is not None else None

    @field_serializer("T", "U")
    def _serialize_parts(self, part: Optional[Expr]) -> Optional[str]:
        return render(part) if part is not None else None

    @field_serializer("degree_residuals")
    def _serialize_degrees(self, residuals: Dict[int, Expr]) -> Dict[str, str]:
        return {str(d): render(e) for d, e in sorted(residuals.items())}
