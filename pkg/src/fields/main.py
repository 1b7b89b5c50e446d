"""
Infinitesimal transformations of (x, p), their first prolongation and the
direct invariance check of the canonical system.

A field acts on functions as f(e) = sum xi_i de/dx_i + pi_i de/dp_i.
"""

import logging
from typing import Optional

from canonical import HamiltonianSystem, ResidualVerdict, on_shell_reduce, require_jet_free, total_derivative
from config import ZeroTestConfig
from symcore import Const, Expr, differentiate, is_zero, normalize

from .models import ContactField, EquationVerdict, InvarianceReport, ProlongedField

logger = logging.getLogger(__name__)


def apply_field(f: ContactField, e: Expr) -> Expr:
    """
    Directional derivative of e along (xi, pi).

    Raises:
        JetVariablePresent: If e mentions jet variables
    """
    require_jet_free(e)
    space = f.space
    total: Expr = Const(0)
    for i in range(space.n):
        total = total + f.xi[i] * differentiate(e, space.coordinates[i]) + f.pi[i] * differentiate(e, space.momenta[i])
    return normalize(total)


def prolong(f: ContactField) -> ProlongedField:
    return ProlongedField(
        base=f,
        dxi_dt=tuple(total_derivative(c, f.space) for c in f.xi),
        dpi_dt=tuple(total_derivative(c, f.space) for c in f.pi),
    )


def invariance_check(f: ContactField, sys: HamiltonianSystem,
                     config: Optional[ZeroTestConfig] = None) -> InvarianceReport:
    """
    Apply the prolonged field to each equation of the system and reduce on shell.

    For every i the residuals are
        E1_i:  d(xi_i)/dt - f(dH/dp_i)
        E2_i:  d(pi_i)/dt + f(dH/dx_i)
    each with its own zero verdict, so failures point at a single equation.

    Returns:
        InvarianceReport: 2n entries, E1 first
    """
    space = f.space
    prolonged = prolong(f)
    entries = []
    for i in range(space.n):
        dH_dp = differentiate(sys.H, space.momenta[i])
        residual = on_shell_reduce(prolonged.dxi_dt[i] - apply_field(f, dH_dp), sys)
        entries.append(_entry(f"E1[{i + 1}]", residual, config))
    for i in range(space.n):
        dH_dx = differentiate(sys.H, space.coordinates[i])
        residual = on_shell_reduce(prolonged.dpi_dt[i] + apply_field(f, dH_dx), sys)
        entries.append(_entry(f"E2[{i + 1}]", residual, config))
    report = InvarianceReport(field_name=f.name, equations=entries)
    if not report.passed:
        logger.info("Field %s fails on %s", f.name, ", ".join(e.label for e in report.failures()))
    return report


def _entry(label: str, residual: Expr, config: Optional[ZeroTestConfig]) -> EquationVerdict:
    verdict = is_zero(residual, config)
    return EquationVerdict(label=label, verdict=ResidualVerdict(**verdict.model_dump(), residual=residual))


def field_commutator(f: ContactField, g: ContactField) -> ContactField:
    """
    Lie bracket [f, g] with components f(g^a) - g(f^a).

    For fields of characteristic functions W1, W2 the result is the field of
    -{W1, W2}.
    """
    xi = tuple(normalize(apply_field(f, gx) - apply_field(g, fx)) for fx, gx in zip(f.xi, g.xi))
    pi = tuple(normalize(apply_field(f, gp) - apply_field(g, fp)) for fp, gp in zip(f.pi, g.pi))
    return ContactField(space=f.space, xi=xi, pi=pi, name=f"[{f.name}, {g.name}]")
