"""
Poisson bracket, total time derivative, on-shell reduction and the
first-integral test.

Convention: {F, G} = sum_i dF/dx_i * dG/dp_i - dF/dp_i * dG/dx_i, and W is a
first integral of H when dW/dt + {W, H} = 0.
"""

import logging
from typing import Optional

from pydantic import field_serializer

from config import ZeroTestConfig
from errors import JetVariablePresent
from exparse import render
from symcore import Const, Expr, Var, ZeroVerdict, differentiate, is_zero, normalize, substitute

from .models import HamiltonianSystem, IntegralCandidate, PhaseSpace, jet_names_in

logger = logging.getLogger(__name__)


class ResidualVerdict(ZeroVerdict):
    """Zero verdict together with the normalized expression that was tested."""
    model_config = ZeroVerdict.model_config | {"arbitrary_types_allowed": True}

    residual: Expr

    @field_serializer("residual")
    def _serialize_residual(self, residual: Expr) -> str:
        return render(residual)


def require_jet_free(*exprs: Expr) -> None:
    for e in exprs:
        jets = jet_names_in(e)
        if jets:
            raise JetVariablePresent(jets)


def poisson_bracket(F: Expr, G: Expr, space: PhaseSpace) -> Expr:
    """
    Canonical Poisson bracket {F, G}.

    Raises:
        JetVariablePresent: If F or G mention dx_i or dp_i
    """
    require_jet_free(F, G)
    total: Expr = Const(0)
    for x, p in zip(space.coordinates, space.momenta):
        total = total + differentiate(F, x) * differentiate(G, p) - differentiate(F, p) * differentiate(G, x)
    return normalize(total)


def total_derivative(e: Expr, space: PhaseSpace) -> Expr:
    """
    Total derivative: partial in t plus sum dx_i d/dx_i + sum dp_i d/dp_i,
    on the first-order jet.

    Raises:
        JetVariablePresent: If e already involves jet variables
    """
    require_jet_free(e)
    total = differentiate(e, space.time)
    for x, dx in zip(space.coordinates, space.coordinate_rates):
        total = total + Var(dx) * differentiate(e, x)
    for p, dp in zip(space.momenta, space.momentum_rates):
        total = total + Var(dp) * differentiate(e, p)
    return normalize(total)


def on_shell_reduce(e: Expr, sys: HamiltonianSystem) -> Expr:
    """Replace dx_i by dH/dp_i and dp_i by -dH/dx_i."""
    space = sys.space
    bindings = {}
    for x, p, dx, dp in zip(space.coordinates, space.momenta, space.coordinate_rates, space.momentum_rates):
        bindings[dx] = differentiate(sys.H, p)
        bindings[dp] = -differentiate(sys.H, x)
    return substitute(e, bindings)


def first_integral_residual(W: IntegralCandidate, sys: HamiltonianSystem) -> Expr:
    return normalize(differentiate(W.W, sys.space.time) + poisson_bracket(W.W, sys.H, sys.space))


def first_integral_test(W: IntegralCandidate, sys: HamiltonianSystem,
                        config: Optional[ZeroTestConfig] = None) -> ResidualVerdict:
    """
    Verdict on dW/dt + {W, H} = 0.

    Args:
        W: Candidate first integral
        sys: Hamiltonian system
        config: Zero-test parameters, defaults to the environment settings

    Returns:
        ResidualVerdict: Always carries the normalized residual
    """
    residual = first_integral_residual(W, sys)
    verdict = is_zero(residual, config)
    logger.debug("First-integral test for %s: %s", W.name, verdict.status.value)
    return ResidualVerdict(**verdict.model_dump(), residual=residual)


def compose_integrals(W1: IntegralCandidate, W2: IntegralCandidate, sys: HamiltonianSystem) -> IntegralCandidate:
    """
    The bracket {W1, W2}; a first integral whenever W1 and W2 are.
    """
    W = poisson_bracket(W1.W, W2.W, sys.space)
    return IntegralCandidate(name=f"{{{W1.name}, {W2.name}}}", W=W, normalized=W1.normalized and W2.normalized)
