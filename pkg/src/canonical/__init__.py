"""
Canonical systems for canon-symmetry.

This module provides the phase-space model, the Poisson bracket, the total
time derivative on the first-order jet, reduction on solutions of the system
and the first-integral test.
"""

from .main import (
    ResidualVerdict,
    compose_integrals,
    first_integral_residual,
    first_integral_test,
    on_shell_reduce,
    poisson_bracket,
    require_jet_free,
    total_derivative,
)
from .models import JET_NAME, HamiltonianSystem, IntegralCandidate, PhaseSpace, jet_names_in

__all__ = [
    'ResidualVerdict',
    'compose_integrals',
    'first_integral_residual',
    'first_integral_test',
    'on_shell_reduce',
    'poisson_bracket',
    'require_jet_free',
    'total_derivative',
    'JET_NAME',
    'HamiltonianSystem',
    'IntegralCandidate',
    'PhaseSpace',
    'jet_names_in'
]
