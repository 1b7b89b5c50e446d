"""
Numerical verification for canon-symmetry.

Symplectic integration of the canonical system, drift of candidate integrals
along trajectories, commutation of symmetry and Hamilton flows and CSV export
of drift series.
"""

from .export import CSV_HEADER, write_drift_csv
from .main import (
    IMPLICIT_MIDPOINT,
    METHODS,
    VERLET,
    choose_method,
    drift_report,
    flow_commutation_check,
    integrate_hamilton,
    inverse_masses,
    symmetry_flow,
)
from .models import CommutationReport, DriftStats, Trajectory

__all__ = [
    'CSV_HEADER',
    'write_drift_csv',
    'IMPLICIT_MIDPOINT',
    'METHODS',
    'VERLET',
    'choose_method',
    'drift_report',
    'flow_commutation_check',
    'integrate_hamilton',
    'inverse_masses',
    'symmetry_flow',
    'CommutationReport',
    'DriftStats',
    'Trajectory'
]
