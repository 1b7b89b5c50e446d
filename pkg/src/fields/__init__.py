"""
Fields module for canon-symmetry.

Vertical infinitesimal transformations, their first prolongation and the
invariance check of a canonical system.
"""

from .main import apply_field, field_commutator, invariance_check, prolong
from .models import ContactField, EquationVerdict, InvarianceReport, ProlongedField

__all__ = [
    'apply_field',
    'field_commutator',
    'invariance_check',
    'prolong',
    'ContactField',
    'EquationVerdict',
    'InvarianceReport',
    'ProlongedField'
]
