"""
Correspondence module for canon-symmetry.

Both directions between first integrals and infinitesimal contact
transformations leaving a canonical system invariant, the normalization of
the additive function of t, and the point-transformation case H = T - U.
"""

from .main import (
    antiderivative_in_t,
    closedness_check,
    contact_conditions,
    field_from_integral,
    integral_from_field,
    kinetic_potential,
    levy_cerruti_split,
    normalize_addend,
)
from .models import ClosednessCondition, ClosednessReport, ContactConditionReport, LevyCerrutiReport

__all__ = [
    'antiderivative_in_t',
    'closedness_check',
    'contact_conditions',
    'field_from_integral',
    'integral_from_field',
    'kinetic_potential',
    'levy_cerruti_split',
    'normalize_addend',
    'ClosednessCondition',
    'ClosednessReport',
    'ContactConditionReport',
    'LevyCerrutiReport'
]
