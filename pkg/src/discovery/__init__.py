"""
Discovery module for canon-symmetry.

Finds every first integral inside a polynomial ansatz by exact linear algebra.
"""

from .linalg import integer_scaled, nullspace, rref
from .main import AnsatzSpace, IntegralBasis, basis_size, condition_matrix, discover_integrals, enumerate_basis

__all__ = [
    'integer_scaled',
    'nullspace',
    'rref',
    'AnsatzSpace',
    'IntegralBasis',
    'basis_size',
    'condition_matrix',
    'discover_integrals',
    'enumerate_basis'
]
