"""
Symbolic core for canon-symmetry.

Immutable expression trees over declared variables with an exact expanded
normal form, partial derivatives, simultaneous substitution, a zero test that
proves or probes, splitting by degree in the momenta and float evaluation.
"""

from .expr import FUNCTIONS, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var, as_expr, free_variables, var
from .main import (
    ZeroStatus,
    ZeroVerdict,
    constant_value,
    depends_on,
    differentiate,
    eval_numeric,
    is_zero,
    normalize,
    split_by_p_degree,
    substitute,
)
from .numeric import compile_numeric
from .poly import Poly, to_expr, to_poly

__all__ = [
    'FUNCTIONS', 'Add', 'Const', 'Div', 'Expr', 'Func', 'Mul', 'Neg', 'Pow', 'Var',
    'as_expr', 'free_variables', 'var',
    'ZeroStatus', 'ZeroVerdict',
    'constant_value', 'depends_on', 'differentiate', 'eval_numeric', 'is_zero',
    'normalize', 'split_by_p_degree', 'substitute',
    'compile_numeric',
    'Poly', 'to_expr', 'to_poly',
]
