"""
Compilation of expressions to plain Python callables for the integrators.

The generated function takes the variable values positionally, in the order
given at compile time, and returns a tuple of floats.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Tuple

from errors import DomainError, UnboundVariable

from .expr import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var


def _source(e: Expr, slots: dict) -> str:
    if isinstance(e, Const):
        return repr(float(e.value))
    if isinstance(e, Var):
        if e.name not in slots:
            raise UnboundVariable(e.name)
        return slots[e.name]
    if isinstance(e, Add):
        return "(" + " + ".join(_source(t, slots) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "(" + " * ".join(_source(f, slots) for f in e.factors) + ")"
    if isinstance(e, Div):
        return f"({_source(e.numerator, slots)} / {_source(e.denominator, slots)})"
    if isinstance(e, Pow):
        return f"({_source(e.base, slots)} ** {e.exponent})"
    if isinstance(e, Neg):
        return f"(-{_source(e.arg, slots)})"
    if isinstance(e, Func):
        return f"_{e.name}({_source(e.arg, slots)})"
    raise TypeError(f"Not an expression node: {e!r}")


def _log(value: float) -> float:
    if value <= 0:
        raise DomainError(f"log of non-positive value {value!r}")
    return math.log(value)


def _sqrt(value: float) -> float:
    if value < 0:
        raise DomainError(f"sqrt of negative value {value!r}")
    return math.sqrt(value)


_NAMESPACE = {"_sin": math.sin, "_cos": math.cos, "_exp": math.exp, "_log": _log, "_sqrt": _sqrt}


def compile_numeric(exprs: Sequence[Expr], names: Sequence[str]) -> Callable[..., Tuple[float, ...]]:
    """
    Compile expressions into one function of the named variables.

    Args:
        exprs: Expressions to evaluate together
        names: Variable names, in argument order

    Returns:
        Callable taking len(names) floats and returning a tuple of floats.
        Arithmetic failures surface as DomainError.
    """
    slots = {name: f"_a{i}" for i, name in enumerate(names)}
    body = "".join(_source(e, slots) + ", " for e in exprs)
    params = ", ".join(slots[name] for name in names)
    code = f"def _compiled({params}):\n    return ({body})\n"
    namespace = dict(_NAMESPACE)
    exec(compile(code, "<canon-symmetry>", "exec"), namespace)
    raw = namespace["_compiled"]

    def evaluate(*args: float) -> Tuple[float, ...]:
        try:
            return raw(*args)
        except ZeroDivisionError as exc:
            raise DomainError("Division by zero") from exc
        except (ValueError, OverflowError) as exc:
            raise DomainError(str(exc)) from exc

    return evaluate
