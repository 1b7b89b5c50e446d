"""
Expression tree nodes.

Nodes are frozen dataclasses, so trees are immutable, hashable and compare
structurally. Constants are always exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Tuple, Union

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")

Number = Union[int, Fraction]


class Expr:
    """Base class of every node; arithmetic operators build new trees."""

    __slots__ = ()

    def __add__(self, other: ExprLike) -> Expr:
        return Add((self, as_expr(other)))

    def __radd__(self, other: ExprLike) -> Expr:
        return Add((as_expr(other), self))

    def __sub__(self, other: ExprLike) -> Expr:
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other: ExprLike) -> Expr:
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other: ExprLike) -> Expr:
        return Mul((self, as_expr(other)))

    def __rmul__(self, other: ExprLike) -> Expr:
        return Mul((as_expr(other), self))

    def __truediv__(self, other: ExprLike) -> Expr:
        return Div(self, as_expr(other))

    def __rtruediv__(self, other: ExprLike) -> Expr:
        return Div(as_expr(other), self)

    def __neg__(self) -> Expr:
        return Neg(self)

    def __pow__(self, exponent: int) -> Expr:
        if not isinstance(exponent, int):
            raise TypeError("Only integer exponents are supported")
        return Pow(self, exponent)


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Add(Expr):
    terms: Tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    factors: Tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Div(Expr):
    numerator: Expr
    denominator: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"Unknown function '{self.name}'")


ExprLike = Union[Expr, Number]


def as_expr(value: ExprLike) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Const(Fraction(value))
    raise TypeError(f"Cannot use {type(value).__name__} in an expression; constants must be exact")


def var(name: str) -> Var:
    return Var(name)


def children(e: Expr) -> Tuple[Expr, ...]:
    if isinstance(e, Add):
        return e.terms
    if isinstance(e, Mul):
        return e.factors
    if isinstance(e, Div):
        return (e.numerator, e.denominator)
    if isinstance(e, (Pow,)):
        return (e.base,)
    if isinstance(e, (Neg, Func)):
        return (e.arg,)
    return ()


def free_variables(e: Expr) -> FrozenSet[str]:
    """Names of all variables occurring in the tree."""
    if isinstance(e, Var):
        return frozenset((e.name,))
    names: FrozenSet[str] = frozenset()
    for child in children(e):
        names = names | free_variables(child)
    return names
