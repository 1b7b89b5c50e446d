"""
Expanded normal form.

An expression is brought to a Laurent polynomial with exact rational
coefficients over "atoms": declared variables and opaque kernels. Kernels are
function applications with a normalized argument, and reciprocals of
polynomials with more than one term (made monic by their leading coefficient).
No rewriting happens between kernels, so sin(x)^2 + cos(x)^2 stays as it is.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple, Union

from errors import DivisionByZeroConstant, DomainError, UnboundVariable

from .expr import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var, free_variables

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Recip:
    """Kernel 1/arg for a polynomial arg with at least two terms."""
    arg: Expr


Atom = Union[Var, Func, Recip]
Monomial = Tuple[Tuple[Atom, int], ...]

_VARIABLE_RANK = {"x": 0, "p": 1, "dx": 2, "dp": 3, "t": 4}
_NAME_PATTERN = re.compile(r"([A-Za-z_]+?)(\d*)")


def atom_key(atom: Atom) -> Tuple[int, int, int, str]:
    if isinstance(atom, Var):
        match = _NAME_PATTERN.fullmatch(atom.name)
        if match:
            prefix, digits = match.groups()
            return (0, _VARIABLE_RANK.get(prefix, len(_VARIABLE_RANK)), int(digits or 0), atom.name)
        return (0, len(_VARIABLE_RANK), 0, atom.name)
    if isinstance(atom, Func):
        return (1, 0, 0, repr(atom))
    return (2, 0, 0, repr(atom))


def monomial_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def monomial_key(mono: Monomial):
    """Graded order: higher total degree first, then lexicographic on atoms."""
    return (-monomial_degree(mono), tuple((atom_key(a), -e) for a, e in mono))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exponents: Dict[Atom, int] = dict(a)
    for atom, e in b:
        exponents[atom] = exponents.get(atom, 0) + e
    return tuple(sorted(((k, v) for k, v in exponents.items() if v != 0), key=lambda item: atom_key(item[0])))


class Poly:
    """Mapping monomial -> nonzero rational coefficient. Treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: Dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, value: Fraction | int) -> Poly:
        return cls({(): Fraction(value)})

    @classmethod
    def atom(cls, atom: Atom, exponent: int = 1) -> Poly:
        return cls({((atom, exponent),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: monomial_key(item[0]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Poly) -> Poly:
        result = dict(self.terms)
        for m, c in other.terms.items():
            result[m] = result.get(m, Fraction(0)) + c
        return Poly(result)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, factor: Fraction) -> Poly:
        return Poly({m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                result[m] = result.get(m, Fraction(0)) + c1 * c2
        return Poly(result)

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            return reciprocal(self) ** (-exponent)
        result = Poly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def atoms(self) -> Iterator[Atom]:
        seen = set()
        for mono in self.terms:
            for atom, _ in mono:
                if atom not in seen:
                    seen.add(atom)
                    yield atom

    def free_variables(self) -> FrozenSet[str]:
        names: FrozenSet[str] = frozenset()
        for atom in self.atoms():
            names = names | atom_free_variables(atom)
        return names

    def __repr__(self):
        return f"Poly({self.sorted_terms()!r})"


def atom_free_variables(atom: Atom) -> FrozenSet[str]:
    if isinstance(atom, Var):
        return frozenset((atom.name,))
    return free_variables(atom.arg)


# ---------------- Expr -> Poly ----------------

def reciprocal(p: Poly) -> Poly:
    """
    Exact reciprocal: monomials are inverted, longer polynomials become a kernel.

    Raises:
        DivisionByZeroConstant: If p is the zero polynomial
    """
    if p.is_zero():
        raise DivisionByZeroConstant("Division by zero")
    if len(p.terms) == 1:
        (mono, coef), = p.terms.items()
        result = Poly.constant(1 / coef)
        for atom, e in mono:
            if isinstance(atom, Recip):
                # 1/Recip(u)^e is u^e, expanded
                result = result * (to_poly(atom.arg) ** e)
            else:
                result = result * Poly.atom(atom, -e)
        return result
    (_, lead), = p.sorted_terms()[:1]
    monic = p.scale(1 / lead)
    return Poly.atom(Recip(to_expr(monic))).scale(1 / lead)


def _reciprocal_of(e: Expr) -> Poly:
    # Distributes over products and powers so that rendered denominators
    # normalize back to the same kernels.
    if isinstance(e, Mul):
        result = Poly.constant(1)
        for factor in e.factors:
            result = result * _reciprocal_of(factor)
        return result
    if isinstance(e, Pow):
        if e.exponent >= 0:
            return _reciprocal_of(e.base) ** e.exponent
        return to_poly(e.base) ** (-e.exponent)
    if isinstance(e, Neg):
        return -_reciprocal_of(e.arg)
    if isinstance(e, Div):
        return to_poly(e.denominator) * _reciprocal_of(e.numerator)
    return reciprocal(to_poly(e))


def _sqrt_exact(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _function_poly(name: str, arg: Poly) -> Poly:
    value = arg.constant_value()
    if value is not None:
        if value == 0 and name in ("sin",):
            return Poly()
        if value == 0 and name in ("cos", "exp"):
            return Poly.constant(1)
        if value == 1 and name == "log":
            return Poly()
        if name == "sqrt":
            root = _sqrt_exact(value)
            if root is not None:
                return Poly.constant(root)
    return Poly.atom(Func(name, to_expr(arg)))


def to_poly(e: Expr) -> Poly:
    if isinstance(e, Const):
        return Poly.constant(e.value)
    if isinstance(e, Var):
        return Poly.atom(e)
    if isinstance(e, Add):
        result = Poly()
        for term in e.terms:
            result = result + to_poly(term)
        return result
    if isinstance(e, Mul):
        result = Poly.constant(1)
        for factor in e.factors:
            result = result * to_poly(factor)
        return result
    if isinstance(e, Neg):
        return -to_poly(e.arg)
    if isinstance(e, Div):
        return to_poly(e.numerator) * _reciprocal_of(e.denominator)
    if isinstance(e, Pow):
        if e.exponent >= 0:
            return to_poly(e.base) ** e.exponent
        return _reciprocal_of(e.base) ** (-e.exponent)
    if isinstance(e, Func):
        return _function_poly(e.name, to_poly(e.arg))
    raise TypeError(f"Not an expression node: {e!r}")


# ---------------- Poly -> Expr ----------------

def _power(base: Expr, exponent: int) -> Expr:
    return base if exponent == 1 else Pow(base, exponent)


def _product(factors: List[Expr]) -> Expr:
    return factors[0] if len(factors) == 1 else Mul(tuple(factors))


def _term_expr(mono: Monomial, coef: Fraction) -> Expr:
    numerator: List[Expr] = []
    denominator: List[Expr] = []
    for atom, e in mono:
        if isinstance(atom, Recip):
            denominator.append(_power(atom.arg, e))
        elif e > 0:
            numerator.append(_power(atom, e))
        else:
            denominator.append(_power(atom, -e))
    magnitude = abs(coef)
    if magnitude.numerator != 1 or not numerator:
        numerator.insert(0, Const(magnitude.numerator))
    if magnitude.denominator != 1:
        denominator.insert(0, Const(magnitude.denominator))
    term = _product(numerator)
    if denominator:
        term = Div(term, _product(denominator))
    return Neg(term) if coef < 0 else term


def to_expr(p: Poly) -> Expr:
    terms = [_term_expr(m, c) for m, c in p.sorted_terms()]
    if not terms:
        return Const(0)
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


# ---------------- Calculus ----------------

def _atom_derivative(atom: Atom, name: str) -> Poly:
    if isinstance(atom, Var):
        return Poly.constant(1) if atom.name == name else Poly()
    inner = derivative(to_poly(atom.arg), name)
    if inner.is_zero():
        return Poly()
    if isinstance(atom, Recip):
        return Poly.atom(atom, 2).scale(Fraction(-1)) * inner
    if atom.name == "sin":
        outer = Poly.atom(Func("cos", atom.arg))
    elif atom.name == "cos":
        outer = -Poly.atom(Func("sin", atom.arg))
    elif atom.name == "exp":
        outer = Poly.atom(atom)
    elif atom.name == "log":
        outer = reciprocal(to_poly(atom.arg))
    else:
        outer = Poly.atom(atom, -1).scale(Fraction(1, 2))
    return outer * inner


def derivative(p: Poly, name: str) -> Poly:
    result = Poly()
    for mono, coef in p.terms.items():
        for index, (atom, e) in enumerate(mono):
            d_atom = _atom_derivative(atom, name)
            if d_atom.is_zero():
                continue
            rest = mono[:index] + (((atom, e - 1),) if e != 1 else ()) + mono[index + 1:]
            result = result + Poly({rest: coef * e}) * d_atom
    return result


# ---------------- Numerics ----------------

_MATH = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
}


def apply_function(name: str, value: float) -> float:
    if name == "log" and value <= 0:
        raise DomainError(f"log of non-positive value {value!r}")
    if name == "sqrt" and value < 0:
        raise DomainError(f"sqrt of negative value {value!r}")
    try:
        return _MATH[name](value)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"{name}({value!r}): {exc}") from exc


def eval_tree(e: Expr, point: Mapping[str, float]) -> float:
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        try:
            return float(point[e.name])
        except KeyError:
            raise UnboundVariable(e.name) from None
    if isinstance(e, Add):
        return math.fsum(eval_tree(t, point) for t in e.terms)
    if isinstance(e, Mul):
        result = 1.0
        for factor in e.factors:
            result *= eval_tree(factor, point)
        return result
    if isinstance(e, Neg):
        return -eval_tree(e.arg, point)
    if isinstance(e, Div):
        den = eval_tree(e.denominator, point)
        if den == 0:
            raise DomainError("Division by zero")
        return eval_tree(e.numerator, point) / den
    if isinstance(e, Pow):
        base = eval_tree(e.base, point)
        if base == 0 and e.exponent < 0:
            raise DomainError("Division by zero")
        try:
            return base ** e.exponent
        except OverflowError as exc:
            raise DomainError(str(exc)) from exc
    if isinstance(e, Func):
        return apply_function(e.name, eval_tree(e.arg, point))
    raise TypeError(f"Not an expression node: {e!r}")


def _eval_atom(atom: Atom, point: Mapping[str, float]) -> float:
    if isinstance(atom, Recip):
        value = eval_tree(atom.arg, point)
        if value == 0:
            raise DomainError("Division by zero")
        return 1.0 / value
    return eval_tree(atom, point)


def eval_terms(p: Poly, point: Mapping[str, float]) -> Tuple[float, float]:
    """
    Evaluate a normal form term by term.

    Returns:
        Tuple of (value, scale) where scale is the sum of absolute term values,
        used as the reference magnitude for relative zero tolerance
    """
    values: List[float] = []
    atom_values: Dict[Atom, float] = {}
    for mono, coef in p.terms.items():
        value = float(coef)
        for atom, e in mono:
            if atom not in atom_values:
                atom_values[atom] = _eval_atom(atom, point)
            base = atom_values[atom]
            if base == 0 and e < 0:
                raise DomainError("Division by zero")
            value *= base ** e
        values.append(value)
    return math.fsum(values), math.fsum(abs(v) for v in values)


def iter_variables(names: Iterable[str]) -> List[str]:
    return sorted(set(names), key=lambda n: atom_key(Var(n)))
