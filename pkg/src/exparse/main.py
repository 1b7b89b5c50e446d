"""
Reader and writer for the expression language used by every input field.

Grammar (whitespace is insignificant):

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" unary)?          right associative
    atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

Numbers are decimals with optional fraction and exponent and are read as
exact rationals. Identifiers must be declared variables of the phase space or
one of the known functions.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Protocol

from errors import (
    ArityMismatch,
    DivisionByZeroConstant,
    NonIntegerExponent,
    UnexpectedEnd,
    UnexpectedToken,
    UnknownIdentifier,
    ZeroDivisorInExponent,
)
from symcore import FUNCTIONS, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var, constant_value

logger = logging.getLogger(__name__)


class HasNames(Protocol):
    @property
    def names(self) -> tuple: ...


@dataclass(frozen=True)
class SourceExpr:
    """Expression text plus the label used in diagnostics."""
    text: str
    origin: Optional[str] = None


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", "op" or "end"
    text: str
    offset: int


_TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(source: SourceExpr) -> List[Token]:
    text = source.text
    tokens: List[Token] = []
    index = 0
    while index < len(text):
        if text[index].isspace():
            index += 1
            continue
        match = _TOKEN_PATTERN.match(text, index)
        if not match or match.lastgroup is None:
            raise UnexpectedToken(text[index], _byte_offset(text, index), source.origin)
        start = match.start(match.lastgroup)
        tokens.append(Token(match.lastgroup, match.group(match.lastgroup), _byte_offset(text, start)))
        index = match.end()
    tokens.append(Token("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, source: SourceExpr, names: Iterable[str]):
        self.source = source
        self.names = frozenset(names)
        self.tokens = tokenize(source)
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def unexpected(self, token: Token):
        if token.kind == "end":
            return UnexpectedEnd(token.offset, self.source.origin)
        return UnexpectedToken(token.text, token.offset, self.source.origin)

    def expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            raise self.unexpected(token)
        return self.advance()

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise UnexpectedEnd(self.current.offset, self.source.origin)
        result = self.expr()
        if self.current.kind != "end":
            raise self.unexpected(self.current)
        return result

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            right = self.term()
            terms.append(right if op == "+" else Neg(right))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Expr:
        left = self.unary()
        factors: List[Expr] = [left]
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            right = self.unary()
            if op == "*":
                factors.append(right)
            else:
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(left, right)]
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self) -> Expr:
        if self.current.kind == "op" and self.current.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            offset = self.current.offset
            try:
                exponent = constant_value(self.unary())
            except DivisionByZeroConstant as exc:
                raise ZeroDivisorInExponent(offset, self.source.origin) from exc
            if exponent is None or exponent.denominator != 1:
                raise NonIntegerExponent(offset, self.source.origin)
            return Pow(base, int(exponent))
        return base

    def atom(self) -> Expr:
        token = self.advance()
        if token.kind == "number":
            return Const(Fraction(token.text))
        if token.kind == "ident":
            return self.identifier(token)
        if token.kind == "op" and token.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.unexpected(token)

    def identifier(self, token: Token) -> Expr:
        name = token.text
        if name in FUNCTIONS:
            if not (self.current.kind == "op" and self.current.text == "("):
                raise ArityMismatch(name, token.offset, self.source.origin)
            self.advance()
            if self.current.kind == "op" and self.current.text == ")":
                raise ArityMismatch(name, token.offset, self.source.origin)
            arg = self.expr()
            if self.current.kind == "op" and self.current.text == ",":
                raise ArityMismatch(name, token.offset, self.source.origin)
            self.expect(")")
            return Func(name, arg)
        if name not in self.names:
            raise UnknownIdentifier(name, token.offset, self.source.origin)
        return Var(name)


def parse(text: str, space: HasNames, origin: Optional[str] = None) -> Expr:
    """
    Parse expression text against the names declared by a phase space.

    Args:
        text: Expression text
        space: Anything exposing the declared variable names as `names`
        origin: Label for diagnostics, e.g. the problem-file field

    Returns:
        Expr: Tree as written (not normalized)

    Raises:
        UnexpectedToken, UnexpectedEnd, UnknownIdentifier, ArityMismatch,
        NonIntegerExponent: All carry the byte offset into `text`
    """
    return _Parser(SourceExpr(text, origin), space.names).parse()


# ---------------- Rendering ----------------

_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = 1, 2, 3, 4, 5


def _precedence(e: Expr) -> int:
    if isinstance(e, Add):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PRODUCT
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Pow):
        return _POWER
    if isinstance(e, Const):
        if e.value.denominator != 1:
            return _PRODUCT
        return _ATOM if e.value >= 0 else _UNARY
    return _ATOM


def _render(e: Expr, minimum: int) -> str:
    text = _render_bare(e)
    return f"({text})" if _precedence(e) < minimum else text


def _render_bare(e: Expr) -> str:
    if isinstance(e, Const):
        value = e.value
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({_render(e.arg, _SUM)})"
    if isinstance(e, Pow):
        return f"{_render(e.base, _ATOM)}^{e.exponent}"
    if isinstance(e, Neg):
        return "-" + _render(e.arg, _PRODUCT)
    if isinstance(e, Div):
        return f"{_render(e.numerator, _PRODUCT)}/{_render(e.denominator, _UNARY)}"
    if isinstance(e, Mul):
        head, *rest = e.factors
        return "*".join([_render(head, _PRODUCT)] + [_render(f, _UNARY) for f in rest])
    if isinstance(e, Add):
        head, *rest = e.terms
        parts = [_render(head, _PRODUCT)]
        for term in rest:
            if isinstance(term, Neg):
                parts.append(" - " + _render(term.arg, _PRODUCT))
            else:
                parts.append(" + " + _render(term, _PRODUCT))
        return "".join(parts)
    raise TypeError(f"Not an expression node: {e!r}")


def render(e: Expr) -> str:
    """
    Emit text that parses back to an expression with the same normal form.

    Parentheses appear only where precedence or associativity needs them.
    """
    return _render(e, _SUM)
