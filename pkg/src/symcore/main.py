"""
Operations on expressions: differentiation, substitution, normalization,
zero testing, splitting by degree in the momenta and numeric evaluation.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Protocol, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from config import ZeroTestConfig, get_settings
from errors import DomainError, NotPolynomialInMomenta, ProbeDomainExhausted

from .expr import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var
from .poly import Poly, Recip, atom_free_variables, derivative, eval_terms, eval_tree, to_expr, to_poly

logger = logging.getLogger(__name__)

VariableLike = Union[Var, str]


class HasMomenta(Protocol):
    @property
    def momenta(self) -> tuple: ...


class ZeroStatus(str, Enum):
    PROVED_ZERO = "ProvedZero"
    NUMERICALLY_ZERO = "NumericallyZero"
    NONZERO = "Nonzero"


class ZeroVerdict(BaseModel):
    """
    Outcome of a zero test.

    Nonzero verdicts carry the witness point and the value found there;
    NumericallyZero verdicts record how many probes passed and at which
    tolerance.
    """
    model_config = ConfigDict(frozen=True)

    status: ZeroStatus
    witness: Optional[Dict[str, float]] = None
    witness_value: Optional[float] = None
    probes: int = 0
    tolerance: float = 0.0
    seed: Optional[int] = None

    @property
    def is_zero(self) -> bool:
        return self.status != ZeroStatus.NONZERO

    @property
    def proved(self) -> bool:
        return self.status == ZeroStatus.PROVED_ZERO


def _text(e: Expr) -> str:
    from exparse import render
    return render(e)


def _name(v: VariableLike) -> str:
    return v.name if isinstance(v, Var) else v


def normalize(e: Expr) -> Expr:
    """
    Bring e to its expanded normal form.

    Raises:
        DivisionByZeroConstant: If e divides by something that normalizes to 0
    """
    return to_expr(to_poly(e))


def differentiate(e: Expr, v: VariableLike) -> Expr:
    return to_expr(derivative(to_poly(e), _name(v)))


def _replace(e: Expr, bindings: Mapping[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return bindings.get(e.name, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Add):
        return Add(tuple(_replace(t, bindings) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(_replace(f, bindings) for f in e.factors))
    if isinstance(e, Div):
        return Div(_replace(e.numerator, bindings), _replace(e.denominator, bindings))
    if isinstance(e, Pow):
        return Pow(_replace(e.base, bindings), e.exponent)
    if isinstance(e, Neg):
        return Neg(_replace(e.arg, bindings))
    if isinstance(e, Func):
        return Func(e.name, _replace(e.arg, bindings))
    raise TypeError(f"Not an expression node: {e!r}")


def substitute(e: Expr, bindings: Mapping[VariableLike, Expr]) -> Expr:
    """Simultaneous substitution followed by normalization."""
    by_name = {_name(k): v for k, v in bindings.items()}
    return normalize(_replace(e, by_name))


def constant_value(e: Expr) -> Optional[Fraction]:
    """The rational value of e if it normalizes to a constant, else None."""
    return to_poly(e).constant_value()


def depends_on(e: Expr, names: Iterable[str]) -> bool:
    return bool(to_poly(e).free_variables() & set(names))


def _probe_point(rng: np.random.Generator, names: list, config: ZeroTestConfig) -> Dict[str, Fraction]:
    point = {}
    for name in names:
        den = int(rng.integers(1, config.probe_max_denominator + 1))
        bound = config.probe_bound * den
        point[name] = Fraction(int(rng.integers(-bound, bound + 1)), den)
    return point


def is_zero(e: Expr, config: Optional[ZeroTestConfig] = None) -> ZeroVerdict:
    """
    Decide whether e vanishes identically.

    ProvedZero when the normal form is the zero constant. Otherwise e is
    evaluated at random rational points (points where it is undefined are
    redrawn); all values within the relative tolerance gives NumericallyZero,
    the first value outside gives Nonzero with that point as witness.

    Raises:
        ProbeDomainExhausted: If not enough valid probe points were found
    """
    config = config or get_settings().zero_test()
    p = to_poly(e)
    if p.is_zero():
        return ZeroVerdict(status=ZeroStatus.PROVED_ZERO, tolerance=config.tolerance, seed=config.seed)

    names = sorted(p.free_variables())
    rng = np.random.default_rng(config.seed)
    max_attempts = config.probe_count * config.max_attempts_factor
    valid = attempts = 0
    while valid < config.probe_count:
        if attempts >= max_attempts:
            raise ProbeDomainExhausted(config.probe_count, attempts)
        attempts += 1
        point = _probe_point(rng, names, config)
        floats = {k: float(v) for k, v in point.items()}
        try:
            value, scale = eval_terms(p, floats)
        except DomainError:
            logger.debug("Probe point %s outside the domain, redrawing", floats)
            continue
        if not (math.isfinite(value) and math.isfinite(scale)):
            continue
        if abs(value) > config.tolerance * max(1.0, scale):
            return ZeroVerdict(
                status=ZeroStatus.NONZERO,
                witness=floats,
                witness_value=value,
                probes=valid + 1,
                tolerance=config.tolerance,
                seed=config.seed,
            )
        valid += 1
    logger.debug("Kernels blocked a proof; %d probes passed", valid)
    return ZeroVerdict(
        status=ZeroStatus.NUMERICALLY_ZERO,
        probes=valid,
        tolerance=config.tolerance,
        seed=config.seed,
    )


def split_by_p_degree(e: Expr, space: HasMomenta) -> Dict[int, Expr]:
    """
    Split e into components homogeneous in the momenta.

    Args:
        e: Expression polynomial in the momenta; coefficients may involve x and t
        space: Anything exposing the momentum names as `momenta`

    Returns:
        Mapping degree -> homogeneous component, in increasing degree

    Raises:
        NotPolynomialInMomenta: If a momentum sits inside a kernel or in a denominator
    """
    momenta = set(space.momenta)
    p = to_poly(e)
    parts: Dict[int, Dict] = {}
    for mono, coef in p.terms.items():
        degree = 0
        for atom, exponent in mono:
            if isinstance(atom, Var):
                if atom.name in momenta:
                    if exponent < 0:
                        raise NotPolynomialInMomenta(_text(e))
                    degree += exponent
            elif isinstance(atom, (Func, Recip)) and atom_free_variables(atom) & momenta:
                raise NotPolynomialInMomenta(_text(e))
        parts.setdefault(degree, {})[mono] = coef
    return {d: to_expr(Poly(parts[d])) for d in sorted(parts)}


def eval_numeric(e: Expr, point: Mapping[VariableLike, float]) -> float:
    """
    Floating evaluation; rationals are converted at the leaves.

    Raises:
        DomainError: log of a non-positive value, division by zero, sqrt of a negative value
        UnboundVariable: If a free variable has no value
    """
    return eval_tree(e, {_name(k): float(v) for k, v in point.items()})
