"""
Correspondence between first integrals and the fields that leave the system
invariant.

From an integral W the field is xi_i = dW/dp_i, pi_i = -dW/dx_i, and it acts
on functions as f(e) = {e, W}. From a field, W is recovered when
-pi.dx + xi.dp is closed: directly as W = p.xi when the field preserves the
Liouville form, otherwise as a line integral from a base point. W is fixed up
to a function of t, which normalize_addend removes.
"""

import logging
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from canonical import (
    HamiltonianSystem,
    IntegralCandidate,
    PhaseSpace,
    ResidualVerdict,
    first_integral_residual,
    first_integral_test,
    poisson_bracket,
)
from config import ZeroTestConfig
from errors import (
    BasePointSingular,
    DivisionByZeroConstant,
    HNotKineticMinusPotential,
    NoClosedFormAntiderivative,
    NonIntegrableAlongPath,
    NotContactField,
    NotInvariant,
    NotPolynomialInMomenta,
    WNotLinearHomogeneous,
)
from exparse import render
from fields import ContactField
from symcore import (
    Const,
    Expr,
    Func,
    Var,
    constant_value,
    depends_on,
    differentiate,
    is_zero,
    normalize,
    split_by_p_degree,
    substitute,
)
from symcore.poly import Poly, atom_free_variables, to_expr, to_poly

from .models import ClosednessCondition, ClosednessReport, ContactConditionReport, LevyCerrutiReport

logger = logging.getLogger(__name__)

PATH_PARAMETER = "s"


def _verdict(residual: Expr, config: Optional[ZeroTestConfig]) -> ResidualVerdict:
    residual = normalize(residual)
    return ResidualVerdict(**is_zero(residual, config).model_dump(), residual=residual)


def field_from_integral(W: IntegralCandidate, space: PhaseSpace) -> ContactField:
    """
    Field generated by a characteristic function: xi_i = dW/dp_i, pi_i = -dW/dx_i.
    """
    xi = tuple(differentiate(W.W, p) for p in space.momenta)
    pi = tuple(normalize(-differentiate(W.W, x)) for x in space.coordinates)
    return ContactField(space=space, xi=xi, pi=pi, characteristic=W.W, name=W.name)


def closedness_check(f: ContactField, config: Optional[ZeroTestConfig] = None) -> ClosednessReport:
    space = f.space
    n = space.n
    conditions = []
    for i in range(n):
        for j in range(i + 1, n):
            residual = differentiate(f.xi[i], space.momenta[j]) - differentiate(f.xi[j], space.momenta[i])
            conditions.append(ClosednessCondition(kind="xi_p", i=i + 1, j=j + 1, verdict=_verdict(residual, config)))
    for i in range(n):
        for j in range(i + 1, n):
            residual = differentiate(f.pi[i], space.coordinates[j]) - differentiate(f.pi[j], space.coordinates[i])
            conditions.append(ClosednessCondition(kind="pi_x", i=i + 1, j=j + 1, verdict=_verdict(residual, config)))
    for i in range(n):
        for j in range(n):
            residual = differentiate(f.xi[i], space.coordinates[j]) + differentiate(f.pi[j], space.momenta[i])
            conditions.append(
                ClosednessCondition(kind="xi_x_pi_p", i=i + 1, j=j + 1, verdict=_verdict(residual, config))
            )
    return ClosednessReport(conditions=conditions)


def contact_conditions(f: ContactField, config: Optional[ZeroTestConfig] = None) -> ContactConditionReport:
    space = f.space
    momentum_conditions = []
    homogeneity_conditions = []
    for j in range(space.n):
        shift: Expr = f.pi[j]
        degree: Expr = Const(0)
        for i in range(space.n):
            p_i = Var(space.momenta[i])
            shift = shift + p_i * differentiate(f.xi[i], space.coordinates[j])
            degree = degree + p_i * differentiate(f.xi[i], space.momenta[j])
        momentum_conditions.append(_verdict(shift, config))
        homogeneity_conditions.append(_verdict(degree, config))
    return ContactConditionReport(
        momentum_conditions=momentum_conditions,
        homogeneity_conditions=homogeneity_conditions,
    )


def _integrate_unit_interval(integrand: Expr, parameter: str) -> Expr:
    """Integral over [0, 1] of an expression polynomial in the parameter."""
    result: Dict = {}
    for mono, coef in to_poly(integrand).terms.items():
        power = 0
        rest = []
        for atom, exponent in mono:
            if isinstance(atom, Var) and atom.name == parameter:
                power = exponent
            elif parameter in atom_free_variables(atom):
                raise NonIntegrableAlongPath(f"Path parameter inside a kernel: {render(integrand)}")
            else:
                rest.append((atom, exponent))
        if power < 0:
            raise NonIntegrableAlongPath(f"Integrand is not polynomial in the path parameter: {render(integrand)}")
        key = tuple(rest)
        result[key] = result.get(key, Fraction(0)) + coef / (power + 1)
    return to_expr(Poly(result))


def _line_integral(f: ContactField, base: Sequence[Fraction]) -> Expr:
    space = f.space
    s = Var(PATH_PARAMETER)
    state = space.state
    base_bindings = {name: Const(b) for name, b in zip(state, base)}
    try:
        for component in f.xi + f.pi:
            substitute(component, base_bindings)
    except DivisionByZeroConstant as exc:
        raise BasePointSingular(f"Field is singular at the base point {list(map(str, base))}") from exc

    path = {name: Const(b) + s * (Var(name) - Const(b)) for name, b in zip(state, base)}
    integrand: Expr = Const(0)
    for i in range(space.n):
        dx = Var(space.coordinates[i]) - Const(base[i])
        dp = Var(space.momenta[i]) - Const(base[space.n + i])
        integrand = integrand - substitute(f.pi[i], path) * dx + substitute(f.xi[i], path) * dp
    return _integrate_unit_interval(normalize(integrand), PATH_PARAMETER)


def integral_from_field(f: ContactField, sys: HamiltonianSystem,
                        base_point: Optional[Sequence[Fraction]] = None,
                        config: Optional[ZeroTestConfig] = None) -> IntegralCandidate:
    """
    Recover the characteristic function of a field.

    Args:
        f: Field with increments (xi, pi)
        sys: System used to fix the additive function of t
        base_point: 2n values (x then p) where the line integral starts; origin by default
        config: Zero-test parameters

    Returns:
        IntegralCandidate: normalized when the field is a symmetry of sys

    Raises:
        NotContactField: With the first violated mixed-partial pair
        BasePointSingular: If the field is undefined at the base point
        NonIntegrableAlongPath: If the integrand is not polynomial along the path
    """
    closedness = closedness_check(f, config)
    violation = closedness.first_violation()
    if violation is not None:
        raise NotContactField(violation.kind, (violation.i, violation.j), render(violation.verdict.residual))

    space = f.space
    if contact_conditions(f, config).preserves_liouville_form:
        logger.debug("Field %s preserves p.dx, using W = p.xi", f.name)
        total: Expr = Const(0)
        for p, xi in zip(space.momenta, f.xi):
            total = total + Var(p) * xi
        W = normalize(total)
    else:
        base = [Fraction(b) for b in (base_point or [0] * (2 * space.n))]
        if len(base) != 2 * space.n:
            raise ValueError(f"Base point needs {2 * space.n} values, got {len(base)}")
        W = _line_integral(f, base)

    candidate = IntegralCandidate(name=f.name, W=W)
    try:
        return normalize_addend(candidate, sys, config)
    except (NotInvariant, NoClosedFormAntiderivative) as exc:
        logger.warning("Reconstructed W for %s left unnormalized: %s", f.name, exc)
        return candidate


# ---------------- Additive function of t ----------------

_PRIMITIVES = {"sin": ("cos", Fraction(-1)), "cos": ("sin", Fraction(1)), "exp": ("exp", Fraction(1))}


def _kernel_antiderivative(power: int, name: str, arg: Expr, slope: Fraction, t: Var) -> Expr:
    # integral of t^power * name(arg) dt, arg = slope*t + c, by parts
    primitive, sign = _PRIMITIVES[name]
    factor = sign / slope
    first = Const(factor) * Func(primitive, arg)
    if power == 0:
        return first
    return t ** power * first - Const(factor * power) * _kernel_antiderivative(power - 1, primitive, arg, slope, t)


def antiderivative_in_t(r: Expr, time: str) -> Expr:
    """
    An antiderivative in t of a function of t alone.

    Supports polynomials in t, and t^k times sin, cos or exp of an argument
    linear in t.

    Raises:
        NoClosedFormAntiderivative: For anything else
    """
    t = Var(time)
    total: Expr = Const(0)
    for mono, coef in to_poly(r).terms.items():
        power = 0
        kernel = None
        constant = Poly.constant(coef)
        for atom, exponent in mono:
            if isinstance(atom, Var) and atom.name == time:
                power = exponent
            elif not atom_free_variables(atom):
                constant = constant * Poly.atom(atom, exponent)
            elif isinstance(atom, Func) and atom.name in _PRIMITIVES and exponent == 1 and kernel is None:
                kernel = atom
            else:
                raise NoClosedFormAntiderivative(render(r))
        if power < 0:
            raise NoClosedFormAntiderivative(render(r))
        scale = to_expr(constant)
        if kernel is None:
            total = total + scale * t ** (power + 1) / Const(power + 1)
            continue
        slope = constant_value(differentiate(kernel.arg, time))
        if not slope or atom_free_variables(kernel) - {time}:
            raise NoClosedFormAntiderivative(render(r))
        total = total + scale * _kernel_antiderivative(power, kernel.name, kernel.arg, slope, t)
    return normalize(total)


def normalize_addend(W: IntegralCandidate, sys: HamiltonianSystem,
                     config: Optional[ZeroTestConfig] = None) -> IntegralCandidate:
    """
    Fix the additive function of t so that dW/dt + {W, H} is exactly zero.

    The residual r must depend on t only (otherwise the field of W is not a
    symmetry); the result is W - G with G' = r.

    Raises:
        NotInvariant: If r depends on x or p
        NoClosedFormAntiderivative: If r has no supported antiderivative in t
    """
    space = sys.space
    residual = first_integral_residual(W, sys)
    for name in space.coordinates + space.momenta:
        if not is_zero(differentiate(residual, name), config).is_zero:
            raise NotInvariant(render(residual))
    if constant_value(residual) == 0:
        return W.model_copy(update={"normalized": True})

    G = antiderivative_in_t(residual, space.time)
    corrected = W.model_copy(update={"W": normalize(W.W - G), "normalized": True})
    check = first_integral_test(corrected, sys, config)
    if not check.is_zero:
        raise NoClosedFormAntiderivative(render(residual))
    logger.debug("Normalized %s by subtracting %s", W.name, render(G))
    return corrected


# ---------------- Point transformations ----------------

def kinetic_potential(sys: HamiltonianSystem) -> Tuple[Expr, Expr]:
    """
    Split H into (T, U) with H = T - U, T quadratic homogeneous in p and U free of p.

    Raises:
        HNotKineticMinusPotential: If H has any other degree in p
    """
    try:
        parts = split_by_p_degree(sys.H, sys.space)
    except NotPolynomialInMomenta as exc:
        raise HNotKineticMinusPotential(str(exc)) from exc
    if 2 not in parts or set(parts) - {0, 2}:
        raise HNotKineticMinusPotential(f"H must split into degrees 2 and 0 in p, got {sorted(parts)}")
    return parts[2], normalize(-parts.get(0, Const(0)))


def levy_cerruti_split(W: IntegralCandidate, sys: HamiltonianSystem,
                       config: Optional[ZeroTestConfig] = None) -> LevyCerrutiReport:
    """
    Check a linear-homogeneous W against H = T - U degree by degree.

    Raises:
        HNotKineticMinusPotential: If H is not quadratic homogeneous in p plus a p-free part
        WNotLinearHomogeneous: If W is not linear and homogeneous in p; the
            exception carries a report with is_linear_homogeneous = False
    """
    space = sys.space
    T, U = kinetic_potential(sys)

    point_field = tuple(differentiate(W.W, p) for p in space.momenta)
    try:
        linear = set(split_by_p_degree(W.W, space)) == {1}
    except NotPolynomialInMomenta:
        linear = False
    if not linear or any(depends_on(c, space.momenta) for c in point_field):
        raise WNotLinearHomogeneous(LevyCerrutiReport(is_linear_homogeneous=False, T=T, U=U))

    bracket_T = poisson_bracket(W.W, T, space)
    bracket_U = poisson_bracket(W.W, U, space)
    return LevyCerrutiReport(
        is_linear_homogeneous=True,
        point_field=point_field,
        T=T,
        U=U,
        T_admits=_verdict(bracket_T, config),
        U_admits=_verdict(bracket_U, config),
        degree_residuals={2: bracket_T, 1: differentiate(W.W, space.time), 0: bracket_U},
    )
