"""
First-integral discovery in a finite polynomial ansatz.

With W = sum c_a m_a over a monomial basis, the map c -> dW/dt + {W, H} is
linear; its nullspace, computed exactly, is the space of first integrals
inside the ansatz.
"""

import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from canonical import HamiltonianSystem, IntegralCandidate, PhaseSpace, first_integral_residual, first_integral_test
from config import ZeroTestConfig, get_settings
from errors import DegreeTooLarge, DiscoveryError, HNotPolynomial
from exparse import render
from symcore import Const, Expr, Var, normalize
from symcore.poly import monomial_key, to_poly

from .linalg import nullspace

logger = logging.getLogger(__name__)


class AnsatzSpace(BaseModel):
    """
    Monomials of degree <= degree in (x, p), each optionally multiplied by
    t^j for j <= degree.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: PhaseSpace
    degree: int
    include_t: bool
    variables: Tuple[str, ...]
    basis: Tuple[Expr, ...]

    @model_validator(mode="after")
    def _check_size(self):
        expected = basis_size(self.space, self.degree, self.include_t)
        if len(self.basis) != expected or len(set(self.basis)) != expected:
            raise ValueError(f"Basis must hold {expected} distinct monomials")
        return self

    @field_serializer("basis")
    def _serialize_basis(self, basis: Tuple[Expr, ...]) -> List[str]:
        return [render(m) for m in basis]


class IntegralBasis(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: List[IntegralCandidate]
    dimension: int
    ansatz_size: int
    rank: int


def basis_size(space: PhaseSpace, degree: int, include_t: bool) -> int:
    size = comb(2 * space.n + degree, degree)
    return size * (degree + 1) if include_t else size


def enumerate_basis(space: PhaseSpace, degree: int, include_t: bool,
                    max_size: Optional[int] = None) -> AnsatzSpace:
    """
    Monomials in graded lexicographic order: by degree in (x, p), then
    lexicographic in x1..xn, p1..pn, then by the power of t.

    Raises:
        DegreeTooLarge: If the basis would exceed the configured cap
    """
    if degree < 0:
        raise ValueError("Degree must be non-negative")
    variables = space.coordinates + space.momenta + ((space.time,) if include_t else ())
    size = basis_size(space, degree, include_t)
    cap = max_size if max_size is not None else get_settings().max_basis_size
    if size > cap:
        raise DegreeTooLarge(size, cap)

    time_powers = range(degree + 1) if include_t else range(1)
    basis: List[Expr] = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(space.coordinates + space.momenta, d):
            monomial: Expr = Const(1)
            for name in combo:
                monomial = monomial * Var(name)
            for j in time_powers:
                basis.append(normalize(monomial * Var(space.time) ** j))
    return AnsatzSpace(space=space, degree=degree, include_t=include_t, variables=variables, basis=tuple(basis))


def _require_polynomial(sys: HamiltonianSystem) -> None:
    for atom in to_poly(sys.H).atoms():
        if not isinstance(atom, Var):
            raise HNotPolynomial(f"Hamiltonian is not polynomial: {render(sys.H)}")
    for mono in to_poly(sys.H).terms:
        if any(e < 0 for _, e in mono):
            raise HNotPolynomial(f"Hamiltonian is not polynomial: {render(sys.H)}")


def condition_matrix(sys: HamiltonianSystem, ansatz: AnsatzSpace) -> Tuple[List[List[Fraction]], List]:
    """
    Matrix of the linear map c -> coefficients of dW/dt + {W, H}.

    Returns:
        Tuple of (rows, monomial of each row); columns follow the ansatz basis
    """
    images: List[Dict] = []
    for monomial in ansatz.basis:
        image = first_integral_residual(IntegralCandidate(W=monomial), sys)
        images.append(to_poly(image).terms)
    row_monomials = sorted({m for image in images for m in image}, key=monomial_key)
    rows = [[image.get(m, Fraction(0)) for image in images] for m in row_monomials]
    return rows, row_monomials


def discover_integrals(sys: HamiltonianSystem, ansatz: AnsatzSpace,
                       config: Optional[ZeroTestConfig] = None, max_size: Optional[int] = None) -> IntegralBasis:
    """
    All first integrals in the span of the ansatz.

    Returns:
        IntegralBasis: Integer-scaled nullspace generators, each re-verified

    Raises:
        HNotPolynomial: If H is not a polynomial
        DegreeTooLarge: If the ansatz exceeds max_size, or the configured cap when max_size is None
    """
    _require_polynomial(sys)
    cap = max_size if max_size is not None else get_settings().max_basis_size
    if len(ansatz.basis) > cap:
        raise DegreeTooLarge(len(ansatz.basis), cap)

    rows, _ = condition_matrix(sys, ansatz)
    vectors = nullspace(rows, len(ansatz.basis))
    generators = []
    for index, vector in enumerate(vectors, start=1):
        total: Expr = Const(0)
        for coefficient, monomial in zip(vector, ansatz.basis):
            if coefficient != 0:
                total = total + Const(coefficient) * monomial
        candidate = IntegralCandidate(name=f"I{index}", W=normalize(total), normalized=True)
        verdict = first_integral_test(candidate, sys, config)
        if not verdict.proved:
            raise DiscoveryError(f"Generator {render(candidate.W)} failed verification: {render(verdict.residual)}")
        generators.append(candidate)
    logger.info("Found %d first integrals among %d monomials", len(generators), len(ansatz.basis))
    return IntegralBasis(
        generators=generators,
        dimension=len(generators),
        ansatz_size=len(ansatz.basis),
        rank=len(ansatz.basis) - len(generators),
    )
