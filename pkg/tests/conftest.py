import random
from fractions import Fraction
from typing import Sequence

import pytest

from canonical import HamiltonianSystem, IntegralCandidate, PhaseSpace
from config import ZeroTestConfig
from exparse import parse
from symcore import Const, Expr, Var


class Rand:
    """Random source, pulled out into fixture with repr so the seed is
    displayed on failing tests"""

    def __init__(self, seed=0):
        self.seed = seed or random.randint(0, 2**32 - 1)
        self.rand = random.Random(self.seed)

    def __repr__(self):
        return f"Rand({self.seed})"

    def fraction(self, bound=5, max_den=4):
        """random rational in [-bound, bound] with small denominator"""
        den = self.rand.randint(1, max_den)
        return Fraction(self.rand.randint(-bound * den, bound * den), den)

    def point(self, names: Sequence[str], bound=1.5):
        return {name: self.rand.uniform(-bound, bound) for name in names}

    def monomial(self, names: Sequence[str], degree: int) -> Expr:
        term: Expr = Const(1)
        for _ in range(self.rand.randint(0, degree)):
            term = term * Var(self.rand.choice(list(names)))
        return term

    def poly(self, names: Sequence[str], degree=3, terms=4) -> Expr:
        """random polynomial with rational coefficients, at most `degree` in total"""
        total: Expr = Const(0)
        for _ in range(self.rand.randint(1, terms)):
            total = total + Const(self.fraction()) * self.monomial(names, degree)
        return total


@pytest.fixture
def rand():
    yield Rand()


@pytest.fixture
def zero_test():
    return ZeroTestConfig(seed=7)


def system(n: int, hamiltonian: str) -> HamiltonianSystem:
    space = PhaseSpace(n=n)
    return HamiltonianSystem(space=space, H=parse(hamiltonian, space))


def candidate(sys: HamiltonianSystem, text: str, name: str = "W") -> IntegralCandidate:
    return IntegralCandidate(name=name, W=parse(text, sys.space))


@pytest.fixture
def free_particle():
    return system(1, "p1^2/2")


@pytest.fixture
def free_particle_2d():
    return system(2, "(p1^2 + p2^2)/2")


@pytest.fixture
def constant_force():
    return system(1, "p1^2/2 + x1")


@pytest.fixture
def oscillator():
    return system(1, "(p1^2 + x1^2)/2")


@pytest.fixture
def central_force():
    return system(2, "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2")


@pytest.fixture
def levy_cerruti():
    return system(2, "(p1^2 + p2^2)/2 - x1^2")
