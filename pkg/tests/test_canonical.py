import pytest
from pydantic import ValidationError

from canonical import (
    HamiltonianSystem,
    IntegralCandidate,
    PhaseSpace,
    compose_integrals,
    first_integral_residual,
    first_integral_test,
    on_shell_reduce,
    poisson_bracket,
    total_derivative,
)
from conftest import candidate, system
from errors import JetVariablePresent
from exparse import parse, render
from symcore import Const, Var, ZeroStatus, constant_value, differentiate, normalize

SPACE = PhaseSpace(n=2)
NAMES = ("x1", "x2", "p1", "p2", "t")


def expr(text):
    return parse(text, SPACE)


def vanishes(e):
    return constant_value(e) == 0


def test_phase_space_names():
    assert SPACE.names == ("x1", "x2", "p1", "p2", "t", "dx1", "dx2", "dp1", "dp2")
    assert len(set(SPACE.names)) == 4 * SPACE.n + 1


def test_phase_space_needs_a_degree_of_freedom():
    with pytest.raises(ValidationError):
        PhaseSpace(n=0)


def test_hamiltonian_rejects_jets():
    with pytest.raises(JetVariablePresent):
        HamiltonianSystem(space=SPACE, H=expr("p1^2/2 + dx1"))


def test_candidate_rejects_jets():
    with pytest.raises(JetVariablePresent):
        IntegralCandidate(W=expr("dp2"))


def test_residual_equations(constant_force):
    first, second = constant_force.residual_equations()
    space = constant_force.space
    assert vanishes(first[0] - parse("dx1 - p1", space))
    assert vanishes(second[0] - parse("dp1 + 1", space))


def test_bracket_canonical_example():
    assert render(poisson_bracket(expr("x1"), expr("p1^2/2"), SPACE)) == "p1"


def test_angular_momentum_commutes_with_central_hamiltonian():
    bracket = poisson_bracket(expr("x1*p2 - x2*p1"), expr("(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2"), SPACE)
    assert bracket == Const(0)


def test_bracket_term_by_term():
    F, G = expr("x1*p2 - x2*p1"), expr("x1^2*p2 + t*p1")
    oracle = Const(0)
    for x, p in (("x1", "p1"), ("x2", "p2")):
        oracle = oracle + differentiate(F, x) * differentiate(G, p)
        oracle = oracle - differentiate(F, p) * differentiate(G, x)
    assert vanishes(poisson_bracket(F, G, SPACE) - oracle)


def test_bracket_rejects_jets():
    with pytest.raises(JetVariablePresent):
        poisson_bracket(expr("dx1"), expr("p1"), SPACE)


@pytest.mark.parametrize("i", range(2))
@pytest.mark.parametrize("j", range(2))
def test_canonical_relations(i, j):
    assert poisson_bracket(SPACE.x(i), SPACE.x(j), SPACE) == Const(0)
    assert poisson_bracket(SPACE.p(i), SPACE.p(j), SPACE) == Const(0)
    assert constant_value(poisson_bracket(SPACE.x(i), SPACE.p(j), SPACE)) == (1 if i == j else 0)


def test_bracket_antisymmetry(rand):
    for _ in range(100):
        F, G = rand.poly(NAMES), rand.poly(NAMES)
        assert vanishes(poisson_bracket(F, G, SPACE) + poisson_bracket(G, F, SPACE))
        assert vanishes(poisson_bracket(F, F, SPACE))


def test_bracket_leibniz(rand):
    for _ in range(100):
        F, G, K = rand.poly(NAMES, degree=2), rand.poly(NAMES, degree=2), rand.poly(NAMES, degree=2)
        lhs = poisson_bracket(F * G, K, SPACE)
        rhs = F * poisson_bracket(G, K, SPACE) + G * poisson_bracket(F, K, SPACE)
        assert vanishes(lhs - rhs)


def test_bracket_jacobi(rand):
    for _ in range(100):
        F, G, K = rand.poly(NAMES), rand.poly(NAMES), rand.poly(NAMES)
        cyclic = (
            poisson_bracket(F, poisson_bracket(G, K, SPACE), SPACE)
            + poisson_bracket(G, poisson_bracket(K, F, SPACE), SPACE)
            + poisson_bracket(K, poisson_bracket(F, G, SPACE), SPACE)
        )
        assert vanishes(cyclic)


def test_total_derivative():
    assert total_derivative(expr("x1"), SPACE) == Var("dx1")
    assert vanishes(total_derivative(expr("x1*p1"), SPACE) - expr("dx1*p1 + x1*dp1"))
    assert vanishes(total_derivative(expr("x1 - p1*t"), SPACE) - expr("dx1 - dp1*t - p1"))


def test_total_derivative_rejects_jets():
    with pytest.raises(JetVariablePresent):
        total_derivative(expr("dx1"), SPACE)


def test_on_shell_reduce(free_particle, constant_force):
    space = free_particle.space
    assert on_shell_reduce(parse("dx1 - p1", space), free_particle) == Const(0)
    assert constant_value(on_shell_reduce(parse("dp1", space), constant_force)) == -1
    assert on_shell_reduce(parse("x1 + x1", space), free_particle) == normalize(parse("2*x1", space))


def test_bridge_identity(rand):
    """Reducing dW/dt on solutions gives the first-integral residual."""
    for _ in range(50):
        sys = HamiltonianSystem(space=SPACE, H=rand.poly(NAMES, degree=4))
        W = IntegralCandidate(W=rand.poly(NAMES))
        reduced = on_shell_reduce(total_derivative(W.W, SPACE), sys)
        assert vanishes(reduced - first_integral_residual(W, sys))


def test_hamiltonian_is_conserved(oscillator):
    verdict = first_integral_test(IntegralCandidate(W=oscillator.H), oscillator)
    assert verdict.status == ZeroStatus.PROVED_ZERO
    assert verdict.residual == Const(0)


def test_galilean_boost_is_conserved(free_particle):
    verdict = first_integral_test(candidate(free_particle, "x1 - p1*t"), free_particle)
    assert verdict.proved


def test_position_is_not_conserved(free_particle):
    verdict = first_integral_test(candidate(free_particle, "x1"), free_particle)
    assert verdict.status == ZeroStatus.NONZERO
    assert render(verdict.residual) == "p1"


def test_residual_serializes_as_text(free_particle):
    verdict = first_integral_test(candidate(free_particle, "x1"), free_particle)
    assert verdict.model_dump(mode="json")["residual"] == "p1"


def test_bracket_of_integrals_is_an_integral():
    sys = system(2, "(p1^2 + p2^2)/2")
    p1, L = candidate(sys, "p1", "P"), candidate(sys, "x1*p2 - x2*p1", "L")
    composed = compose_integrals(p1, L, sys)
    assert composed.name == "{P, L}"
    assert vanishes(composed.W - parse("-p2", sys.space))
    assert first_integral_test(composed, sys).proved
