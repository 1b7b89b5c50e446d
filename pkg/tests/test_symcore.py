import math
from fractions import Fraction

import pytest

from canonical import PhaseSpace
from config import ZeroTestConfig
from errors import DivisionByZeroConstant, DomainError, NotPolynomialInMomenta, UnboundVariable
from exparse import parse, render
from symcore import (
    Const,
    Var,
    ZeroStatus,
    compile_numeric,
    constant_value,
    depends_on,
    differentiate,
    eval_numeric,
    is_zero,
    normalize,
    split_by_p_degree,
    substitute,
)

SPACE = PhaseSpace(n=2)
NAMES = ("x1", "x2", "p1", "p2", "t")


def expr(text):
    return parse(text, SPACE)


def same(a, b):
    return constant_value(a - b) == 0


@pytest.mark.parametrize(
    "text, variable, expected",
    [
        ("p1^2/2", "p1", "p1"),
        ("sin(x1)*p1", "x1", "cos(x1)*p1"),
        ("x1 - p1*t", "t", "-p1"),
        ("exp(2*x1)", "x1", "2*exp(2*x1)"),
        ("log(x1)", "x1", "1/x1"),
        ("1/(x1 + p1)", "x1", "-1/(x1 + p1)^2"),
    ],
)
def test_differentiate(text, variable, expected):
    assert same(differentiate(expr(text), variable), expr(expected))


def test_differentiate_accepts_variables():
    assert render(differentiate(expr("x1^3"), Var("x1"))) == "3*x1^2"


def test_substitute_binds_one_variable():
    assert render(substitute(expr("x1*p1"), {"x1": Const(2)})) == "2*p1"


def test_substitute_is_simultaneous():
    swapped = substitute(expr("x1 + 2*p1"), {"x1": Var("p1"), "p1": Var("x1")})
    assert same(swapped, expr("p1 + 2*x1"))


def test_substitute_without_bindings_normalizes():
    assert substitute(expr("x1 + x1"), {}) == normalize(expr("2*x1"))


def test_normalize_collects_terms():
    assert render(normalize(expr("x1 + x1"))) == "2*x1"


def test_normalize_expands():
    assert render(normalize(expr("(x1 + p1)^2 - x1^2 - 2*x1*p1 - p1^2"))) == "0"


def test_normalize_keeps_kernels_opaque():
    e = normalize(expr("sin(x1)^2 + cos(x1)^2"))
    assert constant_value(e) is None
    assert "sin(x1)^2" in render(e) and "cos(x1)^2" in render(e)


def test_normalize_cancels_rational_functions():
    assert same(expr("(x1^2 - 1)/(x1 - 1) - (x1 + 1)*(x1 - 1)/(x1 - 1)"), Const(0))
    assert render(normalize(expr("x1*p1/x1"))) == "p1"


def test_normalize_rejects_division_by_zero():
    with pytest.raises(DivisionByZeroConstant):
        normalize(expr("x1/(p1 - p1)"))


def test_exact_function_values_fold():
    assert constant_value(expr("sin(0) + cos(x1 - x1) + log(1) + sqrt(9/4)")) == Fraction(5, 2)


def test_is_zero_proves_cancellation():
    verdict = is_zero(expr("x1 - x1"))
    assert verdict.status == ZeroStatus.PROVED_ZERO
    assert verdict.proved


def test_is_zero_probes_kernel_identities():
    config = ZeroTestConfig(seed=3, probe_count=16)
    verdict = is_zero(expr("sin(x1)^2 + cos(x1)^2 - 1"), config)
    assert verdict.status == ZeroStatus.NUMERICALLY_ZERO
    assert verdict.probes == 16
    assert verdict.is_zero and not verdict.proved


def test_is_zero_reports_witness():
    verdict = is_zero(expr("x1*p1"), ZeroTestConfig(seed=1))
    assert verdict.status == ZeroStatus.NONZERO
    assert set(verdict.witness) == {"x1", "p1"}
    assert abs(verdict.witness_value) > verdict.tolerance
    assert verdict.witness_value == pytest.approx(verdict.witness["x1"] * verdict.witness["p1"])


def test_is_zero_redraws_outside_the_domain():
    verdict = is_zero(expr("sqrt(x1)^2 - x1"), ZeroTestConfig(seed=2))
    assert verdict.status == ZeroStatus.NUMERICALLY_ZERO


def test_is_zero_is_reproducible():
    config = ZeroTestConfig(seed=11)
    first = is_zero(expr("x1*p2 - sin(t)"), config)
    second = is_zero(expr("x1*p2 - sin(t)"), config)
    assert first == second


def test_split_by_p_degree():
    parts = split_by_p_degree(expr("p1^2/2 - x1^2"), SPACE)
    assert list(parts) == [0, 2]
    assert same(parts[2], expr("p1^2/2"))
    assert same(parts[0], expr("-x1^2"))


def test_split_homogeneous():
    parts = split_by_p_degree(expr("x1*p2 - x2*p1"), SPACE)
    assert list(parts) == [1]


def test_split_rejects_kernels_of_momenta():
    with pytest.raises(NotPolynomialInMomenta):
        split_by_p_degree(expr("sin(p1)"), SPACE)
    with pytest.raises(NotPolynomialInMomenta):
        split_by_p_degree(expr("x1/p1"), SPACE)


def test_split_components_sum_back(rand):
    for _ in range(30):
        e = rand.poly(NAMES, degree=4, terms=6)
        parts = split_by_p_degree(e, SPACE)
        assert same(sum(parts.values(), Const(0)), e)


def test_split_components_are_homogeneous(rand):
    for _ in range(30):
        e = rand.poly(NAMES, degree=4, terms=6)
        point = rand.point(NAMES)
        scaled = dict(point, p1=2 * point["p1"], p2=2 * point["p2"])
        for degree, part in split_by_p_degree(e, SPACE).items():
            assert eval_numeric(part, scaled) == pytest.approx(2 ** degree * eval_numeric(part, point), abs=1e-9)


def test_eval_numeric():
    assert eval_numeric(expr("p1^2/2"), {"p1": 2}) == 2.0
    assert eval_numeric(expr("x1 + p1"), {"x1": 1, "p1": -1}) == 0.0


def test_eval_numeric_domain_errors():
    with pytest.raises(DomainError):
        eval_numeric(expr("log(x1)"), {"x1": 0})
    with pytest.raises(DomainError):
        eval_numeric(expr("sqrt(x1)"), {"x1": -1})
    with pytest.raises(DomainError):
        eval_numeric(expr("1/x1"), {"x1": 0})


def test_eval_numeric_needs_every_variable():
    with pytest.raises(UnboundVariable):
        eval_numeric(expr("x1 + p1"), {"x1": 1})


def test_compile_numeric_matches_tree_evaluation(rand):
    for _ in range(20):
        e = normalize(rand.poly(NAMES))
        point = rand.point(NAMES)
        compiled = compile_numeric([e], NAMES)
        assert compiled(*(point[n] for n in NAMES))[0] == pytest.approx(eval_numeric(e, point), abs=1e-12)


def test_compile_numeric_domain_error():
    compiled = compile_numeric([expr("log(x1)")], ("x1",))
    with pytest.raises(DomainError):
        compiled(-1.0)


def test_depends_on():
    assert depends_on(expr("x1*t"), ["t"])
    assert not depends_on(expr("x1*t - t*x1 + p1"), ["t", "x1"])


def test_differentiate_commutes_with_normalize(rand):
    for _ in range(30):
        e = rand.poly(NAMES, degree=4)
        for name in NAMES:
            assert differentiate(normalize(e), name) == differentiate(e, name)


def test_derivatives_match_central_differences(rand):
    step = 1e-4
    for _ in range(100):
        e = rand.poly(NAMES, degree=3, terms=5)
        point = rand.point(NAMES, bound=1.0)
        name = rand.rand.choice(NAMES)
        forward = eval_numeric(e, dict(point, **{name: point[name] + step}))
        backward = eval_numeric(e, dict(point, **{name: point[name] - step}))
        exact = eval_numeric(differentiate(e, name), point)
        assert math.isclose((forward - backward) / (2 * step), exact, abs_tol=1e-6)


def test_proved_zero_never_contradicts_a_witness(rand):
    config = ZeroTestConfig(seed=5)
    for _ in range(30):
        e = rand.poly(NAMES)
        verdict = is_zero(e, config)
        if verdict.status == ZeroStatus.NONZERO:
            assert constant_value(e) != 0
        if verdict.proved:
            assert constant_value(e) == 0
