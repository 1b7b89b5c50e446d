import math

import numpy as np
import pytest

from config import Settings
from conftest import candidate, system
from errors import CanonSymmetryError, DomainError, NewtonDivergence, NotSeparable
from numverify import (
    CSV_HEADER,
    IMPLICIT_MIDPOINT,
    VERLET,
    choose_method,
    drift_report,
    flow_commutation_check,
    integrate_hamilton,
    inverse_masses,
    symmetry_flow,
    write_drift_csv,
)

SETTINGS = Settings(fixed_point_tolerance=1e-13, fixed_point_max_iterations=50, commutation_tolerance=1e-6)


def test_free_particle_moves_uniformly(free_particle):
    traj = integrate_hamilton(free_particle, [0.0, 1.0], 0.0, 1.0, 0.01, settings=SETTINGS)
    assert traj.states.shape == (101, 2)
    assert traj.final_time == pytest.approx(1.0)
    assert traj.final_state == pytest.approx([1.0, 1.0], abs=1e-12)


def test_time_grid(oscillator):
    traj = integrate_hamilton(oscillator, [1.0, 0.0], 2.0, 3.0, 0.25, settings=SETTINGS)
    assert list(traj.times) == pytest.approx([2.0, 2.25, 2.5, 2.75, 3.0])
    assert traj.method == VERLET
    assert traj.step == 0.25


@pytest.mark.parametrize("method", [VERLET, IMPLICIT_MIDPOINT])
def test_oscillator_returns_after_one_period(oscillator, method):
    period = 2 * math.pi
    traj = integrate_hamilton(oscillator, [1.0, 0.0], 0.0, period, period / 6000, method=method, settings=SETTINGS)
    assert traj.final_state == pytest.approx([1.0, 0.0], abs=1e-5)


@pytest.mark.parametrize("method", [VERLET, IMPLICIT_MIDPOINT])
def test_second_order_convergence(oscillator, method):
    errors = []
    for h in (4e-3, 2e-3, 1e-3):
        traj = integrate_hamilton(oscillator, [1.0, 0.0], 0.0, 1.0, h, method=method, settings=SETTINGS)
        exact = np.array([math.cos(1.0), -math.sin(1.0)])
        errors.append(np.max(np.abs(traj.final_state - exact)))
    for coarse, fine in zip(errors, errors[1:]):
        assert 3 <= coarse / fine <= 5


def test_verlet_energy_drift_is_second_order(oscillator):
    energy = candidate(oscillator, "(p1^2 + x1^2)/2")
    drifts = []
    for h in (4e-3, 2e-3, 1e-3):
        traj = integrate_hamilton(oscillator, [1.0, 0.0], 0.0, 10.0, h, method=VERLET, settings=SETTINGS)
        drifts.append(drift_report(energy, traj, oscillator).max_abs_deviation)
    for coarse, fine in zip(drifts, drifts[1:]):
        assert 3.5 <= coarse / fine <= 4.5


def test_verlet_is_reversible(central_force):
    q0 = np.array([1.0, 0.5, -0.2, 0.7])
    forward = integrate_hamilton(central_force, q0, 0.0, 1.0, 1e-3, settings=SETTINGS).final_state
    flipped = np.concatenate([forward[:2], -forward[2:]])
    back = integrate_hamilton(central_force, flipped, 0.0, 1.0, 1e-3, settings=SETTINGS).final_state
    assert np.max(np.abs(np.concatenate([back[:2], -back[2:]]) - q0)) < 1e-10


def test_domain_error_at_the_initial_state():
    sys = system(1, "p1^2/2 + log(x1)")
    with pytest.raises(DomainError):
        integrate_hamilton(sys, [-1.0, 0.0], 0.0, 1.0, 0.1, settings=SETTINGS)


@pytest.mark.parametrize(
    "q0, t0, t1, h, method",
    [
        ([0.0], 0.0, 1.0, 0.1, VERLET),
        ([0.0, 1.0], 1.0, 1.0, 0.1, VERLET),
        ([0.0, 1.0], 0.0, 1.0, 0.0, VERLET),
        ([0.0, 1.0], 0.0, 1.0, 0.1, "rk4"),
    ],
)
def test_invalid_arguments(free_particle, q0, t0, t1, h, method):
    with pytest.raises(ValueError):
        integrate_hamilton(free_particle, q0, t0, t1, h, method=method, settings=SETTINGS)


def test_inverse_masses():
    assert list(inverse_masses(system(2, "p1^2/4 + p2^2/2 + x1"))) == [0.5, 1.0]
    assert inverse_masses(system(1, "p1^2/2 + x1*p1")) is None
    assert inverse_masses(system(2, "p1*p2")) is None
    assert inverse_masses(system(1, "x1^2*p1^2/2")) is None
    assert inverse_masses(system(1, "sin(p1)")) is None


def test_choose_method(free_particle):
    assert choose_method(free_particle) == VERLET
    assert choose_method(system(1, "x1^2*p1^2/2")) == IMPLICIT_MIDPOINT


def test_verlet_needs_a_separable_hamiltonian():
    sys = system(1, "p1^2/2 + x1*p1")
    with pytest.raises(NotSeparable):
        integrate_hamilton(sys, [0.0, 1.0], 0.0, 1.0, 0.1, method=VERLET, settings=SETTINGS)


def test_fixed_point_iteration_cap(oscillator):
    settings = Settings(fixed_point_max_iterations=1, fixed_point_tolerance=1e-15)
    with pytest.raises(NewtonDivergence):
        integrate_hamilton(oscillator, [1.0, 0.0], 0.0, 1.0, 0.1, method=IMPLICIT_MIDPOINT, settings=settings)


def test_implicit_midpoint_handles_position_dependent_mass():
    sys = system(1, "(1 + x1^2)*p1^2/2")
    traj = integrate_hamilton(sys, [0.0, 1.0], 0.0, 2.0, 1e-3, method=IMPLICIT_MIDPOINT, settings=SETTINGS)
    stats = drift_report(candidate(sys, "(1 + x1^2)*p1^2/2"), traj, sys)
    assert stats.max_abs_deviation < 1e-5


def test_energy_drift_is_small(oscillator):
    traj = integrate_hamilton(oscillator, [1.0, 0.0], 0.0, 10.0, 1e-3, settings=SETTINGS)
    stats = drift_report(candidate(oscillator, "(p1^2 + x1^2)/2"), traj, oscillator)
    assert stats.initial_value == pytest.approx(0.5)
    assert stats.samples == 10001
    assert stats.within(1e-6)
    assert stats.values is None


def test_implicit_midpoint_conserves_quadratic_energy(oscillator):
    traj = integrate_hamilton(oscillator, [1.0, 0.0], 0.0, 10.0, 1e-2, method=IMPLICIT_MIDPOINT, settings=SETTINGS)
    stats = drift_report(candidate(oscillator, "(p1^2 + x1^2)/2"), traj, oscillator)
    assert stats.max_abs_deviation < 1e-10


def test_angular_momentum_is_preserved_exactly(central_force):
    traj = integrate_hamilton(central_force, [1.0, 0.0, 0.0, 0.8], 0.0, 10.0, 1e-3, settings=SETTINGS)
    stats = drift_report(candidate(central_force, "x1*p2 - x2*p1"), traj, central_force)
    assert stats.initial_value == pytest.approx(0.8)
    assert stats.max_abs_deviation < 1e-10


def test_boost_is_conserved_along_the_solution(free_particle):
    traj = integrate_hamilton(free_particle, [0.5, 2.0], 0.0, 3.0, 1e-2, settings=SETTINGS)
    stats = drift_report(candidate(free_particle, "x1 - t*p1"), traj, free_particle)
    assert stats.max_abs_deviation < 1e-12


def test_position_drifts(free_particle):
    traj = integrate_hamilton(free_particle, [0.0, 1.0], 0.0, 1.0, 1e-2, settings=SETTINGS)
    stats = drift_report(candidate(free_particle, "x1"), traj, free_particle, keep_values=True)
    assert stats.max_abs_deviation == pytest.approx(1.0)
    assert stats.final_deviation == pytest.approx(1.0)
    assert not stats.within(1e-6)
    assert len(stats.values) == stats.samples


def test_symmetry_flow_rotates(free_particle_2d):
    L = candidate(free_particle_2d, "x1*p2 - x2*p1")
    rotated = symmetry_flow(L, free_particle_2d, [1.0, 0.0, 0.0, 0.0], 0.0, math.pi / 2, 1e-3, settings=SETTINGS)
    assert rotated == pytest.approx([0.0, 1.0, 0.0, 0.0], abs=1e-6)


def test_symmetry_flow_translates(free_particle):
    shifted = symmetry_flow(candidate(free_particle, "p1"), free_particle, [0.0, 1.0], 0.0, 0.25, 0.1, settings=SETTINGS)
    assert shifted == pytest.approx([0.25, 1.0], abs=1e-12)


def test_zero_flow_parameter_is_the_identity(free_particle):
    z0 = [0.3, -0.4]
    assert list(symmetry_flow(candidate(free_particle, "x1*p1"), free_particle, z0, 0.0, 0.0, 0.1)) == z0


def test_translation_commutes_with_evolution(free_particle):
    report = flow_commutation_check(candidate(free_particle, "p1"), free_particle, [0.0, 1.0], 0.1, 1.0, 1e-3,
                                    settings=SETTINGS)
    assert report.passed
    assert report.error < 1e-12
    assert report.method == VERLET
    assert report.flow_parameter == 0.1


def test_rotation_commutes_with_central_force(central_force):
    report = flow_commutation_check(candidate(central_force, "x1*p2 - x2*p1"), central_force,
                                    [1.0, 0.0, 0.0, 0.8], 0.1, 1.0, 1e-3, settings=SETTINGS)
    assert report.error < 1e-6
    assert report.passed


def test_time_dependent_symmetry_commutes(free_particle):
    report = flow_commutation_check(candidate(free_particle, "x1 - t*p1"), free_particle, [0.0, 1.0], 0.1, 1.0,
                                    1e-3, settings=SETTINGS)
    assert report.passed


def test_dilation_does_not_commute(free_particle):
    report = flow_commutation_check(candidate(free_particle, "x1*p1"), free_particle, [0.0, 1.0], 0.1, 1.0, 1e-3,
                                    settings=SETTINGS)
    assert report.error > 1e-3
    assert not report.passed
    assert len(report.A) == len(report.B) == 2


def test_drift_csv(tmp_path, free_particle):
    traj = integrate_hamilton(free_particle, [0.0, 1.0], 0.0, 1.0, 0.25, settings=SETTINGS)
    stats = drift_report(candidate(free_particle, "x1"), traj, free_particle, keep_values=True)
    target = write_drift_csv(tmp_path / "nested" / "drift.csv", traj, stats)
    lines = target.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    table = np.loadtxt(target, delimiter=",", skiprows=1)
    assert table.shape == (5, 3)
    assert table[:, 0] == pytest.approx(traj.times)
    assert table[-1, 1] == pytest.approx(1.0)
    assert table[:, 2] == pytest.approx(table[:, 1] - table[0, 1])


def test_drift_csv_needs_values(tmp_path, free_particle):
    traj = integrate_hamilton(free_particle, [0.0, 1.0], 0.0, 1.0, 0.25, settings=SETTINGS)
    stats = drift_report(candidate(free_particle, "x1"), traj, free_particle)
    with pytest.raises(CanonSymmetryError):
        write_drift_csv(tmp_path / "drift.csv", traj, stats)
