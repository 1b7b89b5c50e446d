"""
Numerical cross-checks: integrate the canonical system, monitor candidate
integrals along the solution, and test that the flow of a symmetry field maps
solutions to solutions.

Both integrators are second order and symplectic. Verlet (kick-drift-kick)
needs H = sum p_i^2 / (2 m_i) + V(t, x); implicit midpoint takes any H.
"""

import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np

from canonical import HamiltonianSystem, IntegralCandidate
from config import Settings, get_settings
from errors import NewtonDivergence, NotPolynomialInMomenta, NotSeparable
from symcore import Var, compile_numeric, differentiate, normalize, split_by_p_degree
from symcore.poly import to_poly

from .models import CommutationReport, DriftStats, Trajectory

logger = logging.getLogger(__name__)

VERLET = "verlet"
IMPLICIT_MIDPOINT = "implicit_midpoint"
METHODS = (VERLET, IMPLICIT_MIDPOINT)

VectorField = Callable[[np.ndarray, float], np.ndarray]


def inverse_masses(sys: HamiltonianSystem) -> Optional[np.ndarray]:
    """
    1/m_i when H = sum p_i^2/(2 m_i) + V(t, x) with constant masses, else None.
    """
    space = sys.space
    try:
        parts = split_by_p_degree(sys.H, space)
    except NotPolynomialInMomenta:
        return None
    if 2 not in parts or set(parts) - {0, 2}:
        return None
    masses = np.zeros(space.n)
    for mono, coef in to_poly(parts[2]).terms.items():
        if len(mono) != 1:
            return None
        (atom, exponent), = mono
        if exponent != 2 or not isinstance(atom, Var) or atom.name not in space.momenta:
            return None
        masses[space.momenta.index(atom.name)] = 2 * float(coef)
    return masses


def choose_method(sys: HamiltonianSystem) -> str:
    return VERLET if inverse_masses(sys) is not None else IMPLICIT_MIDPOINT


def _hamiltonian_field(sys: HamiltonianSystem) -> VectorField:
    space = sys.space
    names = space.state + (space.time,)
    components = [differentiate(sys.H, p) for p in space.momenta]
    components += [normalize(-differentiate(sys.H, x)) for x in space.coordinates]
    compiled = compile_numeric(components, names)

    def field(z: np.ndarray, t: float) -> np.ndarray:
        return np.array(compiled(*z, t))

    return field


def _step_count(span: float, h: float) -> int:
    # tolerate float noise when h divides the span
    return max(1, math.ceil(span / h - 1e-9))


def _implicit_midpoint(field: VectorField, z0: np.ndarray, t0: float, h: float, steps: int,
                       settings: Settings) -> np.ndarray:
    states = np.empty((steps + 1, z0.size))
    states[0] = z0
    z = z0
    for k in range(steps):
        t = t0 + k * h
        midpoint_time = t + h / 2
        guess = z + h * field(z, t)
        for _ in range(settings.fixed_point_max_iterations):
            updated = z + h * field((z + guess) / 2, midpoint_time)
            if not np.all(np.isfinite(updated)):
                raise NewtonDivergence(f"Non-finite state at t = {t}")
            change = np.max(np.abs(updated - guess))
            guess = updated
            if change <= settings.fixed_point_tolerance * (1.0 + np.max(np.abs(updated))):
                break
        else:
            raise NewtonDivergence(
                f"Fixed-point iteration did not converge in {settings.fixed_point_max_iterations} steps at t = {t}"
            )
        z = guess
        states[k + 1] = z
    return states


def _verlet(sys: HamiltonianSystem, masses: np.ndarray, z0: np.ndarray, t0: float, h: float,
            steps: int) -> np.ndarray:
    space = sys.space
    n = space.n
    names = space.coordinates + (space.time,)
    force = compile_numeric([normalize(-differentiate(sys.H, x)) for x in space.coordinates], names)
    states = np.empty((steps + 1, 2 * n))
    states[0] = z0
    x, p = z0[:n].copy(), z0[n:].copy()
    a = np.array(force(*x, t0))
    for k in range(steps):
        t_next = t0 + (k + 1) * h
        p_half = p + 0.5 * h * a
        x = x + h * masses * p_half
        a = np.array(force(*x, t_next))
        p = p_half + 0.5 * h * a
        states[k + 1, :n] = x
        states[k + 1, n:] = p
    return states


def integrate_hamilton(sys: HamiltonianSystem, q0: Sequence[float], t0: float, t1: float, h: float,
                       method: str = VERLET, settings: Optional[Settings] = None) -> Trajectory:
    """
    Integrate the canonical system from (t0, q0) with fixed step h.

    Args:
        sys: Hamiltonian system
        q0: Initial state (x1..xn, p1..pn)
        t0: Initial time
        t1: Final time; the grid has ceil((t1 - t0) / h) steps
        h: Step size
        method: "verlet" or "implicit_midpoint"
        settings: Fixed-point tolerances, defaults to the environment settings

    Returns:
        Trajectory

    Raises:
        NotSeparable: If verlet is requested for an unsuitable H
        NewtonDivergence: If the implicit midpoint iteration fails
        DomainError: If H or its gradient cannot be evaluated
    """
    settings = settings or get_settings()
    space = sys.space
    z0 = np.asarray(q0, dtype=float)
    if z0.shape != (2 * space.n,):
        raise ValueError(f"Initial state needs {2 * space.n} values, got {z0.size}")
    if h <= 0 or t1 <= t0:
        raise ValueError("Need h > 0 and t1 > t0")
    if method not in METHODS:
        raise ValueError(f"Unknown method '{method}', expected one of {METHODS}")

    compile_numeric([sys.H], space.state + (space.time,))(*z0, t0)
    steps = _step_count(t1 - t0, h)
    times = t0 + h * np.arange(steps + 1)

    if method == VERLET:
        masses = inverse_masses(sys)
        if masses is None:
            raise NotSeparable("Verlet needs H = sum p_i^2/(2 m_i) + V(t, x)")
        states = _verlet(sys, masses, z0, t0, h, steps)
    else:
        states = _implicit_midpoint(_hamiltonian_field(sys), z0, t0, h, steps, settings)
    logger.debug("Integrated %d steps with %s", steps, method)
    return Trajectory(times=times, states=states, method=method, step=h)


def drift_report(W: IntegralCandidate, traj: Trajectory, sys: HamiltonianSystem,
                 keep_values: bool = False) -> DriftStats:
    """
    Evaluate W(t, x, p) at every sample and report deviations from the start.

    Raises:
        DomainError: If W cannot be evaluated somewhere on the trajectory
    """
    space = sys.space
    evaluate = compile_numeric([W.W], space.state + (space.time,))
    values = np.array([evaluate(*state, t)[0] for state, t in zip(traj.states, traj.times)])
    deviations = values - values[0]
    return DriftStats(
        initial_value=float(values[0]),
        max_abs_deviation=float(np.max(np.abs(deviations))),
        final_deviation=float(deviations[-1]),
        samples=int(values.size),
        method=traj.method,
        step=traj.step,
        values=[float(v) for v in values] if keep_values else None,
    )


def _symmetry_field(W: IntegralCandidate, sys: HamiltonianSystem) -> VectorField:
    space = sys.space
    components = [differentiate(W.W, p) for p in space.momenta]
    components += [normalize(-differentiate(W.W, x)) for x in space.coordinates]
    compiled = compile_numeric(components, space.state + (space.time,))
    return lambda z, t: np.array(compiled(*z, t))


def symmetry_flow(W: IntegralCandidate, sys: HamiltonianSystem, z0: Sequence[float], time: float, s: float,
                  h: float, settings: Optional[Settings] = None) -> np.ndarray:
    """
    Flow of (dW/dp, -dW/dx) for parameter s at fixed time, by implicit midpoint.
    """
    settings = settings or get_settings()
    z0 = np.asarray(z0, dtype=float)
    if s == 0:
        return z0.copy()
    steps = _step_count(abs(s), h)
    sigma = s / steps
    field = _symmetry_field(W, sys)
    frozen_time: VectorField = lambda z, _: field(z, time)
    return _implicit_midpoint(frozen_time, z0, 0.0, sigma, steps, settings)[-1]


def flow_commutation_check(W: IntegralCandidate, sys: HamiltonianSystem, q0: Sequence[float], s: float,
                           t1: float, h: float, t0: float = 0.0, method: Optional[str] = None,
                           settings: Optional[Settings] = None) -> CommutationReport:
    """
    Compare A = evolve(symmetry(q0)) with B = symmetry(evolve(q0)).

    The symmetry flow in B is taken at the final time of the evolution, since
    the field may depend on t.
    """
    settings = settings or get_settings()
    method = method or choose_method(sys)

    shifted = symmetry_flow(W, sys, q0, t0, s, h, settings)
    A = integrate_hamilton(sys, shifted, t0, t1, h, method, settings).final_state
    evolved = integrate_hamilton(sys, q0, t0, t1, h, method, settings)
    B = symmetry_flow(W, sys, evolved.final_state, evolved.final_time, s, h, settings)

    error = float(np.max(np.abs(A - B)))
    tolerance = settings.commutation_tolerance
    return CommutationReport(
        A=[float(v) for v in A],
        B=[float(v) for v in B],
        error=error,
        tolerance=tolerance,
        passed=error < tolerance,
        method=method,
        step=h,
        flow_parameter=s,
    )
