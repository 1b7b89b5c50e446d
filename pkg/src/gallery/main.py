"""
Shipped example problems. Every candidate is a first integral of its system
and every field is a symmetry, so running any command over the gallery is
expected to pass.
"""

from typing import Dict, List

from errors import ProblemFileError
from models import ProblemFile

_PROBLEMS: Dict[str, dict] = {
    "free_particle": {
        "n": 1,
        "hamiltonian": "p1^2/2",
        "candidates": [
            {"name": "momentum", "expression": "p1"},
            {"name": "energy", "expression": "p1^2/2"},
        ],
        "fields": [
            {"name": "translation", "xi": ["1"], "pi": ["0"]},
        ],
        "ansatz": {"degree": 1, "include_t": True},
        "simulate": {"initial": [0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "free_particle_2d": {
        "n": 2,
        "hamiltonian": "(p1^2 + p2^2)/2",
        "candidates": [
            {"name": "momentum_x", "expression": "p1"},
            {"name": "momentum_y", "expression": "p2"},
            {"name": "angular_momentum", "expression": "x1*p2 - x2*p1"},
        ],
        "fields": [
            {"name": "rotation", "xi": ["-x2", "x1"], "pi": ["-p2", "p1"]},
        ],
        "ansatz": {"degree": 2, "include_t": False},
        "simulate": {"initial": [1.0, 0.0, 0.5, -0.25], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "constant_force": {
        "n": 1,
        "hamiltonian": "p1^2/2 + x1",
        "candidates": [
            {"name": "energy", "expression": "p1^2/2 + x1"},
            {"name": "momentum_shift", "expression": "p1 + t"},
            {"name": "launch_point", "expression": "x1 - t*p1 - t^2/2"},
        ],
        "fields": [
            {"name": "translation", "xi": ["1"], "pi": ["0"]},
        ],
        "ansatz": {"degree": 1, "include_t": True},
        "simulate": {"initial": [0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "harmonic_oscillator": {
        "n": 1,
        "hamiltonian": "(p1^2 + x1^2)/2",
        "candidates": [
            {"name": "energy", "expression": "(p1^2 + x1^2)/2"},
        ],
        "fields": [
            {"name": "phase_rotation", "xi": ["p1"], "pi": ["-x1"]},
        ],
        "ansatz": {"degree": 2, "include_t": False},
        "simulate": {"initial": [1.0, 0.0], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "central_force_2d": {
        "n": 2,
        "hamiltonian": "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2",
        "candidates": [
            {"name": "energy", "expression": "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2"},
            {"name": "angular_momentum", "expression": "x1*p2 - x2*p1"},
        ],
        "fields": [
            {"name": "rotation", "xi": ["-x2", "x1"], "pi": ["-p2", "p1"]},
        ],
        "ansatz": {"degree": 2, "include_t": False},
        "simulate": {"initial": [1.0, 0.0, 0.0, 0.5], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "galilean_boost": {
        "n": 1,
        "hamiltonian": "p1^2/2",
        "candidates": [
            {"name": "boost", "expression": "x1 - t*p1"},
        ],
        "fields": [
            {"name": "boost", "xi": ["-t"], "pi": ["-1"]},
        ],
        "ansatz": {"degree": 1, "include_t": True},
        "simulate": {"initial": [0.5, 1.0], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
    "levy_cerruti": {
        "n": 2,
        "hamiltonian": "(p1^2 + p2^2)/2 - x1^2",
        "candidates": [
            {"name": "momentum_y", "expression": "p2"},
        ],
        "fields": [
            {"name": "translation_y", "xi": ["0", "1"], "pi": ["0", "0"]},
        ],
        "ansatz": {"degree": 1, "include_t": False},
        # starts on the invariant plane x1 = p1 = 0
        "simulate": {"initial": [0.0, 0.0, 0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 1e-3},
        "seed": 0,
    },
}


def gallery_names() -> List[str]:
    return list(_PROBLEMS)


def load_gallery_problem(name: str) -> ProblemFile:
    """
    Get one shipped problem by name.

    Raises:
        ProblemFileError: If no problem has that name
    """
    if name not in _PROBLEMS:
        raise ProblemFileError(f"Unknown gallery problem '{name}', expected one of {gallery_names()}")
    return ProblemFile.model_validate(_PROBLEMS[name])


def load_gallery() -> Dict[str, ProblemFile]:
    return {name: load_gallery_problem(name) for name in _PROBLEMS}
