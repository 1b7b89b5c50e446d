"""
Settings for canon-symmetry.

Defaults come from environment variables (optionally loaded from a .env file)
so that runs can be tuned without touching problem files. Every report embeds
the settings it was produced with.
"""

import os
from typing import Any

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()

ENV_PREFIX = "CANON_SYMMETRY_"
VERSION = "0.1.0"


def _env(name: str, default: str) -> str:
    return os.getenv(ENV_PREFIX + name, default)


class ZeroTestConfig(BaseModel):
    """Parameters of the probabilistic zero test."""
    model_config = ConfigDict(frozen=True)

    seed: int = 0
    probe_count: int = Field(default=32, ge=1)
    probe_bound: int = Field(default=2, ge=1)
    probe_max_denominator: int = Field(default=64, ge=1)
    tolerance: float = Field(default=1e-9, gt=0)
    max_attempts_factor: int = Field(default=10, ge=1)


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = Field(default_factory=lambda: int(_env("SEED", "0")))
    probe_count: int = Field(default_factory=lambda: int(_env("PROBE_COUNT", "32")), ge=1)
    probe_bound: int = Field(default_factory=lambda: int(_env("PROBE_BOUND", "2")), ge=1)
    probe_max_denominator: int = Field(default_factory=lambda: int(_env("PROBE_MAX_DENOMINATOR", "64")), ge=1)
    zero_tolerance: float = Field(default_factory=lambda: float(_env("ZERO_TOLERANCE", "1e-9")), gt=0)
    max_probe_attempts_factor: int = Field(default_factory=lambda: int(_env("MAX_PROBE_ATTEMPTS_FACTOR", "10")), ge=1)
    max_basis_size: int = Field(default_factory=lambda: int(_env("MAX_BASIS_SIZE", "5000")), ge=1)
    fixed_point_tolerance: float = Field(default_factory=lambda: float(_env("FIXED_POINT_TOLERANCE", "1e-12")), gt=0)
    fixed_point_max_iterations: int = Field(default_factory=lambda: int(_env("FIXED_POINT_MAX_ITERATIONS", "50")), ge=1)
    drift_tolerance: float = Field(default_factory=lambda: float(_env("DRIFT_TOLERANCE", "1e-6")), gt=0)
    commutation_tolerance: float = Field(default_factory=lambda: float(_env("COMMUTATION_TOLERANCE", "1e-6")), gt=0)
    log_level: str = Field(default_factory=lambda: _env("LOG_LEVEL", "WARNING").upper())

    def with_overrides(self, **overrides: Any) -> "Settings":
        """
        Return a copy with the given fields replaced; None values are ignored.

        Args:
            **overrides: Field values, typically taken from command-line flags

        Returns:
            Settings: Validated copy
        """
        updates = {k: v for k, v in overrides.items() if v is not None}
        return Settings.model_validate({**self.model_dump(), **updates})

    def zero_test(self) -> ZeroTestConfig:
        return ZeroTestConfig(
            seed=self.seed,
            probe_count=self.probe_count,
            probe_bound=self.probe_bound,
            probe_max_denominator=self.probe_max_denominator,
            tolerance=self.zero_tolerance,
            max_attempts_factor=self.max_probe_attempts_factor,
        )

    def tolerances(self) -> dict:
        return {
            "zero": self.zero_tolerance,
            "probes": self.probe_count,
            "fixed_point": self.fixed_point_tolerance,
            "drift": self.drift_tolerance,
            "commutation": self.commutation_tolerance,
        }


def get_settings() -> Settings:
    """
    Get the settings derived from the environment.

    Returns:
        Settings: Fresh settings instance
    """
    return Settings()
