from pathlib import Path
from typing import Union

import numpy as np

from errors import CanonSymmetryError

from .models import DriftStats, Trajectory

CSV_HEADER = "t,W,deviation"


def write_drift_csv(path: Union[str, Path], traj: Trajectory, stats: DriftStats) -> Path:
    """
    Write one row per sample: time, value of W and deviation from the start.

    Args:
        path: Target file; parent directories are created
        traj: Trajectory the stats were computed on
        stats: Drift stats holding the per-sample values

    Returns:
        Path: The written file
    """
    if stats.values is None:
        raise CanonSymmetryError("Drift values were not kept; call drift_report with keep_values=True")
    values = np.asarray(stats.values)
    table = np.column_stack([traj.times, values, values - values[0]])
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(target, table, fmt="%.17g", delimiter=",", header=CSV_HEADER, comments="")
    return target
