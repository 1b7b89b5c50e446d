"""
Schemas of the problem files read by the command line and of the reports it
writes.
"""

from .api import (
    AnsatzSpec,
    CandidateSpec,
    FieldSpec,
    ProblemFile,
    Report,
    ReportConfig,
    ResultEntry,
    SimulateSpec,
)

__all__ = [
    'AnsatzSpec',
    'CandidateSpec',
    'FieldSpec',
    'ProblemFile',
    'Report',
    'ReportConfig',
    'ResultEntry',
    'SimulateSpec'
]
