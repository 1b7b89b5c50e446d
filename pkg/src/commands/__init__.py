"""
Commands module for canon-symmetry.

Loads problem files, runs the checks behind each command-line command and
renders the resulting reports.
"""

from .main import COMMANDS, CommandService, get_command_service, load_problem, render_text

__all__ = [
    'COMMANDS',
    'CommandService',
    'get_command_service',
    'load_problem',
    'render_text'
]
