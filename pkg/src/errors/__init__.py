"""
Errors module for canon-symmetry.

Every failure the toolkit reports is a subclass of CanonSymmetryError so the
command layer can tell input problems apart from failed checks.
"""

from .main import *
