"""
Expression language for canon-symmetry.

Parses the text form used by Hamiltonians, candidates and fields into
expression trees and renders trees back to text.
"""

from .main import SourceExpr, Token, parse, render, tokenize

__all__ = [
    'SourceExpr',
    'Token',
    'parse',
    'render',
    'tokenize'
]
