"""
Exact Gaussian elimination over the rationals.

Pivots are chosen among the remaining rows by the smallest height
|numerator| * denominator, ties broken by row index, which keeps the entries
small and the result independent of anything but the input.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def _height(value: Fraction) -> int:
    return abs(value.numerator) * value.denominator


def rref(matrix: Sequence[Sequence[Fraction]], columns: int) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form.

    Args:
        matrix: Rows of rationals, each of length `columns`
        columns: Number of columns (needed when there are no rows)

    Returns:
        Tuple of (reduced rows, pivot column of each nonzero row)
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    pivots: List[int] = []
    current = 0
    for column in range(columns):
        candidates = [r for r in range(current, len(rows)) if rows[r][column] != 0]
        if not candidates:
            continue
        best = min(candidates, key=lambda r: (_height(rows[r][column]), r))
        rows[current], rows[best] = rows[best], rows[current]
        pivot = rows[current][column]
        rows[current] = [v / pivot for v in rows[current]]
        for r in range(len(rows)):
            if r != current and rows[r][column] != 0:
                factor = rows[r][column]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[current])]
        pivots.append(column)
        current += 1
        if current == len(rows):
            break
    return rows[:current], pivots


def integer_scaled(vector: Sequence[Fraction]) -> List[Fraction]:
    """Scale to coprime integers, keeping the sign of the last nonzero entry positive."""
    denominators = [v.denominator for v in vector if v != 0]
    if not denominators:
        return list(vector)
    multiple = lcm(*denominators)
    scaled = [v * multiple for v in vector]
    divisor = 0
    for v in scaled:
        divisor = gcd(divisor, int(v))
    last = next(v for v in reversed(scaled) if v != 0)
    if last < 0:
        divisor = -divisor
    return [v / divisor for v in scaled]


def nullspace(matrix: Sequence[Sequence[Fraction]], columns: int) -> List[List[Fraction]]:
    """
    Basis of {c : matrix . c = 0}, one vector per free column, integer-scaled.
    """
    reduced, pivots = rref(matrix, columns)
    free = [c for c in range(columns) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * columns
        vector[f] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[f]
        basis.append(integer_scaled(vector))
    return basis
