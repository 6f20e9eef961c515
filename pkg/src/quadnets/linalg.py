"""Row reduction over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def to_fractions(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in matrix]


def rref(matrix: Sequence[Sequence], column_order: Sequence[int] | None = None):
    """Reduced row echelon form.

    Columns are swept in ``column_order`` (default: left to right), so the
    pivot of each row is its first nonzero entry in that order. Returns the
    nonzero rows and the list of pivot columns, in sweep order.
    """
    a = to_fractions(matrix)
    if not a:
        return [], []
    ncols = len(a[0])
    order = list(column_order) if column_order is not None else list(range(ncols))
    pivots: list[int] = []
    r = 0
    for col in order:
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    return a[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel."""
    if not matrix:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rows, pivots = rref(matrix)
    n = len(matrix[0])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(matrix))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers (sign untouched)."""
    import math

    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) if any(ints) else 1
    return [x // g for x in ints]
