"""Exact feasibility of ``A x = b, x >= 0`` by phase-one simplex.

Pivoting follows Bland's rule, so the method terminates on degenerate
problems. Infeasible systems come back with a Farkas certificate ``y``:
``y . A_j <= 0`` for every column and ``y . b > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq


def _q(x: Fraction) -> mpq:
    return mpq(x.numerator, x.denominator)


def _f(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class FeasibilityResult:
    feasible: bool
    x: list[Fraction] | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


def solve_feasibility(A: Sequence[Sequence], b: Sequence) -> FeasibilityResult:
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return FeasibilityResult(True, [Fraction(0)] * n)
    signs = [1 if Fraction(bi) >= 0 else -1 for bi in b]
    # exact rationals throughout; mpq is only a faster Fraction
    # tableau columns: n structural, then m artificial
    T = [
        [_q(signs[i] * Fraction(A[i][j])) for j in range(n)] + [mpq(int(i == k)) for k in range(m)]
        for i in range(m)
    ]
    rhs = [_q(signs[i] * Fraction(b[i])) for i in range(m)]
    basis = [n + i for i in range(m)]
    cost = [mpq(0)] * n + [mpq(1)] * m
    # reduced costs r_j = c_j - c_B B^-1 A_j
    reduced = [cost[j] - sum(T[i][j] for i in range(m)) for j in range(n + m)]
    objective = sum(rhs)
    pivots = 0
    while True:
        entering = next((j for j in range(n + m) if reduced[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # cannot happen for a phase-one problem bounded below by zero
            raise ArithmeticError("phase-one objective unbounded")
        row = best[1]
        piv = T[row][entering]
        T[row] = [x / piv for x in T[row]]
        rhs[row] /= piv
        support = [j for j, y in enumerate(T[row]) if y]
        for i in range(m):
            if i != row and T[i][entering]:
                f = T[i][entering]
                target = T[i]
                for j in support:
                    target[j] -= f * T[row][j]
                rhs[i] -= f * rhs[row]
        f = reduced[entering]
        for j in support:
            reduced[j] -= f * T[row][j]
        objective += f * rhs[row]
        basis[row] = entering
        pivots += 1
    if objective == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = _f(rhs[i])
        return FeasibilityResult(True, x=x, pivots=pivots)
    # dual of the flipped system is y'_i = 1 - reduced cost of artificial i
    y = [signs[i] * (1 - _f(reduced[n + i])) for i in range(m)]
    return FeasibilityResult(False, farkas=y, pivots=pivots)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _affine_minimizer(points: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients alpha (summing to 1) of the point of the affine hull nearest 0."""
    from .linalg import rref

    k = len(points)
    gram = [[_dot(p, q) for q in points] for p in points]
    # [G 1; 1^T 0] [alpha; nu] = [0; 1]
    system = [gram[i] + [Fraction(1), Fraction(0)] for i in range(k)]
    system.append([Fraction(1)] * k + [Fraction(0), Fraction(1)])
    rows, pivots = rref(system)
    alpha = [Fraction(0)] * k
    for row, p in zip(rows, pivots):
        if p < k:
            alpha[p] = row[-1]
    return alpha


def min_norm_point(points: Sequence[Sequence]) -> list[Fraction]:
    """Exact point of the convex hull of ``points`` closest to the origin.

    Wolfe's algorithm; every step is rational, so the optimality test
    ``x . p >= |x|^2`` for all p is exact.
    """
    pts = [[Fraction(x) for x in p] for p in points]
    if not pts:
        raise ValueError("empty point set")
    first = min(range(len(pts)), key=lambda i: _dot(pts[i], pts[i]))
    active, lam = [first], [Fraction(1)]
    x = pts[first]
    while True:
        norm = _dot(x, x)
        if norm == 0:
            return x
        j = min(range(len(pts)), key=lambda i: _dot(x, pts[i]))
        if _dot(x, pts[j]) >= norm or j in active:
            return x
        active.append(j)
        lam.append(Fraction(0))
        while True:
            alpha = _affine_minimizer([pts[i] for i in active])
            if all(a > 0 for a in alpha):
                lam = alpha
                break
            theta = min(l / (l - a) for l, a in zip(lam, alpha) if a <= 0 and l != a)
            lam = [theta * a + (1 - theta) * l for a, l in zip(alpha, lam)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            active = [active[i] for i in keep]
            lam = [lam[i] for i in keep]
        x = [sum((l * pts[i][c] for l, i in zip(lam, active)), Fraction(0)) for c in range(len(x))]
