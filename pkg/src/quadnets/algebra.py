"""Exact rational arithmetic on sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction`. A :class:`MultiPoly` stores a
map from exponent tuples to nonzero coefficients over a fixed, ordered list
of variable names. The first variable is the most significant one for the
lexicographic order, so ``max(terms)`` is the lex-leading exponent.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Mapping, Sequence

Rational = Fraction

#: returned by :func:`factor_multiplicity` when the polynomial is zero
INFINITE_MULTIPLICITY = math.inf


class DimensionError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    """Raised where an identically zero polynomial has no meaningful answer."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise DimensionError(f"exponent {exp} does not match {n} variables")
            c = as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], value=1) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(v, variables) for v in variables]

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise DimensionError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    # -- basic protocol ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            if not c:
                return MultiPoly(self.variables)
            return MultiPoly(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        c = as_fraction(other)
        return MultiPoly(self.variables, {e: v / c for e, v in self.terms.items()})

    # -- structure --------------------------------------------------------
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_exponent(self) -> tuple:
        return max(self.terms)

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms)]

    def coefficient(self, exp: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return MultiPoly(self.variables, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [as_fraction(p) for p in point]
        for e, c in self.terms.items():
            term = c
            for p, k in zip(pt, e):
                if k:
                    term *= p ** k
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable ``i`` by ``images[i]`` (all images share one ring)."""
        if len(images) != len(self.variables):
            raise DimensionError("one image per variable required")
        target = images[0].variables
        result = MultiPoly(target)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[i, k] = images[i] ** k
                    term = term * powers[i, k]
            result = result + term
        return result

    # -- division ---------------------------------------------------------
    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Lex-order multivariate division by a single divisor."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lt = divisor.leading_exponent()
        lc = divisor.terms[lt]
        rem = dict(self.terms)
        quot: dict[tuple, Fraction] = {}
        out_rem: dict[tuple, Fraction] = {}
        while rem:
            exp = max(rem)
            c = rem[exp]
            if all(a >= b for a, b in zip(exp, lt)):
                shift = tuple(a - b for a, b in zip(exp, lt))
                q = c / lc
                quot[shift] = quot.get(shift, 0) + q
                for e2, c2 in divisor.terms.items():
                    t = tuple(a + b for a, b in zip(e2, shift))
                    v = rem.get(t, 0) - q * c2
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
            else:
                out_rem[exp] = c
                del rem[exp]
        return MultiPoly(self.variables, quot), MultiPoly(self.variables, out_rem)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        return not other.divmod(self)[1]

    # -- normalization ----------------------------------------------------
    def normalized(self) -> "MultiPoly":
        """Primitive integer coefficients with positive lex-leading coefficient."""
        if not self.terms:
            return self
        den = reduce(math.lcm, (c.denominator for c in self.terms.values()), 1)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = reduce(math.gcd, ints.values(), 0)
        if ints[max(ints)] < 0:
            g = -g
        return MultiPoly(self.variables, {e: Fraction(v, g) for e, v in ints.items()})

    def is_proportional(self, other: "MultiPoly") -> bool:
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized() == other.normalized()

    def integer_coefficients(self) -> dict[tuple, int]:
        n = self.normalized()
        return {e: int(c) for e, c in n.terms.items()}


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------

def det_poly_matrix(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix by fraction-free Bareiss."""
    n = len(matrix)
    if n == 0:
        raise DimensionError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise DimensionError("matrix is not square")
    variables = matrix[0][0].variables
    a = [list(row) for row in matrix]
    sign = 1
    prev = MultiPoly.constant(variables, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly(variables)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if not num.is_zero() else num
            a[i][k] = MultiPoly(variables)
        prev = pivot
    return a[n - 1][n - 1] * sign


def det_fraction_matrix(matrix: Sequence[Sequence]) -> Fraction:
    """Scalar determinant by Gaussian elimination over the rationals."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("matrix is not square")
    a = [[as_fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


# ---------------------------------------------------------------------------
# GCD machinery: recursive content / primitive part with primitive PRS
# ---------------------------------------------------------------------------

def _coefficients_in(f: MultiPoly, k: int) -> dict[int, MultiPoly]:
    """View ``f`` as univariate in variable ``k``; coefficients keep the ring."""
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        rest = e[:k] + (0,) + e[k + 1:]
        out.setdefault(e[k], {})[rest] = c
    return {d: MultiPoly(f.variables, t) for d, t in out.items()}


def _monomial(variables, k: int, power: int) -> MultiPoly:
    exp = [0] * len(variables)
    exp[k] = power
    return MultiPoly(variables, {tuple(exp): 1})


def _content(f: MultiPoly, k: int) -> MultiPoly:
    coeffs = list(_coefficients_in(f, k).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = _gcd(g, c, k + 1)
        if g.is_constant():
            break
    return g


def _prem(a: MultiPoly, b: MultiPoly, k: int) -> MultiPoly:
    db = b.degree_in(k)
    lb = _coefficients_in(b, k)[db]
    r = a
    while not r.is_zero() and r.degree_in(k) >= db:
        dr = r.degree_in(k)
        lr = _coefficients_in(r, k)[dr]
        r = lb * r - lr * _monomial(r.variables, k, dr - db) * b
    return r


def _gcd(f: MultiPoly, g: MultiPoly, k: int) -> MultiPoly:
    variables = f.variables
    if f.is_zero():
        return g.normalized() if not g.is_zero() else g
    if g.is_zero():
        return f.normalized()
    if k >= len(variables) or (f.is_constant() or g.is_constant()):
        return MultiPoly.constant(variables, 1)
    if f.degree_in(k) == 0 and g.degree_in(k) == 0:
        return _gcd(f, g, k + 1)
    if f.degree_in(k) == 0:
        return _gcd(f, _content(g, k), k + 1)
    if g.degree_in(k) == 0:
        return _gcd(_content(f, k), g, k + 1)
    cf, cg = _content(f, k), _content(g, k)
    c = _gcd(cf, cg, k + 1)
    # scalar factors do not change a gcd; dropping them keeps coefficients small
    a, b = f.exact_div(cf).normalized(), g.exact_div(cg).normalized()
    if a.degree_in(k) < b.degree_in(k):
        a, b = b, a
    while True:
        r = _prem(a, b, k)
        if r.is_zero():
            prim = b.exact_div(_content(b, k))
            break
        if r.degree_in(k) == 0:
            prim = MultiPoly.constant(variables, 1)
            break
        a, b = b, r.exact_div(_content(r, k)).normalized()
    return (c * prim).normalized()


def multivariate_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Normalized greatest common divisor of two polynomials over Q."""
    g = f._coerce(g)
    if f.is_zero() and g.is_zero():
        return f
    return _gcd(f, g, 0)


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = list(polys)
    g = polys[0]
    for p in polys[1:]:
        g = multivariate_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return g.normalized()
    return g.normalized() if not g.is_zero() else g


def squarefree_part(f: MultiPoly) -> tuple[MultiPoly, bool]:
    """Return ``(f / gcd(f, grad f), is_squarefree)``.

    Raises :class:`ZeroPolynomialError` for the zero polynomial.
    """
    if f.is_zero():
        raise ZeroPolynomialError("identically zero polynomial")
    if f.is_constant():
        return f.normalized(), True
    partials = [f.derivative(i) for i in range(len(f.variables))]
    g = gcd_many([f] + [p for p in partials if not p.is_zero()])
    return f.exact_div(g).normalized(), g.is_constant()


def factor_multiplicity(f: MultiPoly, p: MultiPoly) -> int | float:
    """Largest ``k`` with ``p**k`` dividing ``f`` (``inf`` when ``f == 0``)."""
    p = f._coerce(p)
    if p.is_constant():
        raise ValueError("multiplicity of a constant divisor is undefined")
    if f.is_zero():
        return INFINITE_MULTIPLICITY
    k = 0
    q, r = f.divmod(p)
    while r.is_zero():
        k += 1
        f = q
        q, r = f.divmod(p)
    return k


def poly_matrix_minors(matrix: Sequence[Sequence[MultiPoly]], size: int):
    """Yield every ``size``x``size`` minor determinant of ``matrix``."""
    from itertools import combinations

    n, m = len(matrix), len(matrix[0])
    for rows in combinations(range(n), size):
        for cols in combinations(range(m), size):
            yield det_poly_matrix([[matrix[i][j] for j in cols] for i in rows])


def all_exponents(nvars: int, degree: int) -> list[tuple]:
    """Exponent tuples of total degree ``degree``, lex-decreasing."""
    exps = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(exps, reverse=True)
