"""Quadrics in the variables a, b, c, d, e and nets spanned by them.

A quadric is stored as 15 rational coefficients in the fixed lex order
a^2, ab, ac, ad, ae, b^2, bc, bd, be, c^2, cd, ce, d^2, de, e^2. The Gram
matrix halves the mixed coefficients.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import MultiPoly, all_exponents, as_fraction, det_fraction_matrix
from .linalg import inverse, matmul, nullspace, primitive_integer_vector, rank as matrix_rank, rref

VARIABLES = ("a", "b", "c", "d", "e")
MONOMIALS: tuple[tuple[int, ...], ...] = tuple(all_exponents(5, 2))
MONOMIAL_INDEX = {m: i for i, m in enumerate(MONOMIALS)}
MONOMIAL_NAMES = tuple(
    "".join(v * k for v, k in zip(VARIABLES, m)).replace("aa", "a^2").replace("bb", "b^2")
    .replace("cc", "c^2").replace("dd", "d^2").replace("ee", "e^2")
    for m in MONOMIALS
)
# (i, j) -> monomial index of x_i x_j
PAIR_INDEX = {}
for _i in range(5):
    for _j in range(5):
        _e = [0] * 5
        _e[_i] += 1
        _e[_j] += 1
        PAIR_INDEX[_i, _j] = MONOMIAL_INDEX[tuple(_e)]


class InvalidNetError(ValueError):
    """Raised when basis quadrics are linearly dependent."""


class VertexUndefinedError(ValueError):
    def __init__(self, rank: int):
        super().__init__(f"vertex is only defined for rank 4 quadrics (rank={rank})")
        self.rank = rank


def monomial_index(exponent: Sequence[int]) -> int:
    return MONOMIAL_INDEX[tuple(exponent)]


def canonical_point(v: Sequence) -> tuple[int, ...]:
    """Primitive integer representative with positive first nonzero entry."""
    ints = primitive_integer_vector(v)
    if not any(ints):
        raise ValueError("the zero vector is not a projective point")
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class QuadraticForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_fraction(c) for c in self.coefficients)
        if len(coeffs) != 15:
            raise ValueError("a quadric in five variables has 15 coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "QuadraticForm":
        if poly.variables != VARIABLES:
            raise ValueError(f"expected variables {VARIABLES}")
        coeffs = [Fraction(0)] * 15
        for exp, c in poly.terms.items():
            if sum(exp) != 2:
                raise ValueError(f"term of degree {sum(exp)} in a quadric")
            coeffs[MONOMIAL_INDEX[exp]] = c
        return cls(tuple(coeffs))

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> "QuadraticForm":
        g = [[as_fraction(x) for x in row] for row in gram]
        coeffs = [Fraction(0)] * 15
        for i in range(5):
            for j in range(i, 5):
                coeffs[PAIR_INDEX[i, j]] += g[i][j] if i == j else g[i][j] + g[j][i]
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, name: str) -> "QuadraticForm":
        coeffs = [0] * 15
        coeffs[MONOMIAL_NAMES.index(name)] = 1
        return cls(tuple(coeffs))

    def to_poly(self) -> MultiPoly:
        return MultiPoly(VARIABLES, dict(zip(MONOMIALS, self.coefficients)))

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        g = [[Fraction(0)] * 5 for _ in range(5)]
        for i in range(5):
            for j in range(5):
                c = self.coefficients[PAIR_INDEX[i, j]]
                g[i][j] = c if i == j else c / 2
        return tuple(tuple(row) for row in g)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        return QuadraticForm(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "QuadraticForm") -> "QuadraticForm":
        return QuadraticForm(tuple(x - y for x, y in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(tuple(-x for x in self.coefficients))

    def __mul__(self, scalar) -> "QuadraticForm":
        s = as_fraction(scalar)
        return QuadraticForm(tuple(x * s for x in self.coefficients))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.to_poly()).replace("*", "")

    def rank(self) -> int:
        return matrix_rank(self.gram)

    def vertex(self) -> tuple[int, ...]:
        r = self.rank()
        if r != 4:
            raise VertexUndefinedError(r)
        (kernel,) = nullspace(self.gram)
        return canonical_point(kernel)

    def evaluate(self, point: Sequence) -> Fraction:
        p = [as_fraction(x) for x in point]
        if not any(p):
            raise ValueError("the zero vector is not a projective point")
        total = Fraction(0)
        for c, m in zip(self.coefficients, MONOMIALS):
            if c:
                term = c
                for x, k in zip(p, m):
                    if k:
                        term *= x ** k
                total += term
        return total

    def vanishes_at(self, point: Sequence) -> bool:
        return self.evaluate(point) == 0

    def transform(self, matrix: Sequence[Sequence[Fraction]]) -> "QuadraticForm":
        """The quadric ``v -> Q(g v)``; its Gram matrix is ``g^T G g``."""
        gt = [list(col) for col in zip(*matrix)]
        return QuadraticForm.from_gram(matmul(matmul(gt, self.gram), matrix))


def _as_form(q) -> QuadraticForm:
    if isinstance(q, QuadraticForm):
        return q
    if isinstance(q, MultiPoly):
        return QuadraticForm.from_poly(q)
    return QuadraticForm(tuple(q))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    return [primitive_integer_vector(r) for r in rows]


class _Span:
    """Common behaviour of nets and pencils: a subspace of quadrics."""

    dimension = 0

    def __init__(self, basis: Iterable):
        forms = tuple(_as_form(q) for q in basis)
        if len(forms) != self.dimension:
            raise InvalidNetError(f"expected {self.dimension} quadrics, got {len(forms)}")
        if matrix_rank([q.coefficients for q in forms]) != self.dimension:
            raise InvalidNetError(
                f"basis quadrics span less than a {self.dimension}-dimensional space"
            )
        self.basis = forms

    @property
    def matrix(self) -> list[list[Fraction]]:
        return [list(q.coefficients) for q in self.basis]

    @cached_property
    def _rref(self):
        return rref(self.matrix)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._rref == other._rref

    def __hash__(self) -> int:
        return hash(tuple(tuple(r) for r in self._rref[0]))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(q) for q in self.basis)})"

    def __str__(self) -> str:
        return ", ".join(str(q) for q in self.basis)

    def contains(self, q: QuadraticForm) -> bool:
        return matrix_rank(self.matrix + [list(q.coefficients)]) == self.dimension

    def normalized_basis(self):
        rows, _ = self._rref
        return type(self)(QuadraticForm(tuple(r)) for r in rows)

    def apply_coordinate_change(self, g: "CoordinateChange"):
        return type(self)(q.transform(g.matrix) for q in self.basis)

    def to_json(self) -> dict:
        """``{"quadrics": [[15 rationals as strings], ...]}`` in the fixed monomial order."""
        return {"quadrics": [[str(c) for c in q.coefficients] for q in self.basis]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data["quadrics"]
        return cls(QuadraticForm(tuple(Fraction(x) for x in row)) for row in data)


class Net(_Span):
    """A three-dimensional linear system of quadrics, up to change of basis."""

    dimension = 3

    @cached_property
    def integer_matrix(self) -> list[list[int]]:
        return _integer_rows(self._rref[0])

    @cached_property
    def plucker_support(self) -> frozenset[tuple[int, int, int]]:
        """Monomial index triples whose Plücker coordinate is nonzero."""
        m = self.integer_matrix
        nonzero = [j for j in range(15) if any(row[j] for row in m)]
        out = []
        r0, r1, r2 = m
        for i, j, k in combinations(nonzero, 3):
            det = (
                r0[i] * (r1[j] * r2[k] - r1[k] * r2[j])
                - r0[j] * (r1[i] * r2[k] - r1[k] * r2[i])
                + r0[k] * (r1[i] * r2[j] - r1[j] * r2[i])
            )
            if det:
                out.append((i, j, k))
        return frozenset(out)

    def plucker_coordinates(self) -> dict[tuple[int, int, int], Fraction]:
        """Nonzero 3x3 minors of the coefficient matrix in the current basis."""
        m = self.matrix
        return {
            t: det_fraction_matrix([[row[j] for j in t] for row in m])
            for t in self.plucker_support
        }

    def pencil(self, i: int = 0, j: int = 1) -> "Pencil":
        return Pencil((self.basis[i], self.basis[j]))


class Pencil(_Span):
    """A two-dimensional linear system of quadrics."""

    dimension = 2


@dataclass(frozen=True)
class CoordinateChange:
    """Invertible 5x5 matrix ``g``; a quadric ``Q`` is sent to ``Q(g v)``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(as_fraction(x) for x in row) for row in self.matrix)
        if len(m) != 5 or any(len(r) != 5 for r in m):
            raise ValueError("coordinate change must be 5x5")
        if det_fraction_matrix(m) == 0:
            raise ValueError("coordinate change is singular")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "CoordinateChange":
        return cls(tuple(tuple(int(i == j) for j in range(5)) for i in range(5)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "CoordinateChange":
        """Variable ``i`` is replaced by variable ``perm[i]``."""
        return cls(tuple(tuple(int(perm[i] == j) for j in range(5)) for i in range(5)))

    @classmethod
    def from_substitution(cls, images: Sequence[str | MultiPoly]) -> "CoordinateChange":
        """Build from the linear forms substituted for a, b, c, d, e."""
        rows = []
        for img in images:
            if isinstance(img, str):
                from .parser import parse_polynomial

                img = parse_polynomial(img)
            if img.total_degree() > 1:
                raise ValueError("substitution must be linear")
            row = [Fraction(0)] * 5
            for exp, c in img.terms.items():
                if sum(exp) != 1:
                    raise ValueError("substitution must be linear homogeneous")
                row[exp.index(1)] = c
            rows.append(tuple(row))
        return cls(tuple(rows))

    def inverse(self) -> "CoordinateChange":
        return CoordinateChange(tuple(tuple(r) for r in inverse(self.matrix)))


def rank(q: QuadraticForm) -> int:
    return q.rank()


def vertex(q: QuadraticForm) -> tuple[int, ...]:
    return q.vertex()


def evaluate(q: QuadraticForm, point: Sequence) -> Fraction:
    return q.evaluate(point)


def normalized_basis(n: Net) -> Net:
    return n.normalized_basis()


def plucker_support(n: Net) -> frozenset[tuple[int, int, int]]:
    return n.plucker_support


def apply_coordinate_change(n, g: CoordinateChange):
    return n.apply_coordinate_change(g)
