"""Discriminants of nets and pencils, Segre symbols, and the Veronese test."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import sympy

from .algebra import (
    INFINITE_MULTIPLICITY,
    MultiPoly,
    ZeroPolynomialError,
    all_exponents,
    det_poly_matrix,
    factor_multiplicity,
    squarefree_part,
)
from .net import VARIABLES, Net, Pencil, QuadraticForm

NET_VARS = ("x", "y", "z")
PENCIL_VARS = ("s", "t")

IDENTICALLY_ZERO = "identically-zero"
NON_REDUCED = "non-reduced"
REDUCED = "reduced"


class WhollySingularPencilError(ValueError):
    """Every member of the pencil is singular; the Segre symbol is undefined."""


def gram_pencil_matrix(forms: Sequence[QuadraticForm], variables: Sequence[str]) -> list[list[MultiPoly]]:
    gens = MultiPoly.gens(variables)
    return [
        [sum((g * q.gram[i][j] for g, q in zip(gens, forms)), MultiPoly(variables)) for j in range(5)]
        for i in range(5)
    ]


def discriminant_net(net: Net, canonical: bool = True) -> MultiPoly:
    """``det(x Q1 + y Q2 + z Q3)`` as a ternary quintic.

    With ``canonical`` the normalized basis is used and the result is made
    primitive; otherwise the given basis and Gram scaling are kept.
    """
    basis = net.normalized_basis().basis if canonical else net.basis
    det = det_poly_matrix(gram_pencil_matrix(basis, NET_VARS))
    return det.normalized() if canonical else det


def classify_discriminant(net: Net) -> str:
    disc = discriminant_net(net)
    if disc.is_zero():
        return IDENTICALLY_ZERO
    return REDUCED if squarefree_part(disc)[1] else NON_REDUCED


def discriminant_pencil(pencil: Pencil) -> MultiPoly:
    """``det(s Q1 + t Q2)`` in the given basis order."""
    return det_poly_matrix(gram_pencil_matrix(pencil.basis, PENCIL_VARS))


def quintic_coefficients(poly: MultiPoly) -> list[int]:
    """Primitive integer coefficients in lex order of the monomials of its degree."""
    n = len(poly.variables)
    norm = poly.normalized()
    deg = 5 if poly.is_zero() else poly.total_degree()
    return [int(norm.coefficient(e)) for e in all_exponents(n, deg)]


# ---------------------------------------------------------------------------
# Factorization of binary forms (delegated to sympy)
# ---------------------------------------------------------------------------

def _to_sympy(poly: MultiPoly):
    syms = sympy.symbols(poly.variables)
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
        for e, c in poly.terms.items()
    )
    return expr, syms


def _from_sympy(expr, variables: Sequence[str]) -> MultiPoly:
    p = sympy.Poly(expr, *sympy.symbols(variables))
    return MultiPoly(variables, {m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()})


def factor_binary_form(poly: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Irreducible factors over Q with multiplicities, each normalized."""
    if poly.is_zero():
        raise ZeroPolynomialError("cannot factor the zero form")
    expr, syms = _to_sympy(poly)
    _, factors = sympy.factor_list(expr, *syms)
    out = [(_from_sympy(f, poly.variables).normalized(), int(k)) for f, k in factors]
    return sorted((f for f in out if not f[0].is_constant()), key=lambda fk: (fk[0].total_degree(), str(fk[0])))


# ---------------------------------------------------------------------------
# Segre symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegreEntry:
    factor: MultiPoly
    blocks: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.factor.total_degree()

    @property
    def eigenvalue(self) -> Fraction | None:
        """For a linear factor ``alpha s + beta t``: ``beta / alpha`` (None at s-infinity)."""
        if self.degree != 1:
            return None
        alpha = self.factor.coefficient((1, 0))
        beta = self.factor.coefficient((0, 1))
        return beta / alpha if alpha else None

    def to_dict(self) -> dict:
        return {
            "factor_degree": self.degree,
            "factor_coefficients": [int(self.factor.coefficient(e)) for e in all_exponents(2, self.degree)],
            "factor": str(self.factor),
            "blocks": list(self.blocks),
        }


@dataclass(frozen=True)
class SegreSymbol:
    entries: tuple[SegreEntry, ...]

    def shape(self) -> tuple:
        """Block data per geometric root, sorted; rational roots only are expanded."""
        per_root = []
        for e in self.entries:
            per_root.extend([e.blocks] * e.degree)
        return tuple(sorted(per_root, key=lambda b: (-sum(b), b)))

    def blocks_by_eigenvalue(self) -> dict:
        return {e.eigenvalue: e.blocks for e in self.entries if e.degree == 1}

    def __str__(self) -> str:
        def fmt(b):
            return str(b[0]) if len(b) == 1 else "(" + ",".join(map(str, b)) + ")"
        return "[" + ",".join(fmt(b) for b in self.shape()) + "]"

    def to_dict(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]


def _min_minor_order(matrix, size: int, p: MultiPoly) -> int:
    best = None
    n = len(matrix)
    for rows in combinations(range(n), size):
        for cols in combinations(range(n), size):
            minor = det_poly_matrix([[matrix[i][j] for j in cols] for i in rows])
            k = factor_multiplicity(minor, p)
            if k == 0:
                return 0
            if k != INFINITE_MULTIPLICITY and (best is None or k < best):
                best = k
    return best if best is not None else 0


def segre_symbol(pencil: Pencil) -> SegreSymbol:
    """Segre symbol computed per irreducible rational factor of the discriminant."""
    matrix = gram_pencil_matrix(pencil.basis, PENCIL_VARS)
    disc = det_poly_matrix(matrix)
    if disc.is_zero():
        raise WhollySingularPencilError("every quadric of the pencil is singular")
    entries = []
    for p, mult in factor_binary_form(disc):
        orders = [mult]
        r = 2
        while orders[-1] > 0 and r <= 5:
            orders.append(_min_minor_order(matrix, 6 - r, p))
            r += 1
        orders.append(0)
        blocks = tuple(orders[i] - orders[i + 1] for i in range(len(orders) - 1) if orders[i] - orders[i + 1] > 0)
        entries.append(SegreEntry(p, blocks))
    return SegreSymbol(tuple(entries))


def pencil_from_segre(spec: Sequence[tuple[object, Sequence[int]]]) -> Pencil:
    """Weierstrass-form pencil ``(A, B)`` for ``[(eigenvalue, blocks), ...]``.

    A size-k block with eigenvalue l contributes the k x k anti-diagonal to A
    and l times the anti-diagonal plus the adjacent upper anti-diagonal to B,
    so the member ``s A + t B`` is singular along ``s + l t = 0``.
    """
    eigen = [Fraction(ev) for ev, _ in spec]
    if len(set(eigen)) != len(eigen):
        raise ValueError("eigenvalues must be pairwise distinct")
    sizes = [int(k) for _, blocks in spec for k in blocks]
    if any(k <= 0 for k in sizes) or sum(sizes) != 5:
        raise ValueError(f"block sizes {sizes} must be positive and sum to 5")
    A = [[Fraction(0)] * 5 for _ in range(5)]
    B = [[Fraction(0)] * 5 for _ in range(5)]
    start = 0
    for lam, (_, blocks) in zip(eigen, spec):
        for k in blocks:
            for i in range(k):
                for j in range(k):
                    if i + j == k - 1:
                        A[start + i][start + j] = Fraction(1)
                        B[start + i][start + j] = lam
                    elif i + j == k - 2:
                        B[start + i][start + j] = Fraction(1)
            start += k
    return Pencil((QuadraticForm.from_gram(A), QuadraticForm.from_gram(B)))


def pencil_root_multiplicity(pencil: Pencil, at: Sequence) -> int:
    """Multiplicity of the member ``at = (s0, t0)`` as a root of the discriminant."""
    s0, t0 = (Fraction(x) for x in at)
    if not (s0 or t0):
        raise ValueError("the zero vector is not a point of the pencil")
    disc = discriminant_pencil(pencil)
    if disc.is_zero():
        raise WhollySingularPencilError("discriminant is identically zero")
    s, t = MultiPoly.gens(PENCIL_VARS)
    return int(factor_multiplicity(disc, s * t0 - t * s0))


# ---------------------------------------------------------------------------
# Quadric sections of the projected Veronese surface
# ---------------------------------------------------------------------------

# a, b, c, d, e  ->  x^2, xy, y^2, yz, z^2
_VERONESE_IMAGES = ((2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def veronese_quadric_section_test(f: MultiPoly) -> QuadraticForm | None:
    """Quadric in a..e restricting to ``f^2`` on the projected Veronese, if any.

    The representative avoids b^2 and d^2 (which restrict like ac and ce),
    which makes it unique.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if f.total_degree() != 2 or not f.is_homogeneous():
        raise ValueError("f must be a ternary quadratic form")
    square = f * f
    coeffs = [Fraction(0)] * 15
    from .net import MONOMIAL_INDEX

    image_of: dict[tuple, int] = {}
    for i in range(5):
        for j in range(i, 5):
            if (i, j) in ((1, 1), (3, 3)):
                continue
            exp = [0] * 5
            exp[i] += 1
            exp[j] += 1
            quartic = tuple(a + b for a, b in zip(_VERONESE_IMAGES[i], _VERONESE_IMAGES[j]))
            image_of[quartic] = MONOMIAL_INDEX[tuple(exp)]
    for exp, c in square.terms.items():
        if exp not in image_of:
            return None
        coeffs[image_of[exp]] = c
    return QuadraticForm(tuple(coeffs))


def restrict_to_veronese(q: QuadraticForm) -> MultiPoly:
    """Pull a quadric in a..e back along (x^2, xy, y^2, yz, z^2)."""
    imgs = [MultiPoly(NET_VARS, {e: 1}) for e in _VERONESE_IMAGES]
    return q.to_poly().substitute(imgs)
