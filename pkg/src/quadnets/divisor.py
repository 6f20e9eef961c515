"""Divisor classes in the basis (lambda, delta_0, delta_1, delta_2).

A class ``a lambda - b delta_0 - c delta_1 - d delta_2`` is stored by its
coefficient vector ``(a, -b, -c, -d)``. Test curves are stored by their
intersection numbers with the four basis classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import nullspace, primitive_integer_vector

BASIS = ("lambda", "delta_0", "delta_1", "delta_2")

# canonical class convention used by the log-canonical checks
CANONICAL_CONVENTION = "K = 13 lambda - 2 delta"


class NullspaceDimensionError(ValueError):
    def __init__(self, dimension: int):
        kind = "underdetermined" if dimension > 1 else "overdetermined"
        super().__init__(f"{kind}: intersection rows have a {dimension}-dimensional nullspace, expected 1")
        self.dimension = dimension


@dataclass(frozen=True)
class DivisorClass:
    coefficients: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coefficients)
        if len(c) != 4:
            raise ValueError("a divisor class has four coefficients")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def of(cls, *coefficients) -> "DivisorClass":
        return cls(tuple(coefficients))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __rmul__(self, k) -> "DivisorClass":
        return DivisorClass(tuple(Fraction(k) * x for x in self.coefficients))

    def dot(self, family: "TestFamily") -> Fraction:
        return sum((x * y for x, y in zip(self.coefficients, family.intersections)), Fraction(0))

    def is_proportional(self, other: "DivisorClass") -> bool:
        u, v = self.coefficients, other.coefficients
        if not any(u) or not any(v):
            return not any(u) and not any(v)
        return all(u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(4))

    def contracted_form(self) -> tuple[Fraction, ...]:
        """(a, b, c, d) for ``a lambda - b delta_0 - c delta_1 - d delta_2``."""
        a, b, c, d = self.coefficients
        return (a, -b, -c, -d)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coefficients]

    def __str__(self) -> str:
        parts = []
        for x, name in zip(self.coefficients, BASIS):
            if x:
                parts.append(f"{'-' if x < 0 else '+'} {abs(x)} {name}")
        text = " ".join(parts) or "0"
        return text[2:] if text.startswith("+ ") else text


LAMBDA = DivisorClass.of(1, 0, 0, 0)
DELTA = DivisorClass.of(0, 1, 1, 1)
CANONICAL = 13 * LAMBDA - 2 * DELTA


@dataclass(frozen=True)
class TestFamily:
    name: str
    intersections: tuple[int, int, int, int]


STANDARD_FAMILIES = (
    TestFamily("T1", (1, 12, -1, 0)),
    TestFamily("T2", (3, 30, 0, -1)),
    TestFamily("T3", (4, 33, 0, 0)),
)


def solve_contracted_class(families: Sequence[TestFamily | Sequence[int]]) -> tuple[int, int, int, int]:
    """Primitive (a, b, c, d) with ``a lambda - b delta_0 - c delta_1 - d delta_2`` killing every family.

    Normalized so that a > 0 (or the first nonzero entry is positive).
    """
    rows = [list(f.intersections) if isinstance(f, TestFamily) else list(f) for f in families]
    if not rows:
        raise NullspaceDimensionError(4)
    kernel = nullspace(rows)
    if len(kernel) != 1:
        raise NullspaceDimensionError(len(kernel))
    a, nb, nc, nd = primitive_integer_vector(kernel[0])
    out = (a, -nb, -nc, -nd)
    first = next(x for x in out if x)
    return tuple(x if first > 0 else -x for x in out)


@dataclass
class IdentityCheck:
    name: str
    left: DivisorClass
    right: DivisorClass

    @property
    def holds(self) -> bool:
        return self.left == self.right

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds,
                "left": [str(x) for x in self.left.coefficients],
                "right": [str(x) for x in self.right.coefficients]}


def log_canonical_identity(scale: int, delta_coefficient: Fraction, base: Sequence[int],
                           correction: Sequence[int], factor: int = 13) -> tuple[DivisorClass, DivisorClass]:
    """``scale (K + t delta)`` against ``factor (base + correction)``."""
    left = scale * (CANONICAL + Fraction(delta_coefficient) * DELTA)
    right = factor * (DivisorClass(tuple(base)) + DivisorClass(tuple(correction)))
    return left, right


def check_log_canonical_identities(first_delta: Fraction = Fraction(14, 33),
                                   second_delta: Fraction = Fraction(3, 8)) -> dict:
    checks = [
        IdentityCheck("K + 14/33 delta", *log_canonical_identity(33, first_delta, (33, -4, -15, -21), (0, 0, 11, 17))),
        IdentityCheck("K + 3/8 delta", *log_canonical_identity(8, second_delta, (8, -1, -4, -6), (0, 0, 3, 5))),
    ]
    return {
        "convention": CANONICAL_CONVENTION,
        "identities": [c.to_dict() for c in checks],
        "all_hold": all(c.holds for c in checks),
    }


def divisor_report() -> dict:
    solved = solve_contracted_class(STANDARD_FAMILIES)
    a, b, c, d = solved
    return {
        "families": {f.name: list(f.intersections) for f in STANDARD_FAMILIES},
        "contracted_class": list(solved),
        "contracted_class_text": f"{a} lambda - {b} delta_0 - {c} delta_1 - {d} delta_2",
        "log_canonical": check_log_canonical_identities(),
    }
