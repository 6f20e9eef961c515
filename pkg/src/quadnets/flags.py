"""Flag-relative instability predicates for the first four numerical types.

A coordinate system a..e fixes the flag O < L < P < H with
O = {b=c=d=e=0}, L = {c=d=e=0}, P = {d=e=0}, H = {e=0}. Containment and
singularity conditions along the flag become membership of the net's
members in coordinate subspaces of the 15-dimensional space of quadrics.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .linalg import rank as matrix_rank
from .net import MONOMIALS, CoordinateChange, Net

FLAG_CONDITIONS = ("1a", "1b", "2a", "2b", "3a", "3b", "4")
CONDITION_TYPE = {"1a": 1, "1b": 1, "2a": 2, "2b": 2, "3a": 3, "3b": 3, "4": 4}
BASIS_CONDITIONS = ("i", "ii", "iii", "iv")


def _span(predicate) -> frozenset[int]:
    return frozenset(i for i, m in enumerate(MONOMIALS) if predicate(m))


# quadrics vanishing on H, P, L (ideal of the subspace, degree 2)
E_MULTIPLES = _span(lambda m: m[4] > 0)
DE_MULTIPLES = _span(lambda m: m[3] + m[4] > 0)
CDE_MULTIPLES = _span(lambda m: m[2] + m[3] + m[4] > 0)
# quadrics singular along H, P, L, O
E_SQUARE = _span(lambda m: m[4] == 2)
DE_SQUARES = _span(lambda m: m[3] + m[4] == 2)
CDE_SQUARES = _span(lambda m: m[2] + m[3] + m[4] == 2)
A_FREE = _span(lambda m: m[0] == 0)
WITHOUT_A_SQUARED = _span(lambda m: m[0] < 2)


def intersection_dimension(net: Net, subspace: frozenset[int]) -> int:
    """dim(net meet the coordinate subspace spanned by the given monomials)."""
    outside = [[row[i] for i in range(15) if i not in subspace] for row in net.matrix]
    return 3 - matrix_rank(outside)


def _nested_dimension(net: Net, outer: frozenset[int], inner: frozenset[int]) -> tuple[int, int]:
    return intersection_dimension(net, outer), intersection_dimension(net, inner)


@dataclass(frozen=True)
class DistinguishedFlag:
    """Flag of a coordinate system, given by a coordinate change ``g``.

    Under ``Q -> Q(g v)`` the standard flag of the new coordinates sits in
    the old ones as the span of the first k columns of ``g``.
    """

    change: CoordinateChange

    def subspace(self, dimension: int) -> list[tuple]:
        """Spanning vectors (old coordinates) of O, L, P, H for dimension 0..3."""
        if not 0 <= dimension <= 3:
            raise ValueError("flag members have projective dimension 0..3")
        g = self.change.matrix
        return [tuple(g[r][c] for r in range(5)) for c in range(dimension + 1)]


@dataclass(frozen=True)
class FlagReport:
    c1a: bool
    c1b: bool
    c2a: bool
    c2b: bool
    c3a: bool
    c3b: bool
    c4: bool

    @property
    def conditions(self) -> dict[str, bool]:
        return {name: getattr(self, "c" + name) for name in FLAG_CONDITIONS}

    @property
    def destabilizing_type(self) -> int | None:
        hits = [CONDITION_TYPE[k] for k, v in self.conditions.items() if v]
        return min(hits) if hits else None

    def to_dict(self) -> dict:
        out = dict(self.conditions)
        out["destabilizing_type"] = self.destabilizing_type
        return out


def _report(net: Net) -> FlagReport:
    dim_e, dim_e2 = _nested_dimension(net, E_MULTIPLES, E_SQUARE)
    dim_de, dim_de2 = _nested_dimension(net, DE_MULTIPLES, DE_SQUARES)
    dim_cde, dim_cde2 = _nested_dimension(net, CDE_MULTIPLES, CDE_SQUARES)
    de_pencil = dim_de >= 2
    return FlagReport(
        c1a=dim_e >= 2,
        c1b=dim_e2 >= 1,
        c2a=dim_de == 3,
        # the singular member must lie in the pencil, and (d,e)^2 sits inside (d,e)V
        c2b=de_pencil and dim_de2 >= 1,
        c3a=dim_cde == 3 and dim_cde2 >= 1,
        c3b=dim_cde2 >= 2,
        c4=intersection_dimension(net, WITHOUT_A_SQUARED) == 3 and intersection_dimension(net, A_FREE) >= 2,
    )


def flag_predicates(net: Net, g: CoordinateChange | None = None) -> FlagReport:
    """Evaluate (1a)..(4) at the flag of the coordinates ``g`` (default: given ones)."""
    if g is not None:
        net = net.apply_coordinate_change(g)
    return _report(net)


def flag_scan(net: Net) -> list[tuple[tuple[int, ...], FlagReport]]:
    """Reports at the 120 coordinate-permutation flags that flag something."""
    out = []
    for perm in permutations(range(5)):
        report = flag_predicates(net, CoordinateChange.permutation(perm))
        if report.destabilizing_type is not None:
            out.append((perm, report))
    return out


def _lex_leading(form) -> int:
    return next(i for i, c in enumerate(form.coefficients) if c)


def _inside(forms: Sequence, subspace: frozenset[int]) -> bool:
    return all(all(c == 0 for i, c in enumerate(q.coefficients) if i not in subspace) for q in forms)


def normalized_basis_conditions(net: Net) -> dict:
    """Checks (i)-(iv) on the lex-normalized basis; a failure of item k certifies rho_k-instability."""
    q1, q2, q3 = net.normalized_basis().basis
    a_multiples = _span(lambda m: m[0] > 0)
    lead1, lead2 = _lex_leading(q1), _lex_leading(q2)
    holds = {
        "i": not _inside([q3], E_SQUARE),
        "ii": not _inside([q1, q2, q3], DE_MULTIPLES)
        and (not _inside([q2, q3], DE_MULTIPLES) or not _inside([q3], DE_SQUARES)),
        "iii": not _inside([q2, q3], CDE_SQUARES)
        and (not _inside([q1, q2, q3], CDE_MULTIPLES) or not _inside([q3], CDE_SQUARES)),
        "iv": MONOMIALS[lead1] == (2, 0, 0, 0, 0) or (lead1 in a_multiples and lead2 in a_multiples),
    }
    violated = [k for k, name in enumerate(BASIS_CONDITIONS, start=1) if not holds[name]]
    return {**holds, "destabilizing_type": violated[0] if violated else None}
