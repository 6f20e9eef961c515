"""Hilbert-Mumford weight calculus for nets of quadrics in P^4.

Convention: ``mu(net, rho)`` is the maximum rho-weight of a nonvanishing
Plücker coordinate, and the net is rho-semi-stable iff ``mu >= 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .linalg import nullspace, primitive_integer_vector, rank as matrix_rank, rref
from .lp import min_norm_point, solve_feasibility
from .net import MONOMIALS, Net, QuadraticForm

TWELVE_TYPES: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1, -4),
    (2, 2, 2, -3, -3),
    (3, 3, -2, -2, -2),
    (4, -1, -1, -1, -1),
    (3, 3, 3, -2, -7),
    (4, 4, -1, -1, -6),
    (9, 4, -1, -6, -6),
    (7, 2, 2, -3, -8),
    (12, 7, 2, -8, -13),
    (9, 4, -1, -1, -11),
    (14, 4, -1, -6, -11),
    (13, 8, 3, -7, -17),
)

STATUSES = ("stable", "strictly-semistable", "unstable")


@dataclass(frozen=True)
class OneParamSubgroup:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != 5:
            raise ValueError("a one-parameter subgroup of SL(5) has five weights")
        if sum(w) != 0:
            raise ValueError(f"weights {w} do not sum to zero")
        if not any(w):
            raise ValueError("the trivial subgroup has no weights")
        object.__setattr__(self, "weights", w)

    @property
    def is_normalized(self) -> bool:
        w = self.weights
        return all(w[i] >= w[i + 1] for i in range(4))

    def __neg__(self) -> "OneParamSubgroup":
        return OneParamSubgroup(tuple(-x for x in self.weights))

    def scaled(self, k: int) -> "OneParamSubgroup":
        return OneParamSubgroup(tuple(k * x for x in self.weights))

    def permuted(self, perm: Sequence[int]) -> "OneParamSubgroup":
        """Weight of variable ``perm[i]`` becomes the weight of variable ``i``."""
        return OneParamSubgroup(tuple(self.weights[p] for p in perm))

    def numerical_type(self) -> tuple[int, ...]:
        return tuple(sorted(self.weights, reverse=True))

    def type_index(self) -> int | None:
        """1-based index into :data:`TWELVE_TYPES` of the numerical type, if any."""
        t = self.numerical_type()
        g = math.gcd(*t)
        t = tuple(x // g for x in t)
        return TWELVE_TYPES.index(t) + 1 if t in TWELVE_TYPES else None


def _rho(rho) -> OneParamSubgroup:
    return rho if isinstance(rho, OneParamSubgroup) else OneParamSubgroup(tuple(rho))


def rho_type(k: int) -> OneParamSubgroup:
    return OneParamSubgroup(TWELVE_TYPES[k - 1])


@lru_cache(maxsize=None)
def distinct_permutations(weights: tuple[int, ...]) -> np.ndarray:
    return np.array(sorted(set(permutations(weights)), reverse=True), dtype=np.int64)


MONOMIAL_ARRAY = np.array(MONOMIALS, dtype=np.int64)


def monomial_weight(m, rho) -> int:
    """rho-weight of a quadratic monomial, given by index or exponent vector."""
    exp = MONOMIALS[m] if isinstance(m, int) else m
    return sum(e * w for e, w in zip(exp, _rho(rho).weights))


def monomial_weights(rho) -> list[int]:
    return [monomial_weight(i, rho) for i in range(15)]


def rho_order(rho) -> list[int]:
    """Monomial indices sorted decreasingly for the weight-then-lex order."""
    w = monomial_weights(rho)
    return sorted(range(15), key=lambda i: (-w[i], i))


def _echelon(net: Net, rho) -> tuple[list[list[Fraction]], list[int]]:
    return rref(net.matrix, rho_order(rho))


def initial_monomials(net: Net, rho) -> list[int]:
    return _echelon(net, rho)[1]


def initial_weights(net: Net, rho) -> tuple[int, int, int]:
    w = monomial_weights(rho)
    return tuple(sorted((w[i] for i in initial_monomials(net, rho)), reverse=True))


def support_weight_vectors(net: Net) -> np.ndarray:
    """Distinct state vectors (summed exponents) of the nonzero Plücker coordinates."""
    return _state_vectors(net.plucker_support)


@lru_cache(maxsize=4096)
def _state_vectors(support: frozenset) -> np.ndarray:
    vecs = {tuple(MONOMIAL_ARRAY[list(t)].sum(axis=0)) for t in support}
    return np.array(sorted(vecs, reverse=True), dtype=np.int64)


def mu(net: Net, rho) -> int:
    rho = _rho(rho)
    return int((support_weight_vectors(net) @ np.array(rho.weights)).max())


def is_semistable_for(net: Net, rho) -> bool:
    return mu(net, rho) >= 0


@dataclass
class StabilityVerdict:
    status: str
    worst_mu: int
    certificate: tuple[int, ...] | None = None
    method: str = "twelve-type"
    probabilistic: bool = False
    certificate_type: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def semistable(self) -> bool:
        return self.status != "unstable"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "worst_mu": self.worst_mu,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "method": self.method,
            "probabilistic": self.probabilistic,
        }
        if self.certificate_type is not None:
            out["certificate_type"] = self.certificate_type
        out.update(self.details)
        return out


def _status(value: int) -> str:
    return "unstable" if value < 0 else "strictly-semistable" if value == 0 else "stable"


def type_scan(net: Net, types: Iterable[int] = range(1, 13), all_permutations: bool = True):
    """Yield ``(k, min_mu, argmin_weights)`` for each numerical type ``k``."""
    vecs = support_weight_vectors(net)
    for k in types:
        perms = distinct_permutations(TWELVE_TYPES[k - 1]) if all_permutations else np.array([TWELVE_TYPES[k - 1]])
        mus = (vecs @ perms.T).max(axis=0)
        j = int(mus.argmin())
        yield k, int(mus[j]), tuple(int(x) for x in perms[j])


def twelve_type_check(net: Net, types: Iterable[int] = range(1, 13), all_permutations: bool = True,
                      refine_strict: bool = True) -> StabilityVerdict:
    """Torus-level semi-stability against the twelve numerical types.

    Instability is certified by the lowest-index type k with a permutation of
    negative weight; ``worst_mu`` and the certificate come from that type, so
    the net is semi-stable for every earlier type. The minimum over all
    scanned subgroups is kept in ``details["min_mu_all_types"]``.

    The twelve types only decide semi-stability. For semi-stable nets the
    stable vs strictly-semistable split is taken from the state polytope
    (``refine_strict``); without it the sign of the scan minimum is used.
    """
    types = list(types)
    scan = list(type_scan(net, types, all_permutations))
    global_min = min(m for _, m, _ in scan)
    details = {"min_mu_all_types": global_min}
    destabilizing = [row for row in scan if row[1] < 0]
    if destabilizing:
        k, value, cert = destabilizing[0]
        return StabilityVerdict("unstable", value, cert, "twelve-type", certificate_type=k, details=details)
    if refine_strict:
        poly = state_polytope_check(net)
        if poly.status == "unstable":
            # the twelve types are complete only when all of them are scanned
            details["polytope_disagrees"] = True
        if poly.status == "strictly-semistable":
            return StabilityVerdict("strictly-semistable", 0, poly.certificate, "twelve-type",
                                    certificate_type=poly.certificate_type, details=details)
        if poly.status == "stable":
            return StabilityVerdict("stable", global_min, None, "twelve-type", details=details)
    zero = [row for row in scan if row[1] == 0]
    if zero:
        k, value, cert = zero[0]
        return StabilityVerdict("strictly-semistable", 0, cert, "twelve-type", certificate_type=k, details=details)
    return StabilityVerdict("stable", global_min, None, "twelve-type", details=details)


# ---------------------------------------------------------------------------
# State polytope criterion
# ---------------------------------------------------------------------------

def _sum_zero_integer(y: Sequence[Fraction]) -> tuple[int, ...]:
    mean = sum(y, Fraction(0)) / len(y)
    v = [x - mean for x in y]
    return tuple(primitive_integer_vector(v))


def _orient(cert: tuple[int, ...], mu_of) -> tuple[int, ...]:
    """Prefer the non-increasing sign of a boundary direction when both signs have weight 0."""
    neg = tuple(-x for x in cert)
    if mu_of(neg) == 0 and OneParamSubgroup(neg).is_normalized and not OneParamSubgroup(cert).is_normalized:
        return neg
    return cert


def state_polytope_check(net: Net) -> StabilityVerdict:
    """Barycenter membership in the convex hull of the Plücker state vectors.

    Unstable nets get the direction from the barycenter to the nearest point
    of the hull, which is the most destabilizing torus direction; the
    simplex Farkas vector is the fallback.
    """
    vecs = [tuple(int(x) for x in v) for v in support_weight_vectors(net)]
    shifted = [[5 * x - 6 for x in v] for v in vecs]

    def mu_of(w) -> int:
        return max(sum(a * b for a, b in zip(v, w)) for v in vecs)

    # sum_i lam_i u_i = 0, sum_i lam_i = 1 ; the fifth coordinate row is implied
    A = [[u[r] for u in shifted] for r in range(4)] + [[1] * len(shifted)]
    res = solve_feasibility(A, [0, 0, 0, 0, 1])
    if not res.feasible:
        nearest = min_norm_point(shifted)
        cert = tuple(primitive_integer_vector([-x for x in nearest]))
        value = mu_of(cert)
        if not any(nearest) or value >= 0:
            cert = _sum_zero_integer(list(res.farkas[:4]) + [Fraction(0)])
            value = mu_of(cert)
        if value >= 0:
            raise ArithmeticError("Farkas certificate failed to separate")
        return StabilityVerdict("unstable", value, cert, method="polytope",
                                certificate_type=OneParamSubgroup(cert).type_index())
    if matrix_rank(shifted) < 4:
        orth = nullspace(shifted + [[1] * 5])
        cert = _orient(_sum_zero_integer(orth[0]), mu_of)
        return StabilityVerdict("strictly-semistable", mu_of(cert), cert, method="polytope",
                                certificate_type=OneParamSubgroup(cert).type_index(),
                                details={"degenerate_hull": True})
    # relative interior <=> a strictly positive convex combination exists
    total = [sum(u[r] for u in shifted) for r in range(4)]
    A2 = [[u[r] for u in shifted] for r in range(4)]
    res2 = solve_feasibility(A2, [-t for t in total])
    if not res2.feasible:
        y = list(res2.farkas) + [Fraction(0)]
        cert = _orient(_sum_zero_integer(y), mu_of)
        if mu_of(cert) != 0:
            raise ArithmeticError("boundary certificate has nonzero weight")
        return StabilityVerdict("strictly-semistable", 0, cert, method="polytope",
                                certificate_type=OneParamSubgroup(cert).type_index())
    worst = min(m for _, m, _ in type_scan(net))
    return StabilityVerdict("stable", worst, None, method="polytope")


# ---------------------------------------------------------------------------
# Stabilizers and limits
# ---------------------------------------------------------------------------

def weight_components(q: QuadraticForm, rho) -> dict[int, QuadraticForm]:
    w = monomial_weights(rho)
    parts: dict[int, list[Fraction]] = {}
    for i, c in enumerate(q.coefficients):
        if c:
            parts.setdefault(w[i], [Fraction(0)] * 15)[i] = c
    return {k: QuadraticForm(tuple(v)) for k, v in parts.items()}


def stabilizing_subgroup_check(net: Net, rho) -> bool:
    """True iff the net is spanned by rho-weight-homogeneous quadrics."""
    pieces = [list(p.coefficients) for q in net.basis for p in weight_components(q, rho).values()]
    return matrix_rank(pieces) == 3


def one_param_limit(net: Net, rho, direction: str = "to-infinity") -> Net:
    """Limit of ``rho(t) . net`` as t tends to infinity or zero.

    Acting on variables, a monomial of weight w scales as t^w, so the
    limit at infinity keeps the top-weight part of each echelon row.
    """
    rho = _rho(rho)
    if direction == "to-zero":
        rho = -rho
    elif direction != "to-infinity":
        raise ValueError(f"unknown direction {direction!r}")
    rows, _ = _echelon(net, rho)
    w = monomial_weights(rho)
    out = []
    for row in rows:
        top = max(w[i] for i, c in enumerate(row) if c)
        out.append(QuadraticForm(tuple(c if w[i] == top else 0 for i, c in enumerate(row))))
    return Net(out)
