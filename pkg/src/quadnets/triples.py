"""Initial-weight triples of unstable strata for the types rho_5 ... rho_12.

For a normalized subgroup with weights (a, b, c, d, e), a triple
w1 >= w2 >= w3 of initial weights of a destabilized net that is already
semi-stable for rho_1 ... rho_4 must satisfy

  (C1) d != e  =>  w3 > 2e
  (C2) w1 >= 2c, and w2 < 2c  =>  w3 >= c + e
  (C3) w2 >= b + e, and w1 < 2b  =>  w2 >= a + e and w3 >= b + e
  (C4) w1 != 2a  =>  w1 >= a + d and w2 >= a + e

Cross-elimination against the earlier types is done on random generic
members of each stratum, so its output is probabilistic.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .linalg import inverse, rank as matrix_rank
from .net import PAIR_INDEX, CoordinateChange, InvalidNetError, Net, QuadraticForm
from .stability import (OneParamSubgroup, TWELVE_TYPES, _echelon, _rho, initial_weights,
                        monomial_weights, twelve_type_check)

WeightTriple = tuple[int, int, int]


class UnachievableTripleError(ValueError):
    pass


@dataclass
class RefinedTriples:
    k: int
    triples: list[WeightTriple]
    eliminated: dict[WeightTriple, int]
    seeds: int
    probabilistic: bool = True

    def to_dict(self) -> dict:
        return {
            "type": self.k,
            "weights": list(TWELVE_TYPES[self.k - 1]),
            "triples": [list(t) for t in self.triples],
            "eliminated": {",".join(map(str, t)): j for t, j in self.eliminated.items()},
            "seeds": self.seeds,
            "probabilistic": self.probabilistic,
        }


def achievable_weights(rho) -> list[int]:
    return sorted(set(monomial_weights(rho)), reverse=True)


def _realizable(rho, triple: Sequence[int]) -> bool:
    """Distinct monomials can carry the weights of ``triple``."""
    available = Counter(monomial_weights(rho))
    need = Counter(triple)
    return all(available[w] >= k for w, k in need.items())


def satisfies_conditions(rho, triple: Sequence[int]) -> bool:
    a, b, c, d, e = _rho(rho).weights
    w1, w2, w3 = triple
    if d != e and not w3 > 2 * e:
        return False
    if w1 < 2 * c or (w2 < 2 * c and w3 < c + e):
        return False
    if w2 < b + e or (w1 < 2 * b and (w2 < a + e or w3 < b + e)):
        return False
    if w1 != 2 * a and (w1 < a + d or w2 < a + e):
        return False
    return True


def enumerate_candidate_triples(rho) -> list[WeightTriple]:
    """Negative-sum triples of achievable weights passing (C1)-(C4)."""
    rho = _rho(rho)
    if not rho.is_normalized:
        raise ValueError(f"{rho.weights} is not normalized (weights must be non-increasing)")
    weights = achievable_weights(rho)
    out = []
    for t in combinations_with_replacement(weights, 3):
        t = tuple(sorted(t, reverse=True))
        if sum(t) < 0 and _realizable(rho, t) and satisfies_conditions(rho, t):
            out.append(t)
    return sorted(out, reverse=True)


def generic_stratum_net(rho, triple: Sequence[int], seed: int, coefficient_range: int = 9, max_tries: int = 200) -> Net:
    """Random net whose rho-initial weights are ``triple``.

    Generator i combines every monomial of weight <= w_i with random
    nonzero integers; draws repeat until the initial weights check out.
    """
    rho = _rho(rho)
    triple = tuple(sorted((int(x) for x in triple), reverse=True))
    if not _realizable(rho, triple):
        raise UnachievableTripleError(f"{triple} is not achievable for {rho.weights}")
    w = monomial_weights(rho)
    rng = random.Random(seed)
    values = [x for x in range(-coefficient_range, coefficient_range + 1) if x]
    for _ in range(max_tries):
        forms = []
        for wi in triple:
            forms.append(QuadraticForm(tuple(Fraction(rng.choice(values)) if w[i] <= wi else Fraction(0) for i in range(15))))
        try:
            net = Net(forms)
        except InvalidNetError:
            continue
        if initial_weights(net, rho) == triple:
            return net
    raise UnachievableTripleError(f"no net with initial weights {triple} found in {max_tries} draws")


def weight_blocks(rho) -> list[list[int]]:
    """Groups (size >= 2) of variables sharing one weight."""
    w = _rho(rho).weights
    groups: dict[int, list[int]] = {}
    for i, x in enumerate(w):
        groups.setdefault(x, []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def levi_adapted_coordinates(net: Net, rho, bottom_up: bool = True) -> CoordinateChange | None:
    """Coordinate change inside the equal-weight blocks of ``rho``.

    The linear dependence of each echelon row's top-weight part on a block
    is read off as vectors in the block's dual space; the first independent
    ones become the new block coordinates, in lex order. Such changes fix
    the weight filtration, so the net keeps its initial weights.
    """
    blocks = weight_blocks(rho)
    if not blocks:
        return None
    rows, pivots = _echelon(net, rho)
    w = monomial_weights(rho)
    order = list(range(len(rows)))[::-1] if bottom_up else list(range(len(rows)))
    g = [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
    for block in blocks:
        vectors = []
        for r in order:
            row = rows[r]
            top = max(w[i] for i, c in enumerate(row) if c)
            for y in range(5):
                if y in block:
                    continue
                v = [row[PAIR_INDEX[y, x]] if w[PAIR_INDEX[y, x]] == top else Fraction(0) for x in block]
                if any(v) and matrix_rank(vectors + [v]) > len(vectors):
                    vectors.append(v)
        for e in range(len(block)):
            unit = [Fraction(int(i == e)) for i in range(len(block))]
            if len(vectors) < len(block) and matrix_rank(vectors + [unit]) > len(vectors):
                vectors.append(unit)
        # new block coordinates x' = N x ; substitute old x = N^-1 x'
        n_inv = inverse(vectors)
        for bi, i in enumerate(block):
            for bj, j in enumerate(block):
                g[i][j] = n_inv[bi][bj]
    change = CoordinateChange(tuple(tuple(r) for r in g))
    return None if change == CoordinateChange.identity() else change


def destabilizing_earlier_type(net: Net, k: int, rho=None) -> int | None:
    """Lowest j < k such that some permutation of rho_j destabilizes ``net``.

    Besides the given coordinates, the test is repeated in the
    block-adapted coordinates of ``rho`` when supplied; instability in any
    coordinate system is a valid certificate.
    """
    if k <= 1:
        return None
    candidates = [net]
    if rho is not None:
        for bottom_up in (True, False):
            g = levi_adapted_coordinates(net, rho, bottom_up)
            if g is not None:
                candidates.append(net.apply_coordinate_change(g))
    found = []
    for n in candidates:
        verdict = twelve_type_check(n, types=range(1, k), refine_strict=False)
        if verdict.status == "unstable":
            found.append(verdict.certificate_type)
    return min(found) if found else None


def refine_triples_by_cross_elimination(k: int, candidates: Sequence[WeightTriple] | None = None,
                                        seeds: Sequence[int] | int = 8) -> RefinedTriples:
    """Drop candidate triples whose generic nets an earlier type destabilizes."""
    if not 5 <= k <= 12:
        raise ValueError("cross-elimination is defined for types 5..12")
    rho = OneParamSubgroup(TWELVE_TYPES[k - 1])
    if candidates is None:
        candidates = enumerate_candidate_triples(rho)
    seed_list = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
    kept, eliminated = [], {}
    for t in candidates:
        killers = []
        for s in seed_list:
            j = destabilizing_earlier_type(generic_stratum_net(rho, t, seed=1000 * k + s), k, rho)
            killers.append(j)
            if j is None:
                break
        if killers and all(j is not None for j in killers):
            eliminated[tuple(t)] = min(killers)
        else:
            kept.append(tuple(t))
    return RefinedTriples(k, kept, eliminated, len(seed_list))
