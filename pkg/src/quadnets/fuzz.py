"""Seeded random nets and the twelve-type vs polytope agreement harness."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .net import CoordinateChange, InvalidNetError, Net, QuadraticForm
from .stability import TWELVE_TYPES, state_polytope_check, twelve_type_check
from .triples import enumerate_candidate_triples, generic_stratum_net

MIXES = ("dense", "sparse", "strata")


def _rng(seed: int, index: int) -> random.Random:
    # string seeds hash deterministically across processes and platforms
    return random.Random(f"{seed}:{index}")


def dense_net(rng: random.Random) -> Net:
    while True:
        try:
            return Net([QuadraticForm(tuple(Fraction(rng.randint(-9, 9)) for _ in range(15))) for _ in range(3)])
        except InvalidNetError:
            continue


def sparse_net(rng: random.Random) -> Net:
    """Each quadric has 5 to 8 nonzero coefficients in [-9, 9]."""
    values = [v for v in range(-9, 10) if v]
    while True:
        forms = []
        for _ in range(3):
            support = rng.sample(range(15), rng.randint(5, 8))
            forms.append(QuadraticForm(tuple(Fraction(rng.choice(values)) if i in support else Fraction(0)
                                             for i in range(15))))
        try:
            return Net(forms)
        except InvalidNetError:
            continue


@lru_cache(maxsize=None)
def _candidates(k: int):
    return tuple(enumerate_candidate_triples(TWELVE_TYPES[k - 1]))


def strata_net(rng: random.Random) -> Net:
    """Generic member of a random unstable stratum, in randomly permuted coordinates."""
    k = rng.randint(5, 12)
    triple = rng.choice(_candidates(k))
    net = generic_stratum_net(TWELVE_TYPES[k - 1], triple, seed=rng.randrange(2 ** 31))
    perm = list(range(5))
    rng.shuffle(perm)
    return net.apply_coordinate_change(CoordinateChange.permutation(perm))


SAMPLERS = {"dense": dense_net, "sparse": sparse_net, "strata": strata_net}


def sample_net(seed: int, index: int, mix: Sequence[str] = MIXES) -> tuple[str, Net]:
    kind = mix[index % len(mix)]
    return kind, SAMPLERS[kind](_rng(seed, index))


def compare_criteria(net: Net) -> dict:
    torus = twelve_type_check(net, refine_strict=False)
    poly = state_polytope_check(net)
    return {
        "twelve_type": torus.status,
        "polytope": poly.status,
        "agree": torus.semistable == poly.semistable,
        # stable vs strictly-semistable from the scan sign alone, against the polytope interior
        "status_agree": torus.status == poly.status,
    }


def _run_one(args) -> dict:
    seed, index, mix = args
    kind, net = sample_net(seed, index, mix)
    out = compare_criteria(net)
    out.update(index=index, kind=kind)
    return out


def fuzz(count: int, seed: int, mix: Sequence[str] = MIXES, workers: int = 1) -> dict:
    unknown = [m for m in mix if m not in SAMPLERS]
    if unknown or not mix:
        raise ValueError(f"unknown mix {unknown}; choose from {', '.join(MIXES)}")
    jobs = [(seed, i, tuple(mix)) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(j) for j in jobs]
    by_kind: dict[str, dict[str, int]] = {}
    for r in results:
        bucket = by_kind.setdefault(r["kind"], {"count": 0, "unstable": 0})
        bucket["count"] += 1
        bucket["unstable"] += r["polytope"] == "unstable"
    disagreements = [r for r in results if not r["agree"]]
    return {
        "count": count,
        "seed": seed,
        "mix": list(mix),
        "agreement": count - len(disagreements),
        "disagreement": len(disagreements),
        "by_kind": by_kind,
        "disagreements": [{"index": r["index"], "kind": r["kind"], "twelve_type": r["twelve_type"],
                           "polytope": r["polytope"]} for r in disagreements],
        "strict_status_disagreement": sum(not r["status_agree"] for r in results),
    }
