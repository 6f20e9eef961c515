import random
from fractions import Fraction

import pytest

from quadnets import divisor
from quadnets.divisor import (
    CANONICAL,
    DELTA,
    LAMBDA,
    STANDARD_FAMILIES,
    DivisorClass,
    NullspaceDimensionError,
    check_log_canonical_identities,
    divisor_report,
    solve_contracted_class,
)

ROWS = [(1, 12, -1, 0), (3, 30, 0, -1), (4, 33, 0, 0)]


def test_contracted_class():
    assert solve_contracted_class(STANDARD_FAMILIES) == (33, 4, 15, 21)
    assert solve_contracted_class(ROWS) == (33, 4, 15, 21)


@pytest.mark.parametrize("row", ROWS)
def test_each_family_annihilates(row):
    lam, d0, d1, d2 = row
    assert 33 * lam - 4 * d0 - 15 * d1 - 21 * d2 == 0


def test_coordinate_rows():
    a, b, c, d = solve_contracted_class([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert (a, b, c) == (0, 0, 0) and abs(d) == 1


def test_underdetermined():
    with pytest.raises(NullspaceDimensionError) as info:
        solve_contracted_class([ROWS[0], ROWS[0], ROWS[1]])
    assert info.value.dimension == 2


def test_overdetermined():
    with pytest.raises(NullspaceDimensionError):
        solve_contracted_class(ROWS + [(0, 0, 0, 1)])


@pytest.mark.parametrize("seed", range(10))
def test_scale_and_order_invariant(seed):
    rng = random.Random(seed)
    rows = []
    for row in ROWS:
        k = rng.choice([-3, -2, -1, 1, 2, 5])
        rows.append(tuple(k * x for x in row))
    rng.shuffle(rows)
    assert solve_contracted_class(rows) == (33, 4, 15, 21)


def test_family_objects():
    assert [f.name for f in STANDARD_FAMILIES] == ["T1", "T2", "T3"]
    killer = DivisorClass.of(33, -4, -15, -21)
    assert all(killer.dot(f) == 0 for f in STANDARD_FAMILIES)
    assert isinstance(STANDARD_FAMILIES[0], divisor.TestFamily)


def test_identities():
    report = check_log_canonical_identities()
    assert report["all_hold"] and report["convention"] == "K = 13 lambda - 2 delta"
    first, second = report["identities"]
    assert first["left"] == first["right"] == ["429", "-52", "-52", "-52"]
    assert second["left"] == second["right"] == ["104", "-13", "-13", "-13"]


def test_identity_sensitivity():
    report = check_log_canonical_identities(first_delta=Fraction(15, 33))
    assert not report["identities"][0]["holds"] and report["identities"][1]["holds"]
    assert not report["all_hold"]


def test_class_arithmetic():
    assert CANONICAL == DivisorClass.of(13, -2, -2, -2)
    assert 33 * (CANONICAL + Fraction(14, 33) * DELTA) == DivisorClass.of(429, -52, -52, -52)
    assert (2 * LAMBDA).is_proportional(LAMBDA) and not LAMBDA.is_proportional(DELTA)
    assert str(DivisorClass.of(33, -4, -15, -21)) == "33 lambda - 4 delta_0 - 15 delta_1 - 21 delta_2"
    assert DivisorClass.of(1, Fraction(1, 2), 0, 0).to_json() == ["1", "1/2", "0", "0"]


def test_report():
    report = divisor_report()
    assert report["contracted_class"] == [33, 4, 15, 21]
    assert report["log_canonical"]["all_hold"]
