import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadnets.net import CoordinateChange, Net, QuadraticForm
from quadnets.parser import parse_net
from quadnets.stability import (
    TWELVE_TYPES,
    OneParamSubgroup,
    initial_weights,
    monomial_weight,
    monomial_weights,
    mu,
    one_param_limit,
    rho_type,
    stabilizing_subgroup_check,
    state_polytope_check,
    twelve_type_check,
)

from oracles import mu_bruteforce

I_R = "ac-b^2, ae-2bd+c^2, ce-d^2"
I_DT = "ad-b^2, ae-bd+c^2, be-d^2"
I_T = "ad-bc, ae+bd-c^2, be-cd"
I_DL = "ad, ae+bd-c^2, be"
SCROLL = "ad-bc, ae-bd, ce-d^2"
KEMPF = [(I_R, (2, 1, 0, -1, -2)), (I_DT, (3, 1, 0, -1, -3)), (I_T, (2, 1, 0, -1, -2)), (I_DL, (2, 1, 0, -1, -2))]
SLOPE = (2, 1, 0, -1, -2)


def random_net(rng, density=1.0):
    while True:
        rows = [tuple(rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(15)) for _ in range(3)]
        if sympy.Matrix(rows).rank() == 3:
            return Net([QuadraticForm(r) for r in rows])


@st.composite
def subgroups(draw):
    w = draw(st.lists(st.integers(-6, 6), min_size=4, max_size=4))
    if not any(w):
        w[0] = 1
    return OneParamSubgroup(tuple(w + [-sum(w)]))


seeds = st.integers(0, 10 ** 6)


class TestSubgroups:
    def test_twelve_types(self):
        assert len(TWELVE_TYPES) == 12
        for t in TWELVE_TYPES:
            assert sum(t) == 0 and list(t) == sorted(t, reverse=True)
        assert TWELVE_TYPES[11] == (13, 8, 3, -7, -17)

    @pytest.mark.parametrize("weights", [(1, 1, 1, 1, 1), (0, 0, 0, 0, 0), (1, -1, 0, 0)])
    def test_invalid(self, weights):
        with pytest.raises(ValueError):
            OneParamSubgroup(weights)

    def test_type_index_ignores_order_and_scale(self):
        assert OneParamSubgroup((-4, 6, -4, 6, -4)).type_index() == 3
        assert OneParamSubgroup((1, 0, 0, 0, -1)).type_index() is None


class TestWeights:
    def test_top_weight(self):
        assert monomial_weight((2, 0, 0, 0, 0), rho_type(12)) == 26

    def test_weight_set(self):
        assert set(monomial_weights(rho_type(12))) == {26, 21, 16, 11, 6, 1, -4, -9, -14, -24, -34}

    @given(subgroups())
    def test_linear(self, rho):
        doubled = rho.scaled(2)
        assert monomial_weights(doubled) == [2 * w for w in monomial_weights(rho)]

    @pytest.mark.parametrize("text,rho,expected", [
        (SCROLL, (3, 3, -2, -2, -2), (1, 1, -4)),
        (I_T, SLOPE, (1, 0, -1)),
        ("a^2, b^2, c^2", (4, -1, -1, -1, -1), (8, -2, -2)),
    ])
    def test_initial_weights(self, text, rho, expected):
        assert initial_weights(parse_net(text), rho) == expected

    def test_mu_examples(self):
        assert mu(parse_net(SCROLL), rho_type(3)) == -2
        assert mu(parse_net(I_T), SLOPE) == 0

    @pytest.mark.parametrize("seed", range(20))
    def test_mu_matches_bruteforce_and_initial_weights(self, seed):
        rng = random.Random(seed)
        net = random_net(rng, density=rng.choice([0.3, 1.0]))
        w = [rng.randint(-5, 5) for _ in range(4)]
        rho = OneParamSubgroup(tuple(w + [-sum(w)])) if any(w) else rho_type(1)
        assert mu(net, rho) == mu_bruteforce(net.matrix, rho.weights)
        assert mu(net, rho) == sum(initial_weights(net, rho))


class TestMuProperties:
    @given(seeds, subgroups(), st.integers(1, 5))
    @settings(max_examples=30, deadline=None)
    def test_scaling(self, seed, rho, k):
        net = random_net(random.Random(seed), 0.4)
        assert mu(net, rho.scaled(k)) == k * mu(net, rho)

    @given(seeds, subgroups())
    @settings(max_examples=30, deadline=None)
    def test_basis_recombination(self, seed, rho):
        rng = random.Random(seed)
        net = random_net(rng, 0.4)
        while True:
            m = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
            if sympy.Matrix(m).det():
                break
        zero = QuadraticForm((0,) * 15)
        other = Net([sum((net.basis[j] * m[i][j] for j in range(3)), zero) for i in range(3)])
        assert mu(other, rho) == mu(net, rho)

    @given(seeds, subgroups(), st.permutations(range(5)))
    @settings(max_examples=30, deadline=None)
    def test_permutation_equivariance(self, seed, rho, perm):
        net = random_net(random.Random(seed), 0.4)
        moved = net.apply_coordinate_change(CoordinateChange.permutation(tuple(perm)))
        image = [0] * 5
        for i, p in enumerate(perm):
            image[p] = rho.weights[i]
        assert mu(moved, OneParamSubgroup(tuple(image))) == mu(net, rho)


class TestTwelveTypeCheck:
    @pytest.mark.parametrize("text,stabilizer", KEMPF)
    def test_kempf_nets_strictly_semistable(self, text, stabilizer):
        verdict = twelve_type_check(parse_net(text))
        assert verdict.status == "strictly-semistable" and verdict.worst_mu == 0
        assert mu(parse_net(text), verdict.certificate) == 0

    def test_scroll_unstable_by_third_type(self):
        verdict = twelve_type_check(parse_net(SCROLL))
        assert verdict.status == "unstable" and verdict.worst_mu < 0
        assert verdict.certificate_type == 3
        assert sorted(verdict.certificate, reverse=True) == [3, 3, -2, -2, -2]
        assert mu(parse_net(SCROLL), verdict.certificate) == verdict.worst_mu

    def test_plane_times_line_net(self):
        # contained in (d,e)V, so a permutation of the second type destabilizes; an
        # earlier type also does, and the lowest index is reported
        net = parse_net("ad, ae, be")
        verdict = twelve_type_check(net)
        assert verdict.status == "unstable"
        assert verdict.certificate_type == 1
        assert mu(net, rho_type(2)) < 0

    def test_serialization(self):
        d = twelve_type_check(parse_net(SCROLL)).to_dict()
        assert d["status"] == "unstable" and d["method"] == "twelve-type"
        assert len(d["certificate"]) == 5 and isinstance(d["worst_mu"], int)
        assert d["probabilistic"] is False

    def test_identity_permutations_only(self):
        # the scroll is destabilized by (3,3,-2,-2,-2) in its given order
        verdict = twelve_type_check(parse_net(SCROLL), all_permutations=False)
        assert verdict.status == "unstable"

    def test_generic_net_stable(self):
        verdict = twelve_type_check(random_net(random.Random(1)))
        assert verdict.status == "stable" and verdict.worst_mu > 0

    @pytest.mark.parametrize("seed", range(15))
    def test_agrees_with_polytope(self, seed):
        rng = random.Random(seed)
        net = random_net(rng, density=rng.choice([0.15, 0.25, 0.5]))
        torus = twelve_type_check(net)
        poly = state_polytope_check(net)
        assert torus.semistable == poly.semistable
        assert torus.status == poly.status


class TestStatePolytope:
    def test_single_point_hull(self):
        verdict = state_polytope_check(parse_net("a^2, b^2, c^2"))
        assert verdict.status == "unstable" and verdict.method == "polytope"
        assert mu(parse_net("a^2, b^2, c^2"), verdict.certificate) < 0

    def test_triple_conic_semistable(self):
        assert state_polytope_check(parse_net(I_T)).semistable

    def test_scroll_certificate_is_third_type(self):
        verdict = state_polytope_check(parse_net(SCROLL))
        assert verdict.status == "unstable"
        assert verdict.certificate == (3, 3, -2, -2, -2)

    @pytest.mark.parametrize("seed", range(25))
    def test_certificates_are_sound(self, seed):
        rng = random.Random(100 + seed)
        net = random_net(rng, density=rng.choice([0.1, 0.2, 0.4]))
        verdict = state_polytope_check(net)
        if verdict.status != "stable":
            assert sum(verdict.certificate) == 0
            assert mu(net, verdict.certificate) == verdict.worst_mu
        assert (verdict.worst_mu < 0) == (verdict.status == "unstable")


class TestStabilizersAndLimits:
    @pytest.mark.parametrize("text,stabilizer", KEMPF)
    def test_kempf_stabilizers(self, text, stabilizer):
        assert stabilizing_subgroup_check(parse_net(text), stabilizer)

    @pytest.mark.parametrize("seed", range(10))
    def test_generic_not_stabilized(self, seed):
        rng = random.Random(seed)
        w = [rng.randint(-4, 4) for _ in range(4)]
        rho = OneParamSubgroup(tuple(w + [-sum(w)])) if any(w) else rho_type(1)
        assert not stabilizing_subgroup_check(random_net(rng), rho)

    def test_trigonal_limit(self):
        net = parse_net("ad-bc, ae-c^2+bd+d^2, be-cd")
        assert one_param_limit(net, SLOPE, "to-infinity") == parse_net(I_T)

    def test_fixed_net_is_its_own_limit(self):
        net = parse_net(I_T)
        assert one_param_limit(net, SLOPE, "to-zero") == net
        assert one_param_limit(net, SLOPE, "to-infinity") == net

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            one_param_limit(parse_net(I_T), SLOPE, "sideways")

    @given(seeds, subgroups(), st.sampled_from(["to-zero", "to-infinity"]))
    @settings(max_examples=30, deadline=None)
    def test_limit_is_fixed_and_idempotent(self, seed, rho, direction):
        net = random_net(random.Random(seed), 0.5)
        limit = one_param_limit(net, rho, direction)
        assert stabilizing_subgroup_check(limit, rho)
        assert one_param_limit(limit, rho, direction) == limit

    @given(seeds, subgroups())
    @settings(max_examples=30, deadline=None)
    def test_fixed_nets_have_opposite_weights(self, seed, rho):
        # a rho-fixed net is fixed by -rho, and the two top weights are the
        # extreme Plücker weights of a weight-homogeneous span
        net = one_param_limit(random_net(random.Random(seed), 0.5), rho, "to-infinity")
        assert stabilizing_subgroup_check(net, -rho)
        assert mu(net, rho) == -mu(net, -rho)
