import pytest

from tropdiv.errors import EmptyOrFullSubset, NotMember
from tropdiv.graphs import Divisor, RationalFunction, build_graph, canonical_divisor, ord_and_div
from tropdiv.linear_systems import (
    can_fire, extremals, firing_subsets, is_extremal, odot, oplus,
    oplus_cover, rgd_enumerate, rgd_member, scale)

from conftest import random_multigraph
from oracles import all_firing_subsets, rgd_box_enumerate


def reps(elements):
    return {el.function.values for el in elements}


def test_rgd_theta_canonical(theta):
    k = canonical_divisor(theta)
    assert reps(rgd_enumerate(theta, k)) == {(0, 0)}


def test_rgd_theta_3k(theta):
    k = canonical_divisor(theta)
    assert reps(rgd_enumerate(theta, 3 * k, degree=3)) == {(0, 0), (0, 1), (1, 0)}


def test_rgd_negative_degree_empty(theta):
    assert rgd_enumerate(theta, Divisor((-1, 0))) == ()


def test_rgd_degree_labels(theta):
    k = canonical_divisor(theta)
    for el in rgd_enumerate(theta, 3 * k, degree=3):
        assert el.degree == 3
        assert min(el.function.values) == 0
        assert el.slice_values[0] == 0


def test_rgd_matches_box_oracle_on_fixtures(theta, path3, k4):
    for g in (theta, path3, k4):
        k = canonical_divisor(g)
        for m in range(0, 4):
            got = reps(rgd_enumerate(g, m * k, degree=max(m, 1)))
            assert got == set(rgd_box_enumerate(g, m * k))


def test_rgd_matches_box_oracle_random(rng):
    for _ in range(30):
        g = random_multigraph(rng, max_vertices=4, max_extra=3)
        d = Divisor(tuple(rng.randint(-1, 2) for _ in range(g.vertex_count)))
        assert reps(rgd_enumerate(g, d)) == set(rgd_box_enumerate(g, d))


def test_can_fire_theta():
    theta = build_graph(2, [(0, 1)] * 3)
    e = Divisor((1, 3))
    assert can_fire(theta, e, frozenset({1}))
    assert not can_fire(theta, canonical_divisor(theta), frozenset({1}))


def test_can_fire_rejects_improper(theta):
    with pytest.raises(EmptyOrFullSubset):
        can_fire(theta, Divisor((1, 1)), frozenset())
    with pytest.raises(EmptyOrFullSubset):
        can_fire(theta, Divisor((1, 1)), frozenset({0, 1}))


def test_can_fire_forced_rule(rng):
    # on V' = V minus one vertex, firing needs exactly E(x) >= edges to the
    # removed vertex for each member; cross-check against the definition
    for _ in range(50):
        g = random_multigraph(rng, max_vertices=5)
        if g.vertex_count < 2:
            continue
        out = rng.randrange(g.vertex_count)
        vprime = frozenset(range(g.vertex_count)) - {out}
        e = Divisor(tuple(rng.randint(0, g.valence(x)) for x in range(g.vertex_count)))
        by_rule = all(
            e.coeffs[x] >= sum((u == x and v == out) + (v == x and u == out)
                               for u, v in g.edges if u != v)
            for x in vprime)
        assert can_fire(g, e, vprime) == by_rule


def test_firing_subsets_match_bruteforce(rng):
    for _ in range(40):
        g = random_multigraph(rng, max_vertices=4, max_extra=3)
        if g.vertex_count < 2:
            continue
        e = Divisor(tuple(rng.randint(0, 3) for _ in range(g.vertex_count)))
        assert firing_subsets(g, e) == all_firing_subsets(g, e)


def test_is_extremal_theta_constant(theta):
    k = canonical_divisor(theta)
    assert is_extremal(theta, k, RationalFunction((0, 0)))


def test_is_extremal_rejects_nonmember(theta):
    with pytest.raises(NotMember):
        is_extremal(theta, canonical_divisor(theta), RationalFunction((0, 5)))


def test_oplus_of_shifted_representatives_not_extremal(theta):
    # max of the two nonconstant representatives, shifted so neither wins
    k3 = 3 * canonical_divisor(theta)
    f = oplus(RationalFunction((0, 1)), RationalFunction((1, 0)))
    assert f == RationalFunction((1, 1))
    assert rgd_member(theta, k3, f)
    assert not is_extremal(theta, k3, f)


def test_extremals_theta(theta):
    k = canonical_divisor(theta)
    assert reps(extremals(theta, k)) == {(0, 0)}
    assert reps(extremals(theta, 3 * k, degree=3)) == {(0, 1), (1, 0)}
    assert extremals(theta, Divisor((-2, 0))) == ()


def test_extremals_nonempty_when_system_nonempty(rng):
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=4, max_extra=3)
        d = Divisor(tuple(rng.randint(0, 1) for _ in range(g.vertex_count)))
        elements = rgd_enumerate(g, d)
        if elements:
            assert extremals(g, d)


def test_oplus_idempotent(rng):
    for _ in range(100):
        g = random_multigraph(rng)
        f = RationalFunction(tuple(rng.randint(-4, 4) for _ in range(g.vertex_count)))
        assert oplus(f, f) == f


def test_scale_preserves_representative(theta):
    f = RationalFunction((0, 2))
    assert scale(5, f).normalized() == f


def test_product_divisor_additivity(rng):
    for _ in range(200):
        g = random_multigraph(rng)
        n = g.vertex_count
        f = RationalFunction(tuple(rng.randint(-5, 5) for _ in range(n)))
        h = RationalFunction(tuple(rng.randint(-5, 5) for _ in range(n)))
        assert ord_and_div(g, odot(f, h)) == ord_and_div(g, f) + ord_and_div(g, h)


def test_closure_under_oplus_and_odot(theta, rng):
    k = canonical_divisor(theta)
    pool2 = [el.function for el in rgd_enumerate(theta, 2 * k, degree=2)]
    pool3 = [el.function for el in rgd_enumerate(theta, 3 * k, degree=3)]
    for _ in range(300):
        f = scale(rng.randint(-5, 5), rng.choice(pool2))
        h = scale(rng.randint(-5, 5), rng.choice(pool3))
        f2 = scale(rng.randint(-5, 5), rng.choice(pool2))
        assert rgd_member(theta, 2 * k, oplus(f, f2))
        assert rgd_member(theta, 5 * k, odot(f, h))


def test_every_element_is_oplus_of_extremals(theta, path3, k4):
    for g in (theta, path3, k4):
        k = canonical_divisor(g)
        for m in (1, 2, 3):
            d = m * k
            elements = rgd_enumerate(g, d, degree=m)
            exts = [el.function.values for el in extremals(g, d, degree=m)]
            for el in elements:
                cover = oplus_cover(el.function.values, exts)
                assert cover is not None
                # re-evaluate the certificate
                best = [None] * g.vertex_count
                for shift, idx in cover:
                    for i, v in enumerate(exts[idx]):
                        cand = v + shift
                        if best[i] is None or cand > best[i]:
                            best[i] = cand
                assert all(b <= t for b, t in zip(best, el.function.values))
                covered = set()
                for shift, idx in cover:
                    for i, v in enumerate(exts[idx]):
                        if v + shift == el.function.values[i]:
                            covered.add(i)
                assert covered == set(range(g.vertex_count))


def test_is_extremal_invariant_under_scale(theta, rng):
    k3 = 3 * canonical_divisor(theta)
    for el in rgd_enumerate(theta, k3, degree=3):
        base = is_extremal(theta, k3, el.function)
        for c in (-7, 1, 12):
            assert is_extremal(theta, k3, scale(c, el.function)) == base
