import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import NEGATIVE_EDGES
from regiongraph.arrangement import classify, parse_preset, preset
from regiongraph.digraph import WeightedDigraph, nonneg_reachability, strong_components
from regiongraph.errors import NotApplicable, SizeLimitError
from regiongraph.gains import (
    a_parking_functions,
    alternating_cycle_free,
    alternation_acyclic_count,
    extended_shi_bounds_hold,
    gain_function,
    gain_poset,
    gain_profile,
    gain_tree,
    has_alternating_cycle,
    incomparability_connected,
    is_a_parking_function,
    is_noncrossing,
    order_of_gains,
    pak_stanley_key_holds,
    pak_stanley_label,
    sigma_decomposition,
)
from regiongraph.regions import RegionConfig, count_regions, enumerate_regions, region_from_digraph


@pytest.fixture
def negative_region():
    spec = parse_preset("truncated:1,3", 3)
    return region_from_digraph(spec, WeightedDigraph.from_edges(3, NEGATIVE_EDGES))


def test_negative_example(negative_region):
    assert order_of_gains(negative_region) == (2, 1, 3)
    assert gain_function(negative_region) == {2: 0, 1: 1, 3: 2}
    with pytest.raises(NotApplicable):
        gain_function(negative_region, "greedy")
    forced = gain_function(negative_region, "greedy", check=False)
    assert forced[1] == 0 and forced != gain_function(negative_region)


def test_shi_central():
    central = RegionConfig(preset("shi", n=3), (1, 1, 1))
    assert order_of_gains(central) == (1, 2, 3)
    assert gain_function(central) == {1: 0, 2: 0, 3: 0}
    assert gain_tree(central)[0] == {1: 1, 2: 1, 3: 2}
    assert sigma_decomposition(central) == (1, 3)
    assert pak_stanley_label(central).f == (0, 0, 0)


def test_decomposition_examples():
    shi = preset("shi", n=3)
    assert sigma_decomposition(RegionConfig(shi, (2, 2, 2))) == (1, 1, 2, 3)
    mixed = region_from_digraph(shi, WeightedDigraph.from_edges(3, {(1, 2): 0, (2, 1): -1, (1, 3): 1, (2, 3): 1}))
    assert sigma_decomposition(mixed) == (1, 2, 3)


def test_gain_tree_two_vertices():
    region = RegionConfig(preset("shi", n=2), (2,))
    assert gain_tree(region)[0] == {1: 1, 2: 1}


def test_not_separated():
    with pytest.raises(NotApplicable):
        order_of_gains(RegionConfig(preset("linial", n=3), (0, 0, 0)))


def blocks(sigma, idx):
    out, start = [], 1
    for end in idx[1:]:
        out.append(frozenset(sigma[start - 1:end]))
        start = end + 1
    return out


@pytest.mark.parametrize("text", ["shi", "eshi:2", "catalan:2", "catalan:3", "truncated:1,3", "beta-shi:1,0,2"])
def test_gain_profile_invariants(text):
    spec = parse_preset(text, None if text.startswith("beta") else 3)
    greedy_ok = bool(classify(spec).weak_triangle)
    for region in enumerate_regions(spec):
        profile = gain_profile(region) if greedy_ok else None
        sigma = order_of_gains(region)
        d = region.digraph
        for s, t in itertools.combinations(range(len(sigma)), 2):
            assert d.w(sigma[s], sigma[t]) >= 0
        g = gain_function(region)
        along = [g[v] for v in sigma]
        assert along[0] == 0 and along == sorted(along)
        comps = [frozenset(c) for c in strong_components(d)[0]]
        assert blocks(sigma, sigma_decomposition(region)) == comps
        if profile is not None:
            assert profile.g == g and profile.sigma == sigma
            assert is_noncrossing(sigma, profile.parent)


def test_greedy_matches_general():
    for text in ("shi", "eshi:2", "catalan:2", "catalan:3"):
        for n in (2, 3, 4):
            spec = parse_preset(text, n)
            shapes = set()
            for region in enumerate_regions(spec):
                assert gain_function(region, "greedy") == gain_function(region)
                parent, shape = gain_tree(region)
                assert is_noncrossing(order_of_gains(region), parent)
                shapes.add(shape)
            assert len(shapes) <= comb(2 * n, n) // (n + 1)


def test_noncrossing_detects_crossing():
    sigma = (1, 2, 3, 4)
    assert is_noncrossing(sigma, {1: 1, 2: 1, 3: 2, 4: 1})
    assert not is_noncrossing(sigma, {1: 1, 2: 1, 3: 1, 4: 2})


def test_parking_function_examples():
    assert is_a_parking_function((0, 0, 0), 1)
    assert is_a_parking_function((0, 2, 1), 1)
    assert not is_a_parking_function((0, 2, 2), 1)
    assert len(a_parking_functions(2, 3)) == 49
    assert len(a_parking_functions(1, 3)) == 16


@given(st.integers(1, 3), st.integers(1, 3))
def test_parking_function_count(a, n):
    brute = [f for f in itertools.product(range(a * (n - 1) + 1), repeat=n) if is_a_parking_function(f, a)]
    assert a_parking_functions(a, n) == sorted(brute)
    assert len(brute) == (a * n + 1) ** (n - 1)


def test_pak_stanley_shi_two():
    labels = sorted(pak_stanley_label(r).f for r in enumerate_regions(preset("shi", n=2)))
    assert labels == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("a,n", [(1, 2), (1, 3), (1, 4), (2, 3)])
def test_pak_stanley_bijection(a, n):
    regions = list(enumerate_regions(preset("eshi", (a,), n)))
    labels = []
    for region in regions:
        label = pak_stanley_label(region)
        assert is_a_parking_function(label.f, a)
        assert pak_stanley_key_holds(region)
        assert extended_shi_bounds_hold(region)
        assert label.f == tuple(s + i for s, i in zip(label.separations, label.inversions))
        labels.append(label.f)
    assert sorted(labels) == a_parking_functions(a, n)


def test_pak_stanley_needs_extended_shi():
    with pytest.raises(NotApplicable):
        pak_stanley_label(RegionConfig(parse_preset("catalan:2", 2), (1,)))


def test_gain_poset_examples():
    descent = RegionConfig(preset("linial", n=3), (0, 0, 0))
    poset = gain_poset(descent)
    assert poset.relation == frozenset()
    assert incomparability_connected(descent) and not descent.is_bounded()
    semi = RegionConfig(preset("semiorder", n=2), (1,))
    assert gain_poset(semi).relation == frozenset()
    assert incomparability_connected(semi) and semi.is_bounded()


@pytest.mark.parametrize("text", ["semiorder", "interval:-1,1", "interval:-1/2,2"])
def test_sparse_boundedness(text):
    for n in (2, 3, 4):
        for region in enumerate_regions(parse_preset(text, n)):
            assert gain_poset(region).relation == nonneg_reachability(region.digraph)
            assert incomparability_connected(region) == region.is_bounded()


def test_alternation_counts():
    assert [alternation_acyclic_count(n) for n in range(1, 6)] == [1, 2, 8, 56, 608]
    with pytest.raises(SizeLimitError):
        alternation_acyclic_count(7)


@pytest.mark.parametrize("weights", ["1,1,1", "1,2,3", "0,1/2,3", "1,1,1,1", "2,0,1,1/3"])
def test_agl_bounded_by_alternation_count(weights):
    spec = parse_preset("agl:" + weights)
    regions = list(enumerate_regions(spec))
    for region in regions:
        assert alternating_cycle_free(region) == (not has_alternating_cycle(region))
        assert alternating_cycle_free(region)
    assert count_regions(spec).total <= alternation_acyclic_count(spec.n)
