import pytest
from hypothesis import given, strategies as st

from conftest import linial_by_tournaments

from regiongraph.arrangement import ArrangementSpec, cycle_check_bound, parse_preset, preset
from regiongraph.digraph import is_m_acyclic, strong_components
from regiongraph.errors import BudgetExceeded, InputError
from regiongraph.regions import (
    RegionConfig,
    budget_from_env,
    candidates,
    count_regions,
    count_via_structure,
    enumerate_regions,
    ordered_set_partitions,
    region_from_digraph,
    verify_exponential_formula,
)


# Frozen after brute force over raw tournaments (see test_linial_fixture_matches_brute_force).
LINIAL = {2: (2, 0), 3: (7, 1), 4: (36, 4), 5: (246, 26)}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_linial_fixture_matches_brute_force(n):
    assert linial_by_tournaments(n) == LINIAL[n]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_linial_counts(n):
    result = count_regions(preset("linial", n=n))
    assert (result.total, result.bounded) == LINIAL[n]


@pytest.mark.parametrize(
    "text,n,expected",
    [("shi", 3, (16, 4)), ("catalan:2", 3, (30, 12)), ("semiorder", 3, (19, 7)), ("linial", 1, (1, 1))],
)
def test_reference_counts(text, n, expected):
    result = count_regions(parse_preset(text, n))
    assert (result.total, result.bounded) == expected


def test_order_and_uniqueness():
    spec = preset("shi", n=4)
    ks = [r.k for r in enumerate_regions(spec)]
    assert ks == sorted(ks) and len(set(ks)) == len(ks)


small_specs = st.sampled_from(
    ["linial", "shi", "semiorder", "eshi:1", "catalan:2", "truncated:-1,4", "truncated:0,3", "interval:-1/2,1", "agl:1,0,2"]
)


@given(small_specs, st.integers(1, 3))
def test_enumeration_equals_unpruned_filter(text, n):
    spec = parse_preset(text, None if text.startswith("agl") else n)
    brute = [c.k for c in candidates(spec) if is_m_acyclic(c.digraph)[0]]
    assert [r.k for r in enumerate_regions(spec)] == brute
    bounded = sum(1 for c in candidates(spec) if is_m_acyclic(c.digraph)[0] and strong_components(c.digraph)[1])
    assert count_regions(spec).bounded == bounded


def test_enumeration_exhaustive_at_n4():
    spec = preset("semiorder", n=4)
    brute = [c.k for c in candidates(spec) if is_m_acyclic(c.digraph)[0]]
    assert [r.k for r in enumerate_regions(spec)] == brute


@pytest.mark.parametrize("text", ["shi", "catalan:2", "linial"])
def test_shortcut_matches_full(text):
    spec = parse_preset(text, 5)
    bound = cycle_check_bound(spec)
    assert [r.k for r in enumerate_regions(spec, bound=bound)] == [r.k for r in enumerate_regions(spec)]


def test_workers_preserve_order():
    spec = parse_preset("catalan:2", 4)
    assert [r.k for r in enumerate_regions(spec, workers=3)] == [r.k for r in enumerate_regions(spec)]
    assert count_regions(spec, workers=2) == count_regions(spec)


@pytest.mark.parametrize("a,b", [(1, 3), (0, 3), (-1, 4), (2, 3)])
def test_truncated_reflection_symmetry(a, b):
    for n in (2, 3, 4):
        assert count_regions(preset("truncated", (a, b), n)).total == count_regions(preset("truncated", (b, a), n)).total


def test_budget(monkeypatch):
    spec = preset("shi", n=4)
    with pytest.raises(BudgetExceeded):
        count_regions(spec, budget=5)
    monkeypatch.setenv("ARR_BUDGET", "7")
    assert budget_from_env() == 7
    with pytest.raises(BudgetExceeded):
        count_regions(spec)
    monkeypatch.setenv("ARR_BUDGET", "lots")
    with pytest.raises(InputError):
        budget_from_env()


def test_region_config_roundtrip(validator):
    spec = preset("shi", n=3)
    for region in enumerate_regions(spec):
        validator("region.schema.json", region.to_json())
        assert region_from_digraph(spec, region.digraph) == region
    with pytest.raises(InputError):
        RegionConfig(spec, (0, 0, 3))


def test_profiles():
    result = count_regions(preset("shi", n=3), profiles=True)
    assert result.profiles == {(1, 1, 1): 6, (2, 1): 3, (1, 2): 3, (3,): 4}
    assert result.to_json()["profiles"]["3"] == 4


def test_ordered_set_partitions():
    parts = [tuple(tuple(sorted(b)) for b in p) for p in ordered_set_partitions((1, 2, 3))]
    assert len(parts) == len(set(parts)) == 13
    assert ((1,), (2,), (3,)) in parts and ((1, 2, 3),) in parts


@pytest.mark.parametrize("text", ["shi", "semiorder", "catalan:2", "linial", "eshi:2"])
def test_structure_theorem(text):
    for n in (1, 2, 3, 4):
        spec = parse_preset(text, n)
        assert count_via_structure(spec) == count_regions(spec).total


def test_structure_needs_all_pairs():
    spec = ArrangementSpec.from_function(3, lambda i, j: [] if (i, j) == (1, 3) else [0])
    with pytest.raises(InputError):
        count_via_structure(spec)


@pytest.mark.parametrize("family,params", [("shi", ()), ("semiorder", ()), ("catalan", (2,)), ("eshi", (1,))])
def test_exponential_formula(family, params):
    report = verify_exponential_formula(family, 4, params)
    assert report["ok"] and report["first_failure"] is None
    assert len(report["r"]) == 4


def test_exponential_formula_values():
    report = verify_exponential_formula("shi", 3)
    assert report["r"] == [1, 3, 16] and report["b"] == [1, 1, 4]
