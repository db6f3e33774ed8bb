import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regiongraph.arrangement import (
    ArrangementSpec,
    alpha,
    beta,
    classify,
    cycle_check_bound,
    pair_configs,
    pair_weights,
    parse_preset,
    preset,
    truncated_parameters,
)
from regiongraph.digraph import shortest_ascending_cycle
from regiongraph.errors import InputError
from regiongraph.regions import candidates
from regiongraph.weights import NEG_INF


def values(spec):
    return [[int(v) for v in vals] for vals in spec.values]


def test_presets_offsets():
    assert values(preset("linial", n=3)) == [[1]] * 3
    assert values(preset("shi", n=3)) == [[0, 1]] * 3
    assert values(preset("semiorder", n=2)) == [[-1, 1]]
    assert values(parse_preset("eshi:2", 2)) == [[-1, 0, 1, 2]]
    assert values(parse_preset("catalan:2", 2)) == [[-1, 0, 1]]
    assert values(parse_preset("truncated:-1,4", 2)) == [[2, 3]]
    assert parse_preset("interval:-1/2,1", 2).values == ((Fraction(-1, 2), Fraction(1)),)
    assert values(parse_preset("agl:1,2,0")) == [[1], [1], [2]]


def test_beta_shi_offsets_follow_both_endpoints():
    assert values(parse_preset("beta-shi:0,0,0")) == [[0, 1]] * 3
    # pairs (1,2), (1,3), (2,3)
    assert values(parse_preset("beta-shi:0,1,0")) == [[0, 1, 2], [0, 1], [-1, 0, 1]]
    assert values(parse_preset("beta-shi:1,0,0")) == [[-1, 0, 1], [-1, 0, 1], [0, 1]]


@pytest.mark.parametrize(
    "text",
    ["truncated:1,0", "eshi:0", "agl:-1,2", "interval:1,1", "nosuch", "shi:1", "beta-shi:1,-1", "catalan:x"],
)
def test_bad_presets(text):
    with pytest.raises(InputError):
        parse_preset(text, 3)


def test_spec_validation():
    with pytest.raises(InputError):
        ArrangementSpec.from_function(2, lambda i, j: [1, 0])
    with pytest.raises(InputError):
        ArrangementSpec.from_json({"n": 2, "pairs": [{"i": 2, "j": 1, "values": ["0"]}]})


def test_json_roundtrip(validator):
    spec = parse_preset("interval:-1/2,3", 3)
    data = spec.to_json()
    validator("arrangement.schema.json", data)
    assert ArrangementSpec.from_json(data) == spec
    with_default = ArrangementSpec.from_json({"n": 3, "default": ["0", "1"], "pairs": [{"i": 1, "j": 3, "values": []}]})
    assert values(with_default) == [[0, 1], [], [0, 1]]


def test_pair_configs_examples():
    shi = [(c.forward, c.backward) for c in pair_configs(preset("shi", n=2), (1, 2))]
    assert shi == [(NEG_INF, 0), (0, -1), (1, NEG_INF)]
    linial = [(c.forward, c.backward) for c in pair_configs(preset("linial", n=2), (1, 2))]
    assert linial == [(NEG_INF, -1), (1, NEG_INF)]
    assert pair_weights((), 0) == (NEG_INF, NEG_INF)


@given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=0, max_size=5, unique=True), st.fractions(-6, 6))
def test_pair_intervals_partition_the_line(vals, x):
    vals = sorted(vals)
    configs = [pair_weights(vals, k) for k in range(len(vals) + 1)]
    inside = []
    for fwd, back in configs:
        lo_ok = fwd is NEG_INF or x > fwd
        hi_ok = back is NEG_INF or x < -back
        inside.append(lo_ok and hi_ok)
    assert sum(inside) == (0 if x in vals else 1)


def test_classification_examples():
    shi = classify(preset("shi", n=3))
    assert shi.separated and shi.weak_triangle and shi.has_AL_diagrams
    negative = classify(parse_preset("truncated:1,3", 3))
    assert negative.separated and negative.weak_triangle is False
    linial = classify(preset("linial", n=3))
    assert not linial.separated and linial.sparse
    semi = classify(preset("semiorder", n=3))
    assert semi.contiguous is False and semi.weak_triangle is None and semi.interval_order
    assert classify(parse_preset("eshi:2", 3)).beta_floor == (1, 1, 1)


def test_classification_json(validator):
    data = classify(preset("shi", n=3)).to_json()
    assert set(data) >= {"separated", "weak_triangle", "beta_floor", "crossing_beta_pattern"}


@pytest.mark.parametrize("a,b", [(a, b) for a in range(-2, 4) for b in range(-2, 4) if a + b >= 2])
def test_separated_truncated(a, b):
    spec = preset("truncated", (a, b), 3)
    assert classify(spec).separated == (min(a, b) >= 1)


def test_beta_alpha():
    spec = parse_preset("eshi:2", 3)
    assert beta(spec, 1, 2) == 2 and alpha(spec, 1, 2) == -1
    assert truncated_parameters(parse_preset("truncated:3,1", 3)) == (3, 1)


@pytest.mark.parametrize(
    "text,n,bound",
    [("shi", 5, 3), ("catalan:2", 5, 3), ("eshi:1", 5, 3), ("linial", 5, 4), ("truncated:0,3", 5, 4),
     ("truncated:-1,4", 5, 5), ("semiorder", 5, 5), ("linial", 2, 2)],
)
def test_cycle_check_bound(text, n, bound):
    assert cycle_check_bound(parse_preset(text, n)) == bound


@pytest.mark.parametrize("text", ["shi", "linial", "catalan:2", "truncated:0,3", "truncated:2,3"])
def test_cycle_check_bound_sound_at_n4(text):
    spec = parse_preset(text, 4)
    bound = cycle_check_bound(spec)
    for cand in candidates(spec):
        found = shortest_ascending_cycle(cand.digraph)
        if found is not None:
            assert found[0] <= bound, cand.k


def test_crossing_beta_pattern_needs_four_indices():
    spec = ArrangementSpec.from_function(4, lambda i, j: [0, 1, 2] if (i, j) in ((1, 3), (2, 4)) else [0, 1])
    report = classify(spec)
    assert report.separated
    crossing = any(
        beta(spec, i1, j1) < beta(spec, i1, j2) and beta(spec, i2, j1) > beta(spec, i2, j2)
        for i1, i2, j1, j2 in itertools.permutations(range(1, 5), 4)
    )
    assert report.crossing_beta_pattern == crossing


def _bumped(pairs_with_extra):
    return ArrangementSpec.from_function(4, lambda i, j: [-1, 0, 1, 2] if (i, j) in pairs_with_extra else [-1, 0, 1])


@pytest.mark.parametrize(
    "spec",
    [_bumped({(1, 3), (2, 4)}), _bumped({(1, 3), (1, 4)}), preset("shi", n=4), preset("eshi", (2,), 4)],
    ids=["crossing", "shared-endpoint", "shi", "eshi2"],
)
def test_minimal_four_cycles_iff_crossing_pattern(spec):
    report = classify(spec)
    assert report.separated and report.weak_triangle
    four = False
    for cand in candidates(spec):
        found = shortest_ascending_cycle(cand.digraph)
        if found is not None and found[0] == 4:
            four = True
            break
    assert four == report.crossing_beta_pattern
