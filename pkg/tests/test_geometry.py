from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import all_descent, shi_central
from regiongraph.arrangement import parse_preset, preset
from regiongraph.digraph import WeightedDigraph, is_m_acyclic, strong_components
from regiongraph.errors import InputError, NotMAcyclic, SizeLimitError
from regiongraph.geometry import InequalitySystem, bounded_by_elimination, feasibility, recession_ray
from regiongraph.regions import candidates, enumerate_regions

SHI2 = WeightedDigraph.from_edges(2, {(1, 2): 0, (2, 1): -1})


def test_shi_central_point():
    cert = feasibility(SHI2)
    assert cert.kind == "point"
    assert cert.value == (Fraction(1, 6), Fraction(-1, 6))


def test_m5_certificate(m5, validator):
    cert = feasibility(m5)
    assert cert.kind == "cycle"
    assert cert.value.vertices == (1, 3, 5, 4, 2) and cert.value.weight == 0
    validator("certificate.schema.json", cert.to_json())


def test_single_vertex():
    one = WeightedDigraph.from_edges(1, {})
    assert feasibility(one).value == (0,)
    assert recession_ray(one) is None
    assert bounded_by_elimination(one)


def test_rays():
    ray = recession_ray(all_descent(2))
    assert ray.value == (-1, 1)
    assert recession_ray(shi_central(3)) is None
    with pytest.raises(NotMAcyclic):
        recession_ray(WeightedDigraph.from_edges(2, {(1, 2): 0, (2, 1): 0}))


def test_elimination_examples():
    assert bounded_by_elimination(SHI2)
    assert not bounded_by_elimination(all_descent(2))
    assert not bounded_by_elimination(WeightedDigraph.from_edges(2, {(1, 2): 1}))
    with pytest.raises(SizeLimitError):
        bounded_by_elimination(shi_central(6))


def test_system_roundtrip():
    system = InequalitySystem.from_digraph(shi_central(3))
    assert system.to_digraph() == shi_central(3)
    assert system.satisfied_by((Fraction(1, 6), 0, Fraction(-1, 6)))
    assert not system.satisfied_by((1, 0, -1))
    assert not system.satisfied_by((Fraction(1, 6), 0, 0))
    with pytest.raises(InputError):
        InequalitySystem(2, ((1, 2, Fraction(1), Fraction(1)),))


def test_ambient_r():
    system = InequalitySystem.from_digraph(SHI2, ambient="R")
    cert = feasibility(system)
    assert system.satisfied_by(cert.value)


def test_certificate_json(validator):
    for cert in (feasibility(SHI2), recession_ray(all_descent(3))):
        validator("certificate.schema.json", cert.to_json())
    assert feasibility(SHI2).to_json() == {"type": "point", "vector": ["1/6", "-1/6"]}


@pytest.mark.parametrize("text", ["shi", "semiorder", "interval:-1/2,1/3", "truncated:-1,4", "agl:1/2,0,3"])
def test_oracles_agree(text):
    spec = parse_preset(text, None if text.startswith("agl") else 3)
    for cand in candidates(spec):
        ok, _ = is_m_acyclic(cand.digraph)
        cert = feasibility(cand.digraph)
        assert (cert.kind == "point") == ok
        if not ok:
            assert cert.value.check(cand.digraph) and cert.value.weight >= 0
            continue
        strong = strong_components(cand.digraph)[1]
        assert bounded_by_elimination(cand.digraph) == strong
        ray = recession_ray(cand.digraph)
        assert (ray is None) == strong
        if ray is not None:
            system = InequalitySystem.from_digraph(cand.digraph)
            for t in (1, 10, 1000):
                assert system.satisfied_by(tuple(x + t * r for x, r in zip(cert.value, ray.value)))


rational_offsets = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=3, unique=True)


@given(st.lists(rational_offsets, min_size=3, max_size=3))
def test_random_rational_arrangements(offsets):
    from regiongraph.arrangement import ArrangementSpec

    spec = ArrangementSpec.from_function(3, lambda i, j: sorted(offsets[i + j - 3]))
    for cand in candidates(spec):
        ok, _ = is_m_acyclic(cand.digraph)
        cert = feasibility(cand.digraph)
        assert (cert.kind == "point") == ok
        if ok:
            assert InequalitySystem.from_digraph(cand.digraph).satisfied_by(cert.value)
            assert bounded_by_elimination(cand.digraph) == strong_components(cand.digraph)[1]


def test_bounded_regions_of_shi_have_bounded_points():
    for region in enumerate_regions(preset("shi", n=3)):
        assert bounded_by_elimination(region) == region.is_bounded()
