from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taut24 import reference
from taut24.ladder import (
    Fan,
    LadderError,
    ample_divisor_from_roof,
    anticanonical,
    boundary_delta,
    build_ladder_24,
    fan_from_ladder,
    fan_table,
    monomial_str,
    positive_paths,
    quotient_data,
    small_resolution_24,
)
from taut24.lattice import abs_determinant, in_cone


@pytest.fixture(scope="module")
def ladder():
    return build_ladder_24()


@pytest.fixture(scope="module")
def fan(ladder):
    return fan_from_ladder(ladder)


def test_boundary_vectors(ladder):
    # head minus tail in the black-dot basis (A, B, C, D), worked by hand
    assert boundary_delta(ladder) == {
        "e1": (1, 0, 0, 0),
        "e2": (-1, 0, 1, 0),
        "e3": (-1, 1, 0, 0),
        "e4": (0, 0, -1, 1),
        "e5": (0, -1, 0, 1),
        "e6": (0, 0, 0, -1),
    }


def test_six_positive_paths(ladder):
    paths = positive_paths(ladder)
    assert [p.label for p in paths] == ["pi12", "pi13", "pi14", "pi23", "pi24", "pi34"]
    crossed = {p.label: sorted(p.edges) for p in paths}
    assert crossed == {
        "pi12": ["e1"], "pi13": ["e2", "e3"], "pi14": ["e2", "e5"],
        "pi23": ["e3", "e4"], "pi24": ["e4", "e5"], "pi34": ["e6"],
    }


def test_fan_table_matches_reference(ladder):
    got = [(r["path"], tuple(r["cone"]), r["w_sigma_hat"]) for r in fan_table(ladder)]
    assert got == list(reference.FAN_TABLE)


def test_roof_and_shadows(ladder):
    assert ladder.roof == reference.ROOF
    assert ladder.shadow("e2") == ("e2", "e5")
    assert ladder.shadow("e4") == ("e4", "e3")
    assert ladder.shadow("e1") == ("e1",)
    with pytest.raises(LadderError):
        ample_divisor_from_roof(ladder, "e3")


def test_irrelevant_ideal_generators(fan):
    q = quotient_data(fan)
    assert sorted(monomial_str(m) for m in q.irrelevant) == sorted(
        ["w1", "w2*w3", "w2*w5", "w3*w4", "w4*w5", "w6"]
    )


def test_torus_action_weights(fan):
    q = quotient_data(fan)
    assert q.torus_weights() == ["lam*mu", "lam", "mu", "lam", "mu", "lam*mu"]
    for r in q.relations:
        assert all(sum(c * ray[j] for c, ray in zip(r, fan.rays)) == 0 for j in range(4))


def test_four_L_is_anticanonical(ladder, fan):
    q = quotient_data(fan)
    for e in ladder.roof:
        a = ample_divisor_from_roof(ladder, e)
        assert q.class_of([4 * x for x in a]) == q.class_of(anticanonical(fan))
    # all roof edges give the same class
    assert len({q.class_of(ample_divisor_from_roof(ladder, e)) for e in ladder.roof}) == 1


def test_singular_cones(fan):
    names = fan.ray_names
    singular = sorted(tuple(names[i] for i in c) for c in fan.cones if len(c) > 4)
    assert singular == sorted(reference.SINGULAR_CONES)
    assert not fan.is_smooth()


def test_resolution(fan):
    res = small_resolution_24(fan)
    assert len(res.cones) == 8
    assert all(abs_determinant(res.cone_rays(c)) == 1 for c in res.cones)
    assert res.is_smooth()
    assert res.refines(fan)
    names = res.ray_names
    pieces = {tuple(names[i] for i in c) for c in res.cones}
    assert {("e1", "e2", "e3", "e4"), ("e1", "e2", "e4", "e5"),
            ("e2", "e4", "e5", "e6"), ("e2", "e3", "e4", "e6")} <= pieces


def test_resolution_rejects_other_fans():
    other = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    with pytest.raises(LadderError):
        small_resolution_24(other)


def test_fan_rejects_non_primitive_rays():
    with pytest.raises(LadderError):
        Fan(2, ((2, 0), (0, 1)), ((0, 1),))


def test_completeness_on_random_points(fan):
    rng = random.Random(20241015)
    res = small_resolution_24(fan)
    for _ in range(1000):
        p = tuple(rng.randint(-50, 50) for _ in range(4))
        assert fan.contains(p), p
        assert res.contains(p), p


@given(st.tuples(*(st.integers(-20, 20) for _ in range(4))))
@settings(max_examples=200, deadline=None)
def test_resolution_cones_lie_in_the_cone_they_refine(p):
    d = build_ladder_24()
    fan = fan_from_ladder(d)
    res = small_resolution_24(fan)
    for k in res.contains(p):
        rays = res.cone_rays(res.cones[k])
        assert any(all(in_cone(r, fan.cone_rays(c)) for r in rays) and in_cone(p, fan.cone_rays(c))
                   for c in fan.cones)


def test_fan_json_round_trip(fan):
    for f in (fan, small_resolution_24(fan)):
        data = json.loads(f.dumps())
        assert Fan.from_json(data) == f
        assert Fan.from_json(data).dumps() == f.dumps()
