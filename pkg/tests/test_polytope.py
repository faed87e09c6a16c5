from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taut24 import reference
from taut24.gkz import default_context, resolved_fan
from taut24.ladder import Fan, ample_divisor_from_roof, build_ladder_24, fan_from_ladder
from taut24.lattice import dot
from taut24.polytope import (
    LatticePolytope,
    PolytopeError,
    dual_polytope,
    is_normal,
    is_reflexive,
    nonpoly_h1_dimension,
    polytope_from_divisor,
    root_by_alpha,
    roots,
)


@pytest.fixture(scope="module")
def delta():
    return default_context().polytope


@pytest.fixture(scope="module")
def ample():
    d = build_ladder_24()
    return polytope_from_divisor(fan_from_ladder(d), ample_divisor_from_roof(d, d.roof[0]))


def brute_points(p: LatticePolytope, bound: int):
    rng = range(-bound, bound + 1)
    return sorted(m for m in itertools.product(rng, repeat=p.dimension)
                  if all(dot(m, r) >= -a for r, a in p.inequalities))


def test_ample_points_match_reference(ample):
    assert sorted(ample.lattice_points) == sorted(reference.AMPLE_POINTS)
    assert ample.interior_lattice_points() == []
    assert not is_reflexive(ample)


def test_anticanonical_vertices_and_count(delta):
    verts = delta.integral_vertices()
    assert set(reference.ANTICANONICAL_VERTICES) <= set(verts)
    assert len(verts) == 6
    assert len(delta.lattice_points) == 105
    assert list(delta.lattice_points) == brute_points(delta, 4)


def test_anticanonical_is_four_ample_translated(ample, delta):
    four = ample.scaled(4).translated(reference.SHIFT)
    assert four.same_set(delta)
    assert set(four.lattice_points) == set(delta.lattice_points)


def test_reflexive_and_dual(delta):
    assert is_reflexive(delta)
    dual = dual_polytope(delta)
    assert sorted(dual.integral_vertices()) == sorted(resolved_fan().rays)


def test_f_vector(delta):
    f = delta.f_vector()
    assert f == (6, 13, 13, 6)
    # Euler relation for a 4-polytope and duality of face lattices
    assert f[0] - f[1] + f[2] - f[3] == 0
    assert dual_polytope(delta).f_vector() == tuple(reversed(f))


def test_normality(ample):
    assert is_normal(ample, 4)
    with pytest.raises(PolytopeError):
        is_normal(ample, 1)


def test_reeve_tetrahedron_is_not_normal():
    reeve = LatticePolytope(3, [((0, 0, 1), 0), ((0, 2, -1), 0), ((2, 0, -1), 0), ((-2, -2, 1), 2)])
    assert sorted(reeve.lattice_points) == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 2)]
    assert not is_normal(reeve, 2)


def simplex4():
    # P^4 anticanonical polytope: <m, e_i> >= -1, <m, -sum e_i> >= -1
    rays = [tuple(int(i == j) for j in range(4)) for i in range(4)] + [(-1, -1, -1, -1)]
    return LatticePolytope(4, [(r, 1) for r in rays])


def test_simplex_hodge_counts():
    p = simplex4()
    assert p.f_vector() == (5, 10, 10, 5)
    assert is_reflexive(p)
    assert nonpoly_h1_dimension(p) == 0


def test_polygon_hodge_counts():
    hexagon = LatticePolytope(2, [(r, 1) for r in [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)]])
    assert nonpoly_h1_dimension(hexagon) == 0
    # small triangle conv{(1,0),(0,1),(-1,-1)}: each vertex is dual to an edge of
    # the big triangle with two interior points, so 3 * 1 * 2
    small = LatticePolytope(2, [((-1, -1), 1), ((2, -1), 1), ((-1, 2), 1)])
    assert sorted(small.integral_vertices()) == [(-1, -1), (0, 1), (1, 0)]
    assert nonpoly_h1_dimension(small) == 6
    # the big triangle pairs its vertices with edges that have no interior points
    big = LatticePolytope(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])
    assert nonpoly_h1_dimension(big) == 0


def test_rigidity_count(delta):
    assert nonpoly_h1_dimension(delta) == 0


def test_errors():
    half = LatticePolytope(2, [((1, 0), 1)])
    assert not half.is_bounded()
    with pytest.raises(PolytopeError):
        half.vertices
    off = LatticePolytope(1, [((1,), -1), ((-1,), 3)])  # 1 <= x <= 3
    with pytest.raises(PolytopeError):
        dual_polytope(off)
    with pytest.raises(PolytopeError):
        nonpoly_h1_dimension(off)
    with pytest.raises(PolytopeError):
        LatticePolytope(2, [((1, 0, 0), 1)])


def test_json_round_trip(delta):
    data = json.loads(delta.dumps(with_points=True))
    assert len(data["lattice_points"]) == 105
    back = LatticePolytope.from_json(data)
    assert back.same_set(delta) and back.dumps() == delta.dumps()


def test_fourteen_roots():
    rs = default_context().roots
    assert sorted(r.alpha for r in rs) == sorted(reference.ROOTS)
    assert all(r.verify(resolved_fan()) for r in rs)
    assert root_by_alpha(resolved_fan(), (0, 1, 1, 1)).ray == 5
    with pytest.raises(PolytopeError):
        root_by_alpha(resolved_fan(), (1, 0, 0, 0))


def test_roots_of_projective_plane():
    # Aut(P^2) = PGL_3 has six roots
    fan = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    assert len(roots(fan)) == 6


def test_roots_need_complete_fan():
    fan = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    with pytest.raises(PolytopeError):
        roots(fan)


boxes = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))


@given(boxes, st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_lattice_points_match_brute_force(box, cut):
    a, b, c = box
    ineqs = [((1, 0, 0), a), ((-1, 0, 0), a), ((0, 1, 0), b), ((0, -1, 0), b),
             ((0, 0, 1), c), ((0, 0, -1), c), ((1, 1, 1), cut)]
    p = LatticePolytope(3, ineqs)
    assert list(p.lattice_points) == brute_points(p, 3)
    for v in p.vertices:
        assert len(p.tight(v)) >= 3
