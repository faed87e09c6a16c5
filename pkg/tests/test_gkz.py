from __future__ import annotations

import itertools
from math import comb

import pytest

from taut24 import reference
from taut24.gkz import (
    CiContext,
    GkzError,
    box_operators,
    character_operator,
    ci_root_dropped_terms,
    ci_system,
    ci_to_single,
    default_context,
    euler_operator,
    extended_gkz_system,
    root_dropped_terms,
    root_operator,
    scaling_operator,
    torus_operator,
)
from taut24.lattice import dot
from taut24.polytope import Root
from taut24.weyl import WeylOperator, op_commutator


@pytest.fixture(scope="module")
def ctx():
    return default_context()


def test_context(ctx):
    assert len(ctx.points) == 105
    assert ctx.points[ctx.origin_index] == (0, 0, 0, 0)
    assert ctx.space.labels == ctx.points
    with pytest.raises(GkzError):
        ctx.root((1, 0, 0, 0))


def test_root_operator_formula(ctx):
    # Z_alpha = sum_J (<J, rho> + 1) b_J d_(J + alpha), written directly
    for r in ctx.roots:
        rho = ctx.fan.rays[r.ray]
        items = []
        for i, J in enumerate(ctx.points):
            K = tuple(a + b for a, b in zip(J, r.alpha))
            if K in ctx.space:
                items.append((dot(J, rho) + 1, ((i, 1),), ((ctx.space.index(K), 1),)))
        assert root_operator(ctx, r) == WeylOperator.from_sum(ctx.space, items)


def test_roots_are_well_defined(ctx):
    assert len(ctx.roots) == 14
    for r in ctx.roots:
        assert root_dropped_terms(ctx, r) == [], r.alpha


def test_non_root_rejected(ctx):
    with pytest.raises(GkzError):
        root_operator(ctx, Root((1, 0, 0, 0), 0, (0,) * 6))


def test_torus_weights_of_root_operators(ctx):
    for r in ctx.roots:
        z = root_operator(ctx, r)
        for j in range(1, 5):
            assert op_commutator(torus_operator(ctx, j), z) == -r.alpha[j - 1] * z
        assert not op_commutator(euler_operator(ctx), z)


def test_torus_and_euler(ctx):
    with pytest.raises(GkzError):
        torus_operator(ctx, 5)
    e = euler_operator(ctx)
    assert len(e) == 106
    assert character_operator(ctx, (1, 0, 0, 0)) == torus_operator(ctx, 1)


def test_scalings_relate_to_torus_and_euler(ctx):
    # sum_i c_i (<mu, rho_i> + 1) is a character plus a multiple of Euler
    rays = ctx.fan.rays
    for i in range(6):
        s = scaling_operator(ctx, i)
        assert s == character_operator(ctx, rays[i]) + euler_operator(ctx)
    assert scaling_operator(ctx, 0, constant=0) == character_operator(ctx, rays[0]) + euler_operator(ctx) - 1


def test_box_count_by_brute_force(ctx):
    sums = {}
    for u, v in itertools.combinations_with_replacement(range(105), 2):
        s = tuple(a + b for a, b in zip(ctx.points[u], ctx.points[v]))
        sums[s] = sums.get(s, 0) + 1
    expected = sum(comb(n, 2) for n in sums.values())
    boxes = box_operators(ctx, 2)
    assert len(boxes) == expected == 24521
    assert len({b.to_text() for b in boxes}) == expected


def test_box_degree_three_chains(ctx):
    boxes3 = box_operators(ctx, 3)
    assert len(boxes3) > 24521
    for b in boxes3[24521:]:
        assert b.order == 3
    with pytest.raises(GkzError):
        box_operators(ctx, 1)


def test_extended_system_counts(ctx):
    assert extended_gkz_system(ctx).counts() == {"torus": 4, "euler": 1, "root": 14, "box": 24521}


@pytest.fixture(scope="module")
def ci():
    return CiContext(default_context().fan, reference.CI_SPLIT_22)


def test_ci_context(ci):
    assert ci.row_classes() == [(2, 2), (2, 2)]
    assert [len(p.lattice_points) for p in ci.polytopes] == [20, 20]
    assert ci.expansion_points == ((0, 0, 0, 0), (0, 0, 0, 0))


def test_ci_counts_and_roots(ci):
    assert ci_system(ci).counts() == {"torus": 4, "euler": 2, "root": 14, "box": 1062}
    for r in default_context().roots:
        assert ci_root_dropped_terms(ci, r) == []


def test_ci_rejects_bad_partitions():
    fan = default_context().fan
    with pytest.raises(GkzError):
        CiContext(fan, ((1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 0)))
    with pytest.raises(GkzError):
        CiContext(fan, ((1, 1, 1),))


def test_one_factor_ci_is_the_hypersurface(ctx):
    one = CiContext(ctx.fan, ((1,) * 6,))
    mapped = sorted(ci_to_single(one, ctx, g.operator).to_text() for g in ci_system(one).generators)
    ref = sorted(g.operator.to_text() for g in extended_gkz_system(ctx).generators)
    assert mapped == ref
    with pytest.raises(GkzError):
        ci_to_single(CiContext(ctx.fan, reference.CI_SPLIT_22), ctx, WeylOperator.zero(ctx.space))
