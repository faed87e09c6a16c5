from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

import pytest
import sympy

from taut24.grassmann import (
    PAIRS,
    GrassmannError,
    Sl4Element,
    basis_element,
    euler_E,
    evaluate_q,
    evaluate_quartic,
    family_action,
    operator_from_substitution,
    pluecker_point,
    preserves_ideal,
    q4_vectors,
    quadric_indices,
    quartic_indices,
    sl4_basis,
    sl4_operator,
    taut_system_X,
    vadd,
    veronese_binomials,
    wedge2_action,
)
from taut24.weyl import op_commutator


def test_index_sets():
    assert len(quartic_indices()) == comb(9, 5) == 126
    assert len(quadric_indices()) == comb(7, 5) == 21
    assert list(quartic_indices()) == sorted(quartic_indices())


def test_basis():
    labels = [x.label for x in sl4_basis()]
    assert labels[:3] == ["E11-E22", "E11-E33", "E11-E44"]
    assert len(labels) == 15 == len(set(labels))
    with pytest.raises(GrassmannError):
        basis_element("E55")
    with pytest.raises(GrassmannError):
        Sl4Element(((1, 0, 0, 0),) * 4)


def test_pluecker_points_satisfy_the_quadric():
    rng = random.Random(7)
    for _ in range(50):
        m = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(2)]
        assert evaluate_q(pluecker_point(m), 1) == 0


def test_wedge_action_is_the_derivative_of_minors():
    s = sympy.Symbol("s")
    p = sympy.Matrix(2, 4, sympy.symbols("p0:8"))
    z = sympy.Matrix([p[0, i - 1] * p[1, j - 1] - p[0, j - 1] * p[1, i - 1] for i, j in PAIRS])
    for x in sl4_basis():
        moved = p * (sympy.eye(4) + s * sympy.Matrix(x.matrix))
        zs = [moved[0, i - 1] * moved[1, j - 1] - moved[0, j - 1] * moved[1, i - 1] for i, j in PAIRS]
        deriv = sympy.Matrix([sympy.expand(sympy.diff(q, s).subs(s, 0)) for q in zs])
        m = sympy.Matrix(wedge2_action(x))
        assert sympy.expand(deriv - m * z) == sympy.zeros(6, 1), x.label


def test_every_element_preserves_the_pluecker_quadric():
    for x in sl4_basis():
        assert preserves_ideal(wedge2_action(x), 1) == (True, 0), x.label


@pytest.mark.parametrize("t", [0, 1, 3, Fraction(1, 2)])
def test_family_preserves_the_degenerate_quadrics(t):
    for x in sl4_basis():
        ok, c = preserves_ideal(family_action(x).at(t), t)
        assert ok and c == 0, (x.label, t)


def test_family_rescaling_powers():
    rescaled = {x.label for x in sl4_basis() if family_action(x).t_power}
    assert rescaled == {"E31", "E32", "E41", "E42"}
    assert all(family_action(x).t_power <= 1 for x in sl4_basis())
    # at t = 1 the family equals the plain action
    for x in sl4_basis():
        assert family_action(x).at(1) == [[Fraction(v) for v in row] for row in wedge2_action(x)]


def test_bracket_homomorphism_on_all_basis_pairs():
    ops = {x.label: operator_from_substitution(wedge2_action(x)) for x in sl4_basis()}
    for x, y in itertools.combinations(sl4_basis(), 2):
        lhs = operator_from_substitution(wedge2_action(x.bracket(y)))
        assert lhs == -op_commutator(ops[x.label], ops[y.label]), (x.label, y.label)


def test_symbolic_operator_specializes():
    x = basis_element("E14")
    op = sl4_operator(x)
    assert op.t_degree == 1
    assert op.specialize(1) == sl4_operator(x, 1)
    assert op.specialize(1) == operator_from_substitution(wedge2_action(x))


def _point_on_qt(rng, t):
    while True:
        z = [Fraction(rng.randint(-6, 6)) for _ in range(6)]
        # solve q_t = 0 for z23 (coefficient z14)
        if z[2] != 0:
            z[3] = (z[1] * z[4] - t * z[0] * z[5]) / z[2]
            return z


@pytest.mark.parametrize("t", [0, 1, Fraction(2, 3)])
def test_q4_vectors_vanish_on_the_quadric(t):
    rng = random.Random(11)
    vecs = q4_vectors(t)
    assert len(vecs) == 21
    for _ in range(20):
        z = _point_on_qt(rng, t)
        assert evaluate_q(z, t) == 0
        assert all(evaluate_quartic(v, z, t) == 0 for v in vecs)


def test_symbolic_q4_vectors():
    rng = random.Random(5)
    z = _point_on_qt(rng, 3)
    assert all(evaluate_quartic(v, z, 3) == 0 for v in q4_vectors(None))


def test_veronese_binomial_count_by_brute_force():
    E = quartic_indices()
    sums = {}
    for u, v in itertools.combinations_with_replacement(range(len(E)), 2):
        s = vadd(E[u], E[v])
        sums[s] = sums.get(s, 0) + 1
    expected = sum(comb(n, 2) for n in sums.values())
    assert len(veronese_binomials()) == expected == 28155


def test_taut_system_counts():
    sys = taut_system_X(1)
    assert sys.counts() == {"symmetry": 15, "euler": 1, "polynomial": 21, "binomial": 28155}
    symbolic = taut_system_X(None)
    assert symbolic.parameter_t is None
    degrees = [g.operator.t_degree for g in symbolic.generators if g.tag == "symmetry"]
    assert max(degrees) == 1
    assert euler_E() in [g.operator for g in sys.generators if g.tag == "euler"]
