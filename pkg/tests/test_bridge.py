from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taut24 import reference
from taut24.bridge import (
    BridgeError,
    PushforwardError,
    all_pass,
    degenerate_check,
    diagonal_character,
    dictionary,
    extend_root_to_family,
    moment_identification,
    moves_exceptional_fiber,
    phi,
    phi_closed_form,
    phi_kernel_vectors,
    printed_E14,
    pushforward,
    reconstruct_X_system,
    retained_roots,
    root_operator_E,
    scaling_operator_E,
    table_row,
    verify_correspondence_table,
    verify_worked_examples,
    w_substitution_matrix,
)
from taut24.gkz import default_context, root_operator
from taut24.grassmann import (
    Z_NAMES,
    basis_element,
    family_action,
    operator_from_substitution,
    preserves_ideal,
    quartic_indices,
    quartic_space,
    sl4_basis,
)
from taut24.weyl import WeylOperator, op_commutator


@pytest.fixture(scope="module")
def ctx():
    return default_context()


def test_dictionary_matches_reference():
    dic = dictionary()
    assert dic.describe() == {
        "z12": "w1", "z13": "w2*w3", "z14": "w2*w5", "z23": "w3*w4", "z24": "w4*w5", "z34": "w6",
    }
    assert dic.points == reference.AMPLE_POINTS
    assert dic.shift == reference.SHIFT


def test_phi_closed_form_and_vertices():
    for I in quartic_indices():
        assert phi(I) == phi_closed_form(I)
    # the pure powers z_k^4 go to the printed vertices, in path order
    pure = [tuple(4 * (j == k) for j in range(6)) for k in range(6)]
    assert [phi(I) for I in pure] == [
        (3, 2, 2, 1), (-1, 2, 2, 1), (-1, -2, 2, 1), (-1, 2, -2, 1), (-1, -2, -2, 1), (-1, -2, -2, -3),
    ]
    with pytest.raises(BridgeError):
        phi((1, 1, 1, 1, 1, 1))


def test_phi_is_onto_with_21_dimensional_kernel(ctx):
    mi = moment_identification()
    assert set(mi.fibers) == set(ctx.points)
    assert sum(len(f) for f in mi.fibers.values()) == 126
    assert len(phi_kernel_vectors(ctx)) == 21


def test_pushforward_rejects_non_constant_operators(ctx):
    space = quartic_space()
    mi = moment_identification()
    J, members = next((J, f) for J, f in sorted(mi.fibers.items()) if len(f) > 1)
    i = space.index(members[0])
    op = WeylOperator(space, {(((i, 1),), ((i, 1),)): 1})
    with pytest.raises(PushforwardError) as exc:
        pushforward(op, ctx)
    assert exc.value.fiber == J


def test_pushforward_rejects_higher_order(ctx):
    space = quartic_space()
    op = WeylOperator(space, {(((0, 2),), ((0, 1),)): 1})
    with pytest.raises(BridgeError):
        pushforward(op, ctx)


def test_pushforward_of_pure_derivatives(ctx):
    space = quartic_space()
    I = quartic_indices()[5]
    op = WeylOperator.d(space, I)
    out = pushforward(op, ctx).operator
    assert out == WeylOperator.d(ctx.space, phi(I))


def test_correspondence_table():
    report = verify_correspondence_table()
    assert len(report) == 15 and all_pass(report)
    by = {e["check"]: e for e in report}
    assert by["table E12"]["t"] == 1 and by["table E12"]["scalar"] == "1"
    assert by["table E14"]["t"] == 0 and by["table E14"]["scalar"] == "-1"
    for e in report:
        assert e["scalar"] in ("1", "-1")


def test_table_row_reports_a_mismatch():
    row = table_row("E12", "root", (0, 1, 0, 0))
    assert not row["pass"]


def test_worked_examples():
    assert all_pass(verify_worked_examples())
    # E14 on the quartic space carries t only on the i4 term
    assert printed_E14().t_degree == 1


def test_diagonal_character(ctx):
    op = operator_from_substitution(family_action(basis_element("E11-E22")).matrix).specialize(1)
    m, kappa = diagonal_character(op, ctx)
    assert m == (-1, 0, 2, -1) and kappa == 0
    assert diagonal_character(root_operator(ctx, ctx.roots[0]), ctx) is None


def test_missing_roots(ctx):
    moving = sorted(r.alpha for r in ctx.roots if moves_exceptional_fiber(r))
    assert moving == sorted(reference.MISSING_ROOTS)
    assert len(retained_roots(ctx)) == 12


def test_root_substitutions_from_w_variables(ctx):
    r = ctx.root((0, 0, 1, 1))
    n = w_substitution_matrix(r)
    nonzero = {(Z_NAMES[c], Z_NAMES[k]): v for c, row in enumerate(n) for k, v in enumerate(row) if v}
    assert nonzero == {("z34", "z14"): 1}


def test_extension_of_a_non_semisimple_root(ctx):
    ext = extend_root_to_family(ctx.root((0, 0, 1, 1)))
    n1 = {(Z_NAMES[c], Z_NAMES[k]): v for c, row in enumerate(ext.n1) for k, v in enumerate(row) if v}
    assert n1 == {("z23", "z12"): -1}
    assert ext.c0 == 0 and ext.c1 == 0
    for t in (0, 1, 5, Fraction(-1, 3)):
        assert preserves_ideal(ext.at(t), t)[0]


def test_extension_of_semisimple_roots_needs_no_correction(ctx):
    for alpha in [(0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 1, 0), (0, 1, 0, 0)]:
        ext = extend_root_to_family(ctx.root(alpha))
        assert all(v == 0 for row in ext.n1 for v in row)


def test_moving_roots_are_not_extended(ctx):
    with pytest.raises(BridgeError):
        extend_root_to_family(ctx.root((1, 1, 1, 1)))


def test_all_sl4_limits_are_fiber_constant(ctx):
    for x in sl4_basis():
        op = operator_from_substitution(family_action(x).matrix).specialize(0)
        pushforward(op, ctx)


def _retained_generators(ctx):
    ops = [scaling_operator_E(i) for i in range(6)]
    ops += [root_operator_E(r) for r in retained_roots(ctx)]
    return ops


def test_retained_generators_push_forward_to_gkz_operators(ctx):
    for r in retained_roots(ctx):
        assert pushforward(root_operator_E(r), ctx).operator == root_operator(ctx, r)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_pushforward_commutes_with_brackets(data):
    ctx = default_context()
    ops = _retained_generators(ctx)
    a = data.draw(st.sampled_from(ops))
    b = data.draw(st.sampled_from(ops))
    lhs = pushforward(op_commutator(a, b), ctx).operator
    rhs = op_commutator(pushforward(a, ctx).operator, pushforward(b, ctx).operator)
    assert lhs == rhs


def test_pushforward_commutes_with_all_bracket_pairs(ctx):
    ops = _retained_generators(ctx)
    pushed = [pushforward(o, ctx).operator for o in ops]
    for (a, pa), (b, pb) in itertools.combinations(zip(ops, pushed), 2):
        assert pushforward(op_commutator(a, b), ctx).operator == op_commutator(pa, pb)


def test_degenerate_check():
    report = degenerate_check()
    failing = [e for e in report if not e["pass"]]
    assert failing == []


def test_reconstruct():
    report = reconstruct_X_system()
    failing = [e for e in report if not e["pass"]]
    assert failing == []
    by = {e["check"]: e for e in report}
    assert by["(iii) bracket-generated torus span at t=1"]["got"] == 3
    assert by["(iv) symmetry span at t=1"]["got"] == [15, 16]
    assert by["(iv) reinstated zeta_t spans Q4 at t=1"]["got"] == 21
