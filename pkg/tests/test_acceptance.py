"""Acceptance suite: one PASS/FAIL line per criterion, with its runtime budget.

Run with ``pytest tests/test_acceptance.py -v``; the status lines are printed
even without ``-s``.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from taut24 import checks
from taut24.bridge import pushforward, retained_roots, root_operator_E, scaling_operator_E
from taut24.gkz import default_context, root_dropped_terms
from taut24.grassmann import family_action, operator_from_substitution, sl4_basis, wedge2_action
from taut24.weyl import VariableSpace, WeylOperator, mono, op_commutator

CRITERIA = [
    (1, "fan table and small resolution", ["fan"], 1.0),
    (2, "polytope tables", ["polytope"], 5.0),
    (3, "fourteen roots", ["roots"], 1.0),
    (4, "correspondence table and worked examples", ["table"], 30.0),
    (5, "missing roots", ["missing"], 1.0),
    (6, "degenerate limit lands in the variant system", ["degenerate"], 120.0),
    (7, "reconstruction of the symmetry space at t=1", ["reconstruct"], 120.0),
    (8, "principal period annihilated at k_max=3", ["periods"], 600.0),
    (9, "complete intersection (2,2) at k_max=2", ["ci"], 600.0),
    (10, "rigidity count", ["rigidity"], 10.0),
]


def _report(capsys, number, title, ok, seconds, budget, detail=""):
    status = "PASS" if ok else "FAIL"
    limit = f" (limit {budget:g} s)" if budget else ""
    line = f"criterion {number:2d} {status}  {title}: {seconds:.2f} s{limit}"
    if detail:
        line += f"  [{detail}]"
    with capsys.disabled():
        print("\n" + line)


@pytest.mark.parametrize("number,title,names,budget", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(capsys, number, title, names, budget):
    start = time.perf_counter()
    reports = [checks.run(n) for n in names]
    seconds = time.perf_counter() - start
    failed = [f"{r['check']}: {e['check']}" for r in reports for e in r["entries"] if not e["pass"]]
    ok = not failed and seconds < budget
    _report(capsys, number, title, ok, seconds, budget, "; ".join(failed))
    assert not failed, failed
    assert seconds < budget, f"{seconds:.2f} s exceeds {budget} s"


# --- criterion 11: property suites --------------------------------------------------

def _bracket_homomorphism() -> list[str]:
    ops = {x.label: operator_from_substitution(wedge2_action(x)) for x in sl4_basis()}
    bad = []
    for x, y in itertools.combinations(sl4_basis(), 2):
        lhs = operator_from_substitution(wedge2_action(x.bracket(y)))
        if lhs != -op_commutator(ops[x.label], ops[y.label]):
            bad.append(f"{x.label},{y.label}")
    return bad


def _random_operator(rng: random.Random, space: VariableSpace) -> WeylOperator:
    n = len(space)
    items = []
    for _ in range(rng.randint(1, 4)):
        xs = mono([(rng.randrange(n), rng.randint(1, 2)) for _ in range(rng.randint(0, 2))])
        ds = mono([(rng.randrange(n), rng.randint(1, 2)) for _ in range(rng.randint(0, 2))])
        items.append((rng.randint(-3, 3), xs, ds))
    return WeylOperator.from_sum(space, items)


def _jacobi(trials: int = 200) -> list[int]:
    rng = random.Random(2024)
    space = VariableSpace("J", ((0,), (1,), (2,)), symbol="x")
    bad = []
    for k in range(trials):
        a, b, c = (_random_operator(rng, space) for _ in range(3))
        total = (op_commutator(a, op_commutator(b, c))
                 + op_commutator(b, op_commutator(c, a))
                 + op_commutator(c, op_commutator(a, b)))
        if total:
            bad.append(k)
    return bad


def _fiber_constancy() -> list[str]:
    ctx = default_context()
    ops = {f"{x.label} at t=0": operator_from_substitution(family_action(x).matrix).specialize(0)
           for x in sl4_basis()}
    ops.update({f"scaling {i}": scaling_operator_E(i) for i in range(6)})
    ops.update({f"root {r.alpha}": root_operator_E(r) for r in retained_roots(ctx)})
    bad = []
    for name, op in ops.items():
        try:
            pushforward(op, ctx)
        except Exception as exc:
            bad.append(f"{name}: {exc}")
    return bad


def _root_well_definedness() -> list[str]:
    ctx = default_context()
    out = [str(r.alpha) for r in ctx.roots if root_dropped_terms(ctx, r)]
    if len(ctx.roots) != 14:
        out.append(f"{len(ctx.roots)} roots")
    return out


def test_criterion11(capsys):
    start = time.perf_counter()
    suites = {
        "bracket homomorphism": _bracket_homomorphism(),
        "Jacobi": _jacobi(),
        "fiber-constancy": _fiber_constancy(),
        "root well-definedness": _root_well_definedness(),
    }
    seconds = time.perf_counter() - start
    failed = [f"{k}: {v}" for k, v in suites.items() if v]
    _report(capsys, 11, "property suites", not failed, seconds, None, "; ".join(failed))
    assert not failed, failed
