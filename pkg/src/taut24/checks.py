"""Verification runs that compare computed objects with the reference data.

Every check returns a list of report entries ``{"check", "expected", "got",
"pass", ...}``; a run passes when every entry does.
"""

from __future__ import annotations

import time
from typing import Callable, Sequence

from . import bridge, reference
from .gkz import (
    CiContext,
    ci_system,
    ci_to_single,
    default_context,
    extended_gkz_system,
    root_dropped_terms,
    ci_root_dropped_terms,
)
from .grassmann import quartic_indices
from .ladder import (
    anticanonical,
    build_ladder_24,
    fan_from_ladder,
    fan_table,
    quotient_data,
    small_resolution_24,
)
from .lattice import abs_determinant
from .period import (
    annihilation_residual,
    ci_principal_period,
    direct_first_order_apply,
    level2_bruteforce,
    principal_period,
)
from .polytope import (
    is_normal,
    is_reflexive,
    nonpoly_h1_dimension,
    polytope_from_divisor,
    roots,
)

Report = list[dict]


def _entry(check, expected, got, ok=None, **extra) -> dict:
    ok = (expected == got) if ok is None else ok
    out = {"check": check, "expected": expected, "got": got, "pass": bool(ok)}
    out.update(extra)
    return out


def check_fan() -> Report:
    d = build_ladder_24()
    rows = fan_table(d)
    got = [(r["path"], tuple(r["cone"]), r["w_sigma_hat"]) for r in rows]
    out = [_entry("positive-path table", [list(map(str, r)) for r in reference.FAN_TABLE],
                  [list(map(str, r)) for r in got], got == list(reference.FAN_TABLE))]
    out.append(_entry("roof", list(reference.ROOF), list(d.roof)))
    fan = fan_from_ladder(d)
    names = fan.ray_names
    singular = sorted(tuple(names[i] for i in c) for c in fan.cones if len(c) > fan.dimension)
    out.append(_entry("singular cones", [list(c) for c in reference.SINGULAR_CONES], [list(c) for c in singular]))
    res = small_resolution_24(fan)
    dets = [abs_determinant([res.rays[i] for i in c]) for c in res.cones]
    out.append(_entry("resolution maximal cones", 8, len(res.cones)))
    out.append(_entry("resolution |det| all 1", [1] * 8, dets))
    out.append(_entry("resolution refines the fan", True, res.refines(fan)))
    return out


def check_polytopes() -> Report:
    ctx = default_context()
    d = build_ladder_24()
    fan = fan_from_ladder(d)
    out = []
    divisors = {e: bridge.ample_divisor_from_roof(d, e) for e in d.roof}
    normalized = set()
    for a in divisors.values():
        pts = polytope_from_divisor(fan, a).lattice_points
        normalized.add(tuple(sorted(tuple(x - y for x, y in zip(p, pts[0])) for p in pts)))
    out.append(_entry("L independent of the roof edge up to translation", 1, len(normalized)))
    ample = polytope_from_divisor(fan, divisors[d.roof[0]])
    out.append(_entry("ample polytope points", sorted(map(list, reference.AMPLE_POINTS)), sorted(map(list, ample.lattice_points))))
    out.append(_entry("dictionary points in path order", [list(p) for p in reference.AMPLE_POINTS],
                      [list(p) for p in bridge.dictionary().points]))
    out.append(_entry("shift", list(reference.SHIFT), list(bridge.dictionary().shift)))
    delta = ctx.polytope
    verts = delta.integral_vertices() or []
    out.append(_entry("printed vertices among anticanonical vertices", True,
                      set(reference.ANTICANONICAL_VERTICES) <= set(verts)))
    four = [4 * a for a in divisors[d.roof[0]]]
    shifted = polytope_from_divisor(fan, four).translated(reference.SHIFT)
    out.append(_entry("Delta = 4 Delta_L + shift", True, shifted.same_set(delta)))
    out.append(_entry("-K = 4L + div", list(anticanonical(fan)),
                      [4 * a - sum(s * r for s, r in zip(reference.SHIFT, rho)) for a, rho in zip(divisors[d.roof[0]], fan.rays)]))
    n = len(delta.lattice_points)
    image = len(set(bridge.moment_identification().image.values()))
    via_kernel = len(quartic_indices()) - len(bridge.phi_kernel_vectors(ctx))
    out.append(_entry("|Delta cap M|", 105, n))
    out.append(_entry("|Phi(E)|", 105, image))
    out.append(_entry("126 - dim ker Phi", 105, via_kernel))
    out.append(_entry("is_normal(Delta_L, 4)", True, is_normal(ample, 4)))
    out.append(_entry("Delta reflexive", True, is_reflexive(delta)))
    out.append(_entry("f-vector", [6, 13, 13, 6], list(delta.f_vector())))
    return out


def check_roots() -> Report:
    ctx = default_context()
    got = sorted(r.alpha for r in ctx.roots)
    out = [_entry("roots", sorted(map(list, reference.ROOTS)), [list(a) for a in got])]
    bad = [list(r.alpha) for r in ctx.roots if root_dropped_terms(ctx, r) or not r.verify(ctx.fan)]
    out.append(_entry("root well-definedness (dropped terms vanish)", [], bad))
    return out


def check_table() -> Report:
    return bridge.verify_correspondence_table() + bridge.verify_worked_examples()


def check_missing() -> Report:
    ctx = default_context()
    moving = sorted(r.alpha for r in ctx.roots if bridge.moves_exceptional_fiber(r))
    return [_entry("roots moving the exceptional fibers", sorted(map(list, reference.MISSING_ROOTS)), [list(a) for a in moving])]


def check_degenerate() -> Report:
    return bridge.degenerate_check()


def check_reconstruct() -> Report:
    return bridge.reconstruct_X_system()


def _residual_report(system, series, label: str) -> Report:
    bad = []
    for g in system.generators:
        if not annihilation_residual(g.operator, series).is_zero():
            bad.append(f"{g.tag} {g.provenance}")
    counts = system.counts()
    return [_entry(f"{label}: nonzero residuals", [], bad, counts=counts, generators=len(system.generators))]


def check_periods(k_max: int = 3, box_degree: int = 2) -> Report:
    ctx = default_context()
    s = principal_period(ctx, k_max)
    b0 = ctx.origin_index
    inhomogeneous = [m for m in s.terms if dict(m).get(b0, 0) != -(s.level(m) + 1)]
    sizes = [sum(1 for m in s.terms if s.level(m) == k) for k in range(k_max + 1)]
    out = [_entry("level-k terms have b0-degree -(k+1)", 0, len(inhomogeneous), level_sizes=sizes)]
    if k_max >= 2:
        lvl2 = {m: c for m, c in s.terms.items() if s.level(m) == 2}
        out.append(_entry("level 2 equals brute force", True, lvl2 == level2_bruteforce(ctx), terms=len(lvl2)))
    sys = extended_gkz_system(ctx, box_degree)
    first = [g for g in sys.generators if g.tag != "box"]
    mismatch = [g.tag for g in first if direct_first_order_apply(g.operator, s) != annihilation_residual(g.operator, s).terms]
    out.append(_entry("two application paths agree", [], mismatch))
    out += _residual_report(sys, s, f"extended GKZ, k_max={k_max}")
    return out


def parse_split(text: str | None) -> tuple[tuple[int, ...], ...]:
    """``2,2`` names the standard split; otherwise rows separated by ``/``."""
    if text is None or text == "2,2":
        return reference.CI_SPLIT_22
    if text == "1":
        return ((1,) * 6,)
    try:
        return tuple(tuple(int(x) for x in row.split(",")) for row in text.split("/"))
    except ValueError as exc:
        raise ValueError(f"cannot parse split {text!r}") from exc


def check_ci(k_max: int = 2, split: Sequence[Sequence[int]] = reference.CI_SPLIT_22) -> Report:
    fan = default_context().fan
    ctx = CiContext(fan, tuple(tuple(r) for r in split))
    classes = ctx.row_classes()
    total = [sum(c[i] for c in classes) for i in range(len(classes[0]))]
    target = list(quotient_data(fan).class_of(anticanonical(fan)))
    out = [_entry("factor classes sum to the anticanonical class", target, total,
                  classes=[list(c) for c in classes])]
    s = ci_principal_period(ctx, k_max)
    out.append(_entry("CI series nonzero", True, bool(s.terms), terms=len(s.terms)))
    bad = [list(r.alpha) for r in roots(ctx.fan) if ci_root_dropped_terms(ctx, r)]
    out.append(_entry("CI root dropped terms", [], bad))
    sys = ci_system(ctx)
    out += _residual_report(sys, s, f"CI system, k_max={k_max}")
    # s = 1 reproduces the extended GKZ system
    gctx = default_context()
    one = CiContext(fan, ((1,) * len(fan.rays),))
    mapped = sorted(ci_to_single(one, gctx, g.operator).to_text() for g in ci_system(one).generators)
    ref = sorted(g.operator.to_text() for g in extended_gkz_system(gctx, 2).generators)
    out.append(_entry("s=1 specialization equals extended GKZ", len(ref), len(mapped), mapped == ref))
    return out


def check_rigidity() -> Report:
    return [_entry("nonpoly h1(Delta)", 0, nonpoly_h1_dimension(default_context().polytope))]


CHECKS: dict[str, Callable[..., Report]] = {
    "fan": check_fan,
    "polytope": check_polytopes,
    "roots": check_roots,
    "table": check_table,
    "missing": check_missing,
    "degenerate": check_degenerate,
    "reconstruct": check_reconstruct,
    "periods": check_periods,
    "ci": check_ci,
    "rigidity": check_rigidity,
}


def run(name: str, **kwargs) -> dict:
    """Run one named check; returns the report with its pass flag and wall time."""
    fn = CHECKS[name]
    start = time.perf_counter()
    entries = fn(**kwargs)
    elapsed = time.perf_counter() - start
    return {"check": name, "pass": all(e["pass"] for e in entries), "entries": entries, "seconds": elapsed}
