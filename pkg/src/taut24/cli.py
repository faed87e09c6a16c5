"""Command-line entry point: build objects, dump operator systems, run verifications.

Every run prints (or writes with ``--out``) one document ``{"manifest", "result"}``.
Output is canonical: sorted keys, no timestamps, no timings, so identical
configurations give byte-identical files.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, checks
from .bridge import variant_system_Y
from .gkz import CiContext, ci_system, default_context, extended_gkz_system
from .grassmann import taut_system_X
from .ladder import (
    anticanonical,
    ample_divisor_from_roof,
    build_ladder_24,
    fan_from_ladder,
    fan_table,
    quotient_data,
    small_resolution_24,
)
from .lattice import abs_determinant
from .polytope import polytope_from_divisor

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BUILD_TARGETS = ("fan", "resolution", "polytope", "roots")
SYSTEM_SIDES = ("X", "Y", "variant", "ci")
VERIFY_CHECKS = tuple(checks.CHECKS) + ("all",)


class UsageError(Exception):
    pass


def parse_t(text: str | None):
    """A rational number, or None for ``symbolic``."""
    if text is None:
        return Fraction(1)
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--t expects a rational number or 'symbolic', got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_build(target: str, divisor: str = "L") -> tuple[dict, bool, list[str]]:
    d = build_ladder_24()
    fan = fan_from_ladder(d)
    if target == "fan":
        q = quotient_data(fan)
        result = {
            "fan": fan.to_json(),
            "table": fan_table(d),
            "roof": list(d.roof),
            "class_degrees": [list(x) for x in q.degrees],
            "relations": [list(r) for r in q.relations],
        }
        lines = [f"{r['path']}\t{' '.join(r['cone'])}\t{r['w_sigma_hat']}" for r in result["table"]]
    elif target == "resolution":
        res = small_resolution_24(fan)
        dets = [abs_determinant([res.rays[i] for i in c]) for c in res.cones]
        result = {"fan": res.to_json(), "determinants": dets, "smooth": res.is_smooth()}
        lines = [f"{lab}\t{' '.join(res.ray_names[i] for i in c)}\t|det|={k}"
                 for lab, c, k in zip(res.cone_labels, res.cones, dets)]
    elif target == "polytope":
        if divisor == "L":
            a = ample_divisor_from_roof(d, d.roof[0])
        elif divisor == "K":
            a = anticanonical(fan)
        else:
            raise UsageError(f"--divisor must be L or K, got {divisor!r}")
        p = polytope_from_divisor(fan, a)
        result = {
            "divisor": list(a),
            "polytope": p.to_json(with_points=True),
            "vertices": [[str(x) for x in v] for v in p.vertices],
            "f_vector": list(p.f_vector()),
            "lattice_point_count": len(p.lattice_points),
        }
        lines = [" ".join(map(str, m)) for m in p.lattice_points]
    elif target == "roots":
        rs = default_context().roots
        result = {"roots": [r.to_json() for r in rs], "count": len(rs)}
        lines = [f"{' '.join(map(str, r.alpha))}\tray e{r.ray + 1}" for r in rs]
    else:
        raise UsageError(f"unknown build target {target!r}")
    return result, True, lines


def cmd_systems(side: str, t_text: str | None, box_degree: int, split: str | None) -> tuple[dict, bool, list[str]]:
    if side != "X" and t_text is not None:
        raise UsageError(f"--t is not applicable to side {side}")
    if side == "X":
        system = taut_system_X(parse_t(t_text))
    elif side == "Y":
        system = extended_gkz_system(default_context(), box_degree)
    elif side == "variant":
        system = variant_system_Y()
    elif side == "ci":
        try:
            rows = checks.parse_split(split)
            system = ci_system(CiContext(default_context().fan, rows))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError(f"unknown side {side!r}")
    lines = []
    for g in system.generators:
        prov = json.dumps(g.provenance, sort_keys=True, default=str) if g.provenance else ""
        lines.append(f"# {g.tag} {prov}".rstrip())
        lines.append(g.operator.to_text())
    return system.to_json(), True, lines


def cmd_verify(check: str, k_max: int | None, box_degree: int, split: str | None) -> tuple[dict, bool, list[str]]:
    names = list(checks.CHECKS) if check == "all" else [check]
    if check not in VERIFY_CHECKS:
        raise UsageError(f"unknown check {check!r}")
    try:
        rows = checks.parse_split(split)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = []
    for name in names:
        kwargs = {}
        if name == "periods":
            kwargs = {"k_max": 3 if k_max is None else k_max, "box_degree": box_degree}
        elif name == "ci":
            kwargs = {"k_max": 2 if k_max is None else k_max, "split": rows}
        rep = checks.run(name, **kwargs)
        rep.pop("seconds")
        reports.append(rep)
    ok = all(r["pass"] for r in reports)
    lines = []
    for r in reports:
        for e in r["entries"]:
            lines.append(f"{'PASS' if e['pass'] else 'FAIL'}  {r['check']}: {e['check']}")
    lines.append(f"{'PASS' if ok else 'FAIL'}  {sum(r['pass'] for r in reports)}/{len(reports)} checks")
    return {"checks": reports}, ok, lines


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output to this path instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="taut24", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build the fan, resolution, a polytope or the roots")
    b.add_argument("target", choices=BUILD_TARGETS)
    b.add_argument("--divisor", choices=("L", "K"), default="L", help="polytope divisor (default L)")

    s = sub.add_parser("systems", parents=[common], help="dump an operator system")
    s.add_argument("side", choices=SYSTEM_SIDES)
    s.add_argument("--t", dest="t", help="rational value or 'symbolic' (side X only; default 1)")
    s.add_argument("--box-degree", type=int, default=2)
    s.add_argument("--split", help="CI split: '2,2' (default) or rows like '1,1,1,0,0,0/0,0,0,1,1,1'")

    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    v.add_argument("check", choices=VERIFY_CHECKS)
    v.add_argument("--kmax", type=int, help="series truncation (default 3 for periods, 2 for ci)")
    v.add_argument("--box-degree", type=int, default=2)
    v.add_argument("--split", help="CI split for the ci check")
    return parser


def _configuration(args) -> dict:
    keys = ("target", "divisor", "side", "t", "box_degree", "split", "check", "kmax")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def render(args, result: dict, ok: bool, lines: list[str]) -> str:
    if args.format == "text":
        return "\n".join(lines) + "\n"
    subject = getattr(args, "target", None) or getattr(args, "side", None) or getattr(args, "check", None)
    manifest = {
        "command": f"{args.command} {subject}",
        "configuration": _configuration(args),
        "output": args.out,
        "summary": {"pass": ok},
        "tool": f"artifact {__version__}",
    }
    return json.dumps({"manifest": manifest, "result": result}, indent=1, sort_keys=True, default=str) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "build":
            result, ok, lines = cmd_build(args.target, args.divisor)
        elif args.command == "systems":
            if args.box_degree < 1:
                raise UsageError("--box-degree must be at least 1")
            result, ok, lines = cmd_systems(args.side, args.t, args.box_degree, args.split)
        else:
            if args.kmax is not None and args.kmax < 0:
                raise UsageError("--kmax must be nonnegative")
            result, ok, lines = cmd_verify(args.check, args.kmax, args.box_degree, args.split)
    except UsageError as exc:
        print(f"taut24: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args, result, ok, lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
