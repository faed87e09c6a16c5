"""The (2,4) ladder diagram, its boundary map, positive paths and fans.

The diagram is drawn on a grid. The solid vertices are

    top (0,2)
    A   (0,1)   C (1,1)
    B   (0,0)   D (1,0)   right (2,0)

where ``top`` and ``right`` are the terminal dots and A, B, C, D are the
black dots spanning N = Z^4 in that order. Vertical edges point down and
horizontal edges point right. Positive paths live on the dual grid: they run
from O = (1.5, 1.5) to O0 = (-0.5, -0.5) with unit steps left or down, and a
step crosses an edge exactly when the two segments share a midpoint. All
positions below are doubled so that midpoints stay integral.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Sequence

from .lattice import (
    abs_determinant,
    in_cone,
    integer_kernel,
    rank,
    solve,
    transpose,
)

IntVec = tuple[int, ...]


class LadderError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str

    @property
    def vertical(self) -> bool:
        return self.name in _VERTICAL


@dataclass(frozen=True)
class LadderDiagram:
    """Vertices with doubled grid positions, oriented edges and terminal dots."""

    vertices: dict
    edges: tuple[Edge, ...]
    black_dots: tuple[str, ...]
    terminals: tuple[str, ...]
    origin: tuple[int, int]
    sink: tuple[int, int]

    def position(self, v: str) -> tuple[int, int]:
        return self.vertices[v]

    def midpoint(self, e: Edge) -> tuple[int, int]:
        (x1, y1), (x2, y2) = self.vertices[e.tail], self.vertices[e.head]
        return ((x1 + x2) // 2, (y1 + y2) // 2)

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise LadderError(f"no edge {name!r}")

    def edge_names(self) -> list[str]:
        return [e.name for e in self.edges]

    def _edge_at(self, point) -> Edge | None:
        for e in self.edges:
            if self.midpoint(e) == point:
                return e
        return None

    @property
    def roof(self) -> tuple[str, ...]:
        """Edges with no edge directly above (horizontal) or to the right (vertical)."""
        out = []
        for e in self.edges:
            x, y = self.midpoint(e)
            neighbour = (x + 2, y) if e.vertical else (x, y + 2)
            if self._edge_at(neighbour) is None:
                out.append(e.name)
        return tuple(out)

    def shadow(self, name: str) -> tuple[str, ...]:
        """U(e): the edge together with the edges directly below it or to its left."""
        e = self.edge(name)
        x, y = self.midpoint(e)
        step = (-2, 0) if e.vertical else (0, -2)
        out = [e.name]
        while True:
            x, y = x + step[0], y + step[1]
            f = self._edge_at((x, y))
            if f is None:
                break
            out.append(f.name)
        return tuple(out)


_VERTICAL = {"e1", "e3", "e4"}


def build_ladder_24() -> LadderDiagram:
    vertices = {
        "top": (0, 4), "A": (0, 2), "C": (2, 2),
        "B": (0, 0), "D": (2, 0), "right": (4, 0),
    }
    edges = (
        Edge("e1", "top", "A"),
        Edge("e2", "A", "C"),
        Edge("e3", "A", "B"),
        Edge("e4", "C", "D"),
        Edge("e5", "B", "D"),
        Edge("e6", "D", "right"),
    )
    return LadderDiagram(vertices, edges, ("A", "B", "C", "D"), ("top", "right"), (3, 3), (-1, -1))


def boundary_delta(d: LadderDiagram) -> dict[str, IntVec]:
    """delta(e) = head - tail in the basis of black dots; terminal dots are 0."""
    basis = {v: i for i, v in enumerate(d.black_dots)}
    n = len(basis)

    def vec(v: str) -> list[int]:
        out = [0] * n
        if v in basis:
            out[basis[v]] = 1
        return out

    return {e.name: tuple(h - t for h, t in zip(vec(e.head), vec(e.tail))) for e in d.edges}


@dataclass(frozen=True)
class PositivePath:
    label: str
    steps: str
    edges: frozenset


def positive_paths(d: LadderDiagram) -> list[PositivePath]:
    """All monotone paths O -> O0; the label records the positions of the left steps."""
    (x0, y0), (x1, y1) = d.origin, d.sink
    n_left, n_down = (x0 - x1) // 2, (y0 - y1) // 2
    words = sorted(set(permutations("L" * n_left + "D" * n_down)), reverse=True)
    out = []
    for word in words:
        x, y = x0, y0
        crossed = set()
        for s in word:
            mid = (x - 1, y) if s == "L" else (x, y - 1)
            e = d._edge_at(mid)
            if e is not None:
                crossed.add(e.name)
            x, y = (x - 2, y) if s == "L" else (x, y - 2)
        label = "pi" + "".join(str(i + 1) for i, s in enumerate(word) if s == "L")
        out.append(PositivePath(label, "".join(word), frozenset(crossed)))
    return out


# ---------------------------------------------------------------------------
# Fans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) and maximal cones as sorted ray-index tuples."""

    dimension: int
    rays: tuple[IntVec, ...]
    cones: tuple[tuple[int, ...], ...]
    ray_names: tuple[str, ...] = ()
    cone_labels: tuple[str, ...] = ()

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", tuple(tuple(sorted(c)) for c in self.cones))
        if not self.ray_names:
            object.__setattr__(self, "ray_names", tuple(f"r{i + 1}" for i in range(len(rays))))
        for r in rays:
            if len(r) != self.dimension:
                raise LadderError(f"ray {r} has wrong dimension")
            g = 0
            for x in r:
                g = gcd(g, x)
            if g != 1:
                raise LadderError(f"ray {r} is not primitive")

    def cone_rays(self, cone: Sequence[int]) -> list[IntVec]:
        return [self.rays[i] for i in cone]

    def is_simplicial(self, cone) -> bool:
        return rank(self.cone_rays(cone)) == len(cone)

    def is_smooth(self) -> bool:
        for c in self.cones:
            if len(c) != self.dimension:
                return False
            if abs_determinant(self.cone_rays(c)) != 1:
                return False
        return True

    def contains(self, point) -> list[int]:
        """Indices of the maximal cones that contain ``point``."""
        return [k for k, c in enumerate(self.cones) if in_cone(point, self.cone_rays(c))]

    def cone_monomial(self, cone) -> tuple[int, ...]:
        """Exponent vector of w^sigma-hat, the product of variables off the cone."""
        return tuple(0 if i in cone else 1 for i in range(len(self.rays)))

    def refines(self, coarse: "Fan") -> bool:
        if set(self.rays) != set(coarse.rays):
            return False
        for c in self.cones:
            rays = self.cone_rays(c)
            if not any(all(in_cone(r, coarse.cone_rays(d)) for r in rays) for d in coarse.cones):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "rays": [list(r) for r in self.rays],
            "ray_names": list(self.ray_names),
            "cones": [list(c) for c in self.cones],
            "cone_labels": list(self.cone_labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls(
            data["dimension"],
            tuple(tuple(r) for r in data["rays"]),
            tuple(tuple(c) for c in data["cones"]),
            tuple(data.get("ray_names", ())),
            tuple(data.get("cone_labels", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def fan_from_ladder(d: LadderDiagram) -> Fan:
    """One maximal cone per positive path, spanned by the edges the path avoids."""
    delta = boundary_delta(d)
    names = d.edge_names()
    cones, labels = [], []
    for p in positive_paths(d):
        cones.append(tuple(i for i, n in enumerate(names) if n not in p.edges))
        labels.append(p.label)
    return Fan(len(d.black_dots), tuple(delta[n] for n in names), tuple(cones), tuple(names), tuple(labels))


def fan_table(d: LadderDiagram) -> list[dict]:
    """Rows (path, crossed edges, cone rays, w^sigma-hat) of the positive-path table."""
    fan = fan_from_ladder(d)
    rows = []
    for p, cone in zip(positive_paths(d), fan.cones):
        mono = fan.cone_monomial(cone)
        rows.append({
            "path": p.label,
            "crossed": sorted(p.edges),
            "cone": [fan.ray_names[i] for i in cone],
            "rays": [list(fan.rays[i]) for i in cone],
            "w_sigma_hat": "*".join(f"w{i + 1}" for i, e in enumerate(mono) if e),
        })
    return rows


# the two singular cones and their chosen crepant splittings (0-based edge indices)
_SPLITTINGS = {
    (0, 1, 2, 3, 4): ((0, 1, 2, 3), (0, 1, 3, 4)),
    (1, 2, 3, 4, 5): ((1, 3, 4, 5), (1, 2, 3, 5)),
}


def small_resolution_24(fan: Fan) -> Fan:
    reference = fan_from_ladder(build_ladder_24())
    if fan.rays != reference.rays or set(fan.cones) != set(reference.cones):
        raise LadderError("small_resolution_24 expects the fan of the (2,4) ladder")
    cones, labels = [], []
    for c, lab in zip(fan.cones, fan.cone_labels or [""] * len(fan.cones)):
        if c in _SPLITTINGS:
            for k, piece in enumerate(_SPLITTINGS[c]):
                cones.append(piece)
                labels.append(f"{lab}.{k + 1}")
        else:
            cones.append(c)
            labels.append(lab)
    return Fan(fan.dimension, fan.rays, tuple(cones), fan.ray_names, tuple(labels))


# ---------------------------------------------------------------------------
# Quotient presentation and divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientData:
    """Cox-quotient data: class of each w_i, the relation lattice and I(Sigma)."""

    degrees: tuple[IntVec, ...]
    relations: tuple[IntVec, ...]
    irrelevant: tuple[tuple[int, ...], ...]
    basis_rays: tuple[int, ...]

    def class_of(self, coefficients: Sequence[int]) -> IntVec:
        k = len(self.degrees[0])
        return tuple(sum(a * d[j] for a, d in zip(coefficients, self.degrees)) for j in range(k))

    def torus_weights(self) -> list[str]:
        """The acting torus H written with parameters lam, mu, ..."""
        params = ["lam", "mu", "nu", "xi"]
        out = []
        for d in self.degrees:
            parts = []
            for p, e in zip(params, d):
                if e == 1:
                    parts.append(p)
                elif e:
                    parts.append(f"{p}^{e}")
            out.append("*".join(parts) or "1")
        return out


def quotient_data(fan: Fan, basis_rays: Sequence[int] = (1, 2)) -> QuotientData:
    """Gradings of the Cox variables expressed in the basis given by ``basis_rays``.

    The class group is Z^q / M; the relation lattice ``ker(rays)`` gives the
    grading, which is then rewritten so that the chosen rays have unit degrees.
    """
    rel = integer_kernel(transpose(fan.rays))
    if len(rel) != len(basis_rays):
        raise LadderError("basis_rays must have one entry per class-group generator")
    b = [[rel[i][j] for j in basis_rays] for i in range(len(rel))]
    degrees = []
    for j in range(len(fan.rays)):
        col = [rel[i][j] for i in range(len(rel))]
        x = solve(b, col)
        if x is None or any(Fraction(v).denominator != 1 for v in x):
            raise LadderError("chosen basis rays do not give an integral basis")
        degrees.append(tuple(int(v) for v in x))
    irrelevant = tuple(fan.cone_monomial(c) for c in fan.cones)
    return QuotientData(tuple(degrees), tuple(rel), irrelevant, tuple(basis_rays))


def monomial_str(exps: Sequence[int], symbol: str = "w") -> str:
    return "*".join(
        (f"{symbol}{i + 1}" if e == 1 else f"{symbol}{i + 1}^{e}") for i, e in enumerate(exps) if e
    ) or "1"


def ample_divisor_from_roof(d: LadderDiagram, edge: str) -> tuple[int, ...]:
    """Coefficients of the sum of H_f over f in U(e), for a roof edge e."""
    if edge not in d.roof:
        raise LadderError(f"{edge} is not a roof edge (roof = {d.roof})")
    names = d.edge_names()
    members = set(d.shadow(edge))
    return tuple(1 if n in members else 0 for n in names)


def anticanonical(fan: Fan) -> tuple[int, ...]:
    return tuple(1 for _ in fan.rays)


__all__ = [
    "Edge", "LadderDiagram", "LadderError", "PositivePath", "Fan", "QuotientData",
    "build_ladder_24", "boundary_delta", "positive_paths", "fan_from_ladder", "fan_table",
    "small_resolution_24", "quotient_data", "ample_divisor_from_roof", "anticanonical",
    "monomial_str",
]
