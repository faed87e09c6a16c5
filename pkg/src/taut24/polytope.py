"""Lattice polytopes in H-representation, faces, duality and fan roots.

A polytope is the set ``{m : <m, rho> >= -a}`` for a list of integer
inequalities ``(rho, a)``. Vertices are found exactly by intersecting
``n``-subsets of the bounding hyperplanes; lattice points by scanning the
bounding box of the vertices. The instances met here are small (a few
thousand candidate points at most), so nothing cleverer is needed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, lcm
from typing import Sequence

from .ladder import Fan
from .lattice import dot, in_cone, rank, solve, sub

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    """A face recorded by its vertex set and the facets (inequality indices) containing it."""

    dimension: int
    vertices: frozenset
    facets: frozenset


class LatticePolytope:
    """``{m in M_R : <m, rho_i> >= -a_i}``."""

    def __init__(self, dimension: int, inequalities: Sequence[tuple[Sequence[int], int]]):
        self.dimension = dimension
        ineqs = []
        for rho, a in inequalities:
            rho = tuple(int(x) for x in rho)
            if len(rho) != dimension:
                raise PolytopeError(f"inequality normal {rho} has wrong dimension")
            ineqs.append((rho, int(a)))
        self.inequalities: tuple[tuple[IntVec, int], ...] = tuple(ineqs)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dimension}, {len(self.inequalities)} inequalities)"

    # membership ---------------------------------------------------------
    def contains(self, m: Sequence) -> bool:
        return all(dot(m, rho) >= -a for rho, a in self.inequalities)

    def tight(self, m: Sequence) -> frozenset:
        return frozenset(i for i, (rho, a) in enumerate(self.inequalities) if dot(m, rho) == -a)

    def is_bounded(self) -> bool:
        """Bounded iff the normals positively span, i.e. the recession cone is 0."""
        normals = [rho for rho, _ in self.inequalities]
        if not normals or rank(normals) < self.dimension:
            return False
        for i in range(self.dimension):
            for s in (1, -1):
                e = [0] * self.dimension
                e[i] = s
                if not in_cone(e, normals):
                    return False
        return True

    # vertices and points ------------------------------------------------
    @cached_property
    def vertices(self) -> tuple[RatVec, ...]:
        if not self.is_bounded():
            raise PolytopeError("polytope is unbounded")
        n = self.dimension
        found = set()
        for subset in itertools.combinations(self.inequalities, n):
            normals = [rho for rho, _ in subset]
            if rank(normals) < n:
                continue
            x = solve(normals, [-a for _, a in subset])
            if x is not None and self.contains(x):
                found.add(tuple(x))
        return tuple(sorted(found))

    def integral_vertices(self) -> list[IntVec] | None:
        out = []
        for v in self.vertices:
            if any(x.denominator != 1 for x in v):
                return None
            out.append(tuple(int(x) for x in v))
        return out

    @cached_property
    def lattice_points(self) -> tuple[IntVec, ...]:
        verts = self.vertices
        if not verts:
            return ()
        lo = [floor(min(v[i] for v in verts)) for i in range(self.dimension)]
        hi = [ceil(max(v[i] for v in verts)) for i in range(self.dimension)]
        out = [
            p for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
            if self.contains(p)
        ]
        return tuple(out)

    def interior_lattice_points(self) -> list[IntVec]:
        return [p for p in self.lattice_points if not self.tight(p)]

    def scaled(self, r: int) -> "LatticePolytope":
        return LatticePolytope(self.dimension, [(rho, r * a) for rho, a in self.inequalities])

    def translated(self, shift: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(
            self.dimension, [(rho, a - dot(shift, rho)) for rho, a in self.inequalities]
        )

    def same_set(self, other: "LatticePolytope") -> bool:
        return self.dimension == other.dimension and set(self.vertices) == set(other.vertices)

    # faces ----------------------------------------------------------------
    def _affine_dim(self, pts) -> int:
        pts = list(pts)
        if not pts:
            return -1
        base = pts[0]
        return rank([sub(p, base) for p in pts[1:]]) if len(pts) > 1 else 0

    @cached_property
    def facets(self) -> tuple[Face, ...]:
        """Facets, one per distinct supporting hyperplane (redundant rows merged)."""
        verts = self.vertices
        by_set: dict[frozenset, set] = {}
        for i, (rho, a) in enumerate(self.inequalities):
            vs = frozenset(v for v in verts if dot(v, rho) == -a)
            if self._affine_dim(vs) == self.dimension - 1:
                by_set.setdefault(vs, set()).add(i)
        return tuple(
            Face(self.dimension - 1, vs, frozenset(ix)) for vs, ix in sorted(by_set.items(), key=lambda kv: min(kv[1]))
        )

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """All nonempty faces, including the polytope itself, as intersections of facets."""
        full = frozenset(self.vertices)
        sets = {full}
        frontier = {f.vertices for f in self.facets}
        while frontier:
            sets |= frontier
            new = set()
            for s in frontier:
                for f in self.facets:
                    t = s & f.vertices
                    if t and t not in sets:
                        new.add(t)
            frontier = new
        out = []
        for vs in sets:
            facets = frozenset(i for f in self.facets if vs <= f.vertices for i in f.facets)
            out.append(Face(self._affine_dim(vs), vs, facets))
        out.sort(key=lambda f: (f.dimension, sorted(f.vertices)))
        return tuple(out)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * self.dimension
        for f in self.faces:
            if 0 <= f.dimension < self.dimension:
                counts[f.dimension] += 1
        return tuple(counts)

    def relint_count(self, face: Face) -> int:
        """l*(face): lattice points whose set of tight inequalities is exactly the face's."""
        return sum(1 for p in self.lattice_points if self.tight(p) == face.facets)

    # serialization ----------------------------------------------------------
    def to_json(self, with_points: bool = False) -> dict:
        out = {
            "dimension": self.dimension,
            "inequalities": [[list(rho), a] for rho, a in self.inequalities],
        }
        if with_points:
            out["lattice_points"] = [list(p) for p in self.lattice_points]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolytope":
        return cls(data["dimension"], [(tuple(r), a) for r, a in data["inequalities"]])

    def dumps(self, with_points: bool = False) -> str:
        return json.dumps(self.to_json(with_points), sort_keys=True)


def polytope_from_divisor(fan: Fan, a: Sequence[int]) -> LatticePolytope:
    if len(a) != len(fan.rays):
        raise PolytopeError("need one divisor coefficient per ray")
    p = LatticePolytope(fan.dimension, list(zip(fan.rays, a)))
    if not p.is_bounded():
        raise PolytopeError("the divisor polytope is unbounded")
    return p


def is_normal(p: LatticePolytope, r_max: int) -> bool:
    """Whether every lattice point of rP is a sum of r lattice points of P, 2 <= r <= r_max."""
    if r_max < 2:
        raise PolytopeError("r_max must be at least 2")
    pts = p.lattice_points
    sums = {tuple(0 for _ in range(p.dimension))}
    for r in range(1, r_max + 1):
        sums = {tuple(x + y for x, y in zip(s, q)) for s in sums for q in pts}
        if r >= 2 and set(p.scaled(r).lattice_points) != sums:
            return False
    return True


def dual_polytope(p: LatticePolytope) -> LatticePolytope:
    """``{y : <x, y> >= -1 for x in P}`` written with one inequality per vertex of P."""
    origin = tuple(0 for _ in range(p.dimension))
    if not p.contains(origin) or p.tight(origin):
        raise PolytopeError("the origin is not an interior point")
    ineqs = []
    for v in p.vertices:
        q = lcm(*(x.denominator for x in v))
        ineqs.append((tuple(int(x * q) for x in v), q))
    return LatticePolytope(p.dimension, ineqs)


def is_reflexive(p: LatticePolytope) -> bool:
    origin = tuple(0 for _ in range(p.dimension))
    if not p.contains(origin) or p.tight(origin):
        return False
    if p.integral_vertices() is None or p.interior_lattice_points() != [origin]:
        return False
    d = dual_polytope(p)
    return d.integral_vertices() is not None and d.interior_lattice_points() == [origin]


def dual_face(p: LatticePolytope, dual: LatticePolytope, face: Face) -> Face:
    """The face of ``dual`` on which every vertex of ``face`` attains -1."""
    index = {v: i for i, v in enumerate(p.vertices)}
    wanted = frozenset(index[v] for v in face.vertices)
    verts = frozenset(
        y for y in dual.vertices if all(dot(v, y) == -1 for v in face.vertices)
    )
    for g in dual.faces:
        if g.vertices == verts:
            return g
    # an empty dual face arises only for the full polytope
    return Face(-1, frozenset(), wanted)


def nonpoly_h1_dimension(p: LatticePolytope) -> int:
    """Sum over codimension-two faces of l*(face) * l*(dual face).

    The empty face contributes l* = 0.
    """
    if not is_reflexive(p):
        raise PolytopeError("polytope is not reflexive")
    d = dual_polytope(p)
    total = 0
    for face in p.faces:
        if face.dimension != p.dimension - 2:
            continue
        g = dual_face(p, d, face)
        lf = p.relint_count(face)
        lg = d.relint_count(g) if g.dimension >= 0 else 0
        total += lf * lg
    return total


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    """A root alpha with its distinguished ray and the exponents of w^D.

    ``wd_exponents`` has one entry per ray; the entry at ``ray`` is 0 and the
    others are the pairings <alpha, rho>.
    """

    alpha: IntVec
    ray: int
    wd_exponents: tuple[int, ...]

    def verify(self, fan: Fan) -> bool:
        pair = [dot(self.alpha, r) for r in fan.rays]
        if pair[self.ray] != -1:
            return False
        others = [x for i, x in enumerate(pair) if i != self.ray]
        wd = tuple(0 if i == self.ray else x for i, x in enumerate(pair))
        return all(x >= 0 for x in others) and wd == self.wd_exponents

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "ray": self.ray, "wD": list(self.wd_exponents)}


def roots(fan: Fan) -> list[Root]:
    """All roots of a complete fan, found among the lattice points of the anticanonical polytope."""
    try:
        delta = polytope_from_divisor(fan, [1] * len(fan.rays))
    except PolytopeError as exc:
        raise PolytopeError("roots need a complete fan (anticanonical polytope unbounded)") from exc
    out = []
    for m in delta.lattice_points:
        pair = [dot(m, r) for r in fan.rays]
        neg = [i for i, x in enumerate(pair) if x < 0]
        if len(neg) == 1 and pair[neg[0]] == -1:
            i = neg[0]
            out.append(Root(tuple(m), i, tuple(0 if j == i else x for j, x in enumerate(pair))))
    return sorted(out, key=lambda r: r.alpha)


def root_by_alpha(fan: Fan, alpha: Sequence[int]) -> Root:
    alpha = tuple(alpha)
    for r in roots(fan):
        if r.alpha == alpha:
            return r
    raise PolytopeError(f"{alpha} is not a root")
