"""Extended GKZ systems on a smooth toric variety and complete-intersection systems.

The variables ``b_mu`` are indexed by the lattice points of the
anticanonical polytope; the origin is the distinguished variable ``b_0``.
Operators use the conventions

* torus:  ``sum_mu <mu, m> b_mu d_mu`` for a character ``m``,
* Euler:  ``sum_mu b_mu d_mu + 1``,
* root:   ``Z_alpha = sum_mu <rho_alpha, mu - alpha> b_mu d_(mu + alpha)``,
* box:    ``d^(l+) - d^(l-)`` for relations ``sum l_i (mu_i, 1) = 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .ladder import Fan, build_ladder_24, fan_from_ladder, quotient_data, small_resolution_24
from .lattice import add, dot, sub
from .polytope import LatticePolytope, PolytopeError, Root, polytope_from_divisor, roots
from .weyl import OperatorSystem, VariableSpace, WeylOperator, mono

IntVec = tuple[int, ...]


class GkzError(ValueError):
    pass


@dataclass
class GkzContext:
    """A smooth complete fan with its anticanonical polytope, variables and roots."""

    fan: Fan
    polytope: LatticePolytope
    space: VariableSpace
    roots: list[Root]

    @classmethod
    def from_fan(cls, fan: Fan, name: str = "Delta") -> "GkzContext":
        delta = polytope_from_divisor(fan, [1] * len(fan.rays))
        points = delta.lattice_points
        origin = tuple(0 for _ in range(fan.dimension))
        if origin not in points or delta.tight(origin):
            raise GkzError("the origin must be an interior lattice point")
        space = VariableSpace(name, points, symbol="b")
        return cls(fan, delta, space, roots(fan))

    @property
    def dimension(self) -> int:
        return self.fan.dimension

    @property
    def points(self) -> tuple[IntVec, ...]:
        return self.space.labels

    @cached_property
    def origin_index(self) -> int:
        return self.space.index(tuple(0 for _ in range(self.dimension)))

    def root(self, alpha: Sequence[int]) -> Root:
        alpha = tuple(alpha)
        for r in self.roots:
            if r.alpha == alpha:
                return r
        raise GkzError(f"{alpha} is not a root of the fan")


@lru_cache(maxsize=None)
def resolved_fan() -> Fan:
    """The fan of the small resolution of P(2,4)."""
    return small_resolution_24(fan_from_ladder(build_ladder_24()))


@lru_cache(maxsize=None)
def default_context() -> GkzContext:
    return GkzContext.from_fan(resolved_fan())


def character_operator(ctx: GkzContext, m: Sequence[int]) -> WeylOperator:
    """``sum_mu <mu, m> b_mu d_mu``."""
    items = []
    for i, mu in enumerate(ctx.points):
        c = dot(mu, m)
        if c:
            items.append((c, ((i, 1),), ((i, 1),)))
    return WeylOperator.from_sum(ctx.space, items)


def torus_operator(ctx: GkzContext, j: int) -> WeylOperator:
    """The torus operator for the j-th coordinate axis (1-based)."""
    if not 1 <= j <= ctx.dimension:
        raise GkzError(f"axis {j} out of range")
    return character_operator(ctx, tuple(int(k == j - 1) for k in range(ctx.dimension)))


def euler_operator(ctx: GkzContext) -> WeylOperator:
    items = [(1, ((i, 1),), ((i, 1),)) for i in range(len(ctx.space))]
    items.append((1, (), ()))
    return WeylOperator.from_sum(ctx.space, items)


def scaling_operator(ctx: GkzContext, ray: int, constant: int = 1) -> WeylOperator:
    """Infinitesimal scaling of w_ray on anticanonical sections, plus a constant.

    The section ``b_mu`` carries the monomial ``prod w^(<mu, rho> + 1)``, so the
    scaling of ``w_ray`` is ``sum_mu (<mu, rho_ray> + 1) b_mu d_mu``.
    """
    rho = ctx.fan.rays[ray]
    items = []
    for i, mu in enumerate(ctx.points):
        c = dot(mu, rho) + 1
        if c:
            items.append((c, ((i, 1),), ((i, 1),)))
    if constant:
        items.append((constant, (), ()))
    return WeylOperator.from_sum(ctx.space, items)


def _check_root(ctx: GkzContext, root: Root) -> None:
    if root not in ctx.roots:
        raise GkzError(f"{root.alpha} is not a root of the fan")


def root_operator(ctx: GkzContext, root: Root) -> WeylOperator:
    _check_root(ctx, root)
    rho = ctx.fan.rays[root.ray]
    items = []
    for i, mu in enumerate(ctx.points):
        target = add(mu, root.alpha)
        if target not in ctx.space:
            continue
        c = dot(rho, sub(mu, root.alpha))
        if c:
            items.append((c, ((i, 1),), ((ctx.space.index(target), 1),)))
    return WeylOperator.from_sum(ctx.space, items)


def root_dropped_terms(ctx: GkzContext, root: Root) -> list[tuple[IntVec, int]]:
    """Points mu with mu + alpha outside the polytope and nonzero coefficient.

    The root operator is well defined exactly when this list is empty.
    """
    rho = ctx.fan.rays[root.ray]
    out = []
    for mu in ctx.points:
        if add(mu, root.alpha) not in ctx.space:
            c = dot(rho, sub(mu, root.alpha))
            if c:
                out.append((mu, c))
    return out


def _grouped_multisets(n: int, degree: int, key) -> dict:
    classes: dict = {}
    for combo in itertools.combinations_with_replacement(range(n), degree):
        classes.setdefault(key(combo), []).append(combo)
    return classes


def box_operators(ctx: GkzContext, max_degree: int = 2) -> list[WeylOperator]:
    """Box operators ``d^(l+) - d^(l-)`` up to the given degree.

    Degree 2 is enumerated exhaustively: every pair of distinct unordered pairs
    with the same sum. For degree 3 and higher each class of equal sums
    contributes a chain ``m_0 - m_1, m_1 - m_2, ...`` spanning its binomials.
    """
    if max_degree < 2:
        raise GkzError("max_degree must be at least 2")
    pts = ctx.points
    out = []
    for degree in range(2, max_degree + 1):
        classes = _grouped_multisets(
            len(pts), degree, lambda c: tuple(sum(pts[i][k] for i in c) for k in range(ctx.dimension))
        )
        for s in sorted(classes):
            members = classes[s]
            pairs = itertools.combinations(members, 2) if degree == 2 else zip(members, members[1:])
            for lp, lm in pairs:
                out.append(_binomial(ctx.space, lp, lm))
    return out


def _binomial(space: VariableSpace, plus: Sequence[int], minus: Sequence[int]) -> WeylOperator:
    return WeylOperator(space, {
        ((), mono([(i, 1) for i in plus])): 1,
        ((), mono([(i, 1) for i in minus])): -1,
    })


def extended_gkz_system(ctx: GkzContext | None = None, box_degree: int = 2) -> OperatorSystem:
    ctx = ctx or default_context()
    sys = OperatorSystem("extended_gkz_Y", ctx.space)
    for j in range(1, ctx.dimension + 1):
        sys.add("torus", torus_operator(ctx, j), axis=j)
    sys.add("euler", euler_operator(ctx))
    for r in ctx.roots:
        sys.add("root", root_operator(ctx, r), alpha=list(r.alpha), ray=r.ray + 1)
    for op in box_operators(ctx, box_degree):
        sys.add("box", op)
    return sys


# ---------------------------------------------------------------------------
# Complete intersections
# ---------------------------------------------------------------------------

@dataclass
class CiContext:
    """Nef partition data: row i of ``a`` is the divisor of the i-th factor."""

    fan: Fan
    a: tuple[tuple[int, ...], ...]
    polytopes: list[LatticePolytope] = field(init=False)
    space: VariableSpace = field(init=False)
    expansion_points: tuple[IntVec, ...] = ()

    def __post_init__(self):
        self.a = tuple(tuple(int(x) for x in row) for row in self.a)
        q = len(self.fan.rays)
        if any(len(row) != q for row in self.a):
            raise GkzError("each row of a needs one entry per ray")
        for j in range(q):
            if sum(row[j] for row in self.a) != 1:
                raise GkzError(f"column {j + 1} of a does not sum to 1")
        self.polytopes = [polytope_from_divisor(self.fan, row) for row in self.a]
        labels = []
        for i, p in enumerate(self.polytopes):
            if not p.lattice_points:
                raise GkzError(f"factor {i + 1} has no lattice points")
            labels += [(i + 1,) + mu for mu in p.lattice_points]
        self.space = VariableSpace("CI", tuple(labels), symbol="b")
        if not self.expansion_points:
            self.expansion_points = tuple(_default_expansion_point(p) for p in self.polytopes)
        for i, (p, e) in enumerate(zip(self.polytopes, self.expansion_points)):
            if tuple(e) not in p.lattice_points:
                raise GkzError(f"expansion point {e} is not a lattice point of factor {i + 1}")

    @property
    def factors(self) -> int:
        return len(self.a)

    @property
    def dimension(self) -> int:
        return self.fan.dimension

    def index(self, factor: int, mu: Sequence[int]) -> int:
        return self.space.index((factor + 1,) + tuple(mu))

    def has_point(self, factor: int, mu: Sequence[int]) -> bool:
        return (factor + 1,) + tuple(mu) in self.space

    def row_classes(self) -> list[IntVec]:
        q = quotient_data(self.fan)
        return [q.class_of(row) for row in self.a]


def _default_expansion_point(p: LatticePolytope) -> IntVec:
    """The origin when it is a lattice point, otherwise the lexicographically smallest one.

    Expanding every factor at the origin keeps the joint constant term
    nonzero from level 0 on; unrelated expansion points can make the whole
    truncated series vanish, which would turn annihilation checks vacuous.
    """
    origin = tuple(0 for _ in range(p.dimension))
    if p.contains(origin):
        return origin
    return p.lattice_points[0]


def ci_torus_operator(ctx: CiContext, m: Sequence[int]) -> WeylOperator:
    items = []
    for i, p in enumerate(ctx.polytopes):
        for mu in p.lattice_points:
            c = dot(mu, m)
            if c:
                k = ctx.index(i, mu)
                items.append((c, ((k, 1),), ((k, 1),)))
    return WeylOperator.from_sum(ctx.space, items)


def ci_euler_operator(ctx: CiContext, factor: int) -> WeylOperator:
    items = []
    for mu in ctx.polytopes[factor].lattice_points:
        k = ctx.index(factor, mu)
        items.append((1, ((k, 1),), ((k, 1),)))
    items.append((1, (), ()))
    return WeylOperator.from_sum(ctx.space, items)


def ci_root_operator(ctx: CiContext, root: Root) -> WeylOperator:
    """``sum_i sum_mu <mu - a_ik alpha, rho_k> b_mu d_(mu + alpha)`` with rho_alpha = rho_k."""
    k = root.ray
    rho = ctx.fan.rays[k]
    items = []
    for i, p in enumerate(ctx.polytopes):
        shift = tuple(ctx.a[i][k] * x for x in root.alpha)
        for mu in p.lattice_points:
            target = add(mu, root.alpha)
            if not ctx.has_point(i, target):
                continue
            c = dot(sub(mu, shift), rho)
            if c:
                items.append((c, ((ctx.index(i, mu), 1),), ((ctx.index(i, target), 1),)))
    return WeylOperator.from_sum(ctx.space, items)


def ci_root_dropped_terms(ctx: CiContext, root: Root) -> list:
    k = root.ray
    rho = ctx.fan.rays[k]
    out = []
    for i, p in enumerate(ctx.polytopes):
        shift = tuple(ctx.a[i][k] * x for x in root.alpha)
        for mu in p.lattice_points:
            if not ctx.has_point(i, add(mu, root.alpha)):
                c = dot(sub(mu, shift), rho)
                if c:
                    out.append((i + 1, mu, c))
    return out


def ci_box_operators(ctx: CiContext) -> list[WeylOperator]:
    """Degree-2 relations among the vectors (mu, e_factor), within and across factors."""
    labels = ctx.space.labels
    s = ctx.factors

    def key(combo):
        counts = tuple(sum(1 for i in combo if labels[i][0] == f + 1) for f in range(s))
        pos = tuple(sum(labels[i][1 + k] for i in combo) for k in range(ctx.dimension))
        return counts + pos

    classes = _grouped_multisets(len(labels), 2, key)
    out = []
    for kk in sorted(classes):
        for lp, lm in itertools.combinations(classes[kk], 2):
            out.append(_binomial(ctx.space, lp, lm))
    return out


def ci_system(ctx: CiContext, root_list: Sequence[Root] | None = None) -> OperatorSystem:
    sys = OperatorSystem("ci", ctx.space)
    for j in range(ctx.dimension):
        sys.add("torus", ci_torus_operator(ctx, tuple(int(k == j) for k in range(ctx.dimension))), axis=j + 1)
    for i in range(ctx.factors):
        sys.add("euler", ci_euler_operator(ctx, i), factor=i + 1)
    for r in (root_list if root_list is not None else roots(ctx.fan)):
        sys.add("root", ci_root_operator(ctx, r), alpha=list(r.alpha), ray=r.ray + 1)
    for op in ci_box_operators(ctx):
        sys.add("box", op)
    return sys


def ci_to_single(ctx: CiContext, gkz: GkzContext, op: WeylOperator) -> WeylOperator:
    """Rename the variables of a one-factor CI space into the hypersurface space."""
    if ctx.factors != 1:
        raise GkzError("only a one-factor CI space maps to the hypersurface space")
    index_map = {i: gkz.space.index(lab[1:]) for i, lab in enumerate(ctx.space.labels)}
    return op.remap(gkz.space, index_map)


__all__ = [
    "GkzContext", "GkzError", "CiContext", "PolytopeError", "resolved_fan", "default_context",
    "character_operator", "torus_operator", "euler_operator", "scaling_operator",
    "root_operator", "root_dropped_terms", "box_operators", "extended_gkz_system",
    "ci_torus_operator", "ci_euler_operator", "ci_root_operator", "ci_root_dropped_terms",
    "ci_box_operators", "ci_system", "ci_to_single",
]
