"""Principal period series by constant-term expansion, and annihilation residuals.

For one factor ``sigma = sum_mu b_mu t^mu`` expanded around the lattice point
``p`` (coefficient ``b_p`` inverted),

    1 / sigma = sum_k (-1)^k b_p^-(k+1) t^-p (sum_{mu != p} b_mu t^(mu - p))^k,

and the period is the constant term in ``t`` of the product over all factors.
The level of a monomial is its degree in the non-inverted variables.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .gkz import CiContext, GkzContext
from .weyl import TruncatedSeries, VariableSpace, WeylOperator, apply_to_series, mono

IntVec = tuple[int, ...]


class PeriodError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    """One factor of the integrand: its variables (index, lattice point) and expansion point."""

    variables: tuple[tuple[int, IntVec], ...]
    expansion: int  # variable index whose coefficient is inverted


def _multinomial(counts) -> int:
    n = sum(counts)
    out = factorial(n)
    for c in counts:
        out //= factorial(c)
    return out


def _factor_levels(f: Factor, k_max: int, dim: int) -> list[dict]:
    """For each level k, map t-exponent -> list of (monomial, coefficient) for one factor."""
    point = dict(f.variables)[f.expansion]
    others = [(i, mu) for i, mu in f.variables if i != f.expansion]
    levels = []
    for k in range(k_max + 1):
        by_shift: dict = defaultdict(list)
        sign = -1 if k % 2 else 1
        for combo in itertools.combinations_with_replacement(range(len(others)), k):
            shift = tuple(
                sum(others[j][1][c] for j in combo) - (k + 1) * point[c] for c in range(dim)
            )
            counts = Counter(combo)
            m = [(others[j][0], e) for j, e in counts.items()] + [(f.expansion, -(k + 1))]
            by_shift[shift].append((mono(m), Fraction(sign * _multinomial(counts.values()))))
        levels.append(by_shift)
    return levels


def _zero_sum_level(f: Factor, k: int, dim: int) -> dict:
    """Level-k part of a single factor with expansion at the origin, built directly.

    Multisets of size k summing to 0 are found by choosing k-1 points in
    nondecreasing order and looking up the last one.
    """
    point = dict(f.variables)[f.expansion]
    if any(point):
        raise PeriodError("direct zero-sum enumeration needs the origin as expansion point")
    others = sorted((mu, i) for i, mu in f.variables if i != f.expansion)
    pos = {mu: j for j, (mu, _) in enumerate(others)}
    out: dict = {}
    sign = -1 if k % 2 else 1
    if k == 0:
        return {mono([(f.expansion, -1)]): Fraction(1)}
    for combo in itertools.combinations_with_replacement(range(len(others)), k - 1):
        s = tuple(sum(others[j][0][c] for j in combo) for c in range(dim))
        last = pos.get(tuple(-x for x in s))
        if last is None or (combo and last < combo[-1]):
            continue
        full = combo + (last,)
        counts = Counter(full)
        m = [(others[j][1], e) for j, e in counts.items()] + [(f.expansion, -(k + 1))]
        out[mono(m)] = Fraction(sign * _multinomial(counts.values()))
    return out


def constant_term_series(space: VariableSpace, factors: Sequence[Factor], k_max: int,
                         dim: int) -> TruncatedSeries:
    """Joint constant term of the product of the per-factor expansions, levels 0..k_max."""
    dist = tuple(f.expansion for f in factors)
    if len(factors) == 1 and not any(dict(factors[0].variables)[factors[0].expansion]):
        terms: dict = {}
        for k in range(k_max + 1):
            terms.update(_zero_sum_level(factors[0], k, dim))
        return TruncatedSeries(space, dist, k_max, terms)
    per_factor = [_factor_levels(f, k_max, dim) for f in factors]
    # combine factor by factor: state maps (total level, shift) -> {monomial: coeff}
    zero = tuple(0 for _ in range(dim))
    state: dict = {(0, zero): {(): Fraction(1)}}
    for levels in per_factor:
        new: dict = defaultdict(lambda: defaultdict(Fraction))
        for (lev, shift), monos in state.items():
            for k in range(k_max - lev + 1):
                for s2, entries in levels[k].items():
                    key = (lev + k, tuple(a + b for a, b in zip(shift, s2)))
                    bucket = new[key]
                    for m1, c1 in monos.items():
                        for m2, c2 in entries:
                            bucket[tuple(sorted(m1 + m2))] += c1 * c2
        state = new
    terms = {}
    for (lev, shift), monos in state.items():
        if shift == zero:
            for m, c in monos.items():
                if c:
                    terms[m] = c
    return TruncatedSeries(space, dist, k_max, terms)


def principal_period(ctx: GkzContext, k_max: int = 3) -> TruncatedSeries:
    if k_max < 0:
        raise PeriodError("k_max must be nonnegative")
    origin = tuple(0 for _ in range(ctx.dimension))
    if ctx.polytope.tight(origin) or not ctx.polytope.contains(origin):
        raise PeriodError("the origin is not an interior point")
    f = Factor(tuple(enumerate(ctx.points)), ctx.origin_index)
    return constant_term_series(ctx.space, [f], k_max, ctx.dimension)


def ci_principal_period(ctx: CiContext, k_max: int = 2) -> TruncatedSeries:
    factors = []
    for i, p in enumerate(ctx.polytopes):
        if not p.lattice_points:
            raise PeriodError(f"factor {i + 1} has no lattice point to expand around")
        vars_ = tuple((ctx.index(i, mu), mu) for mu in p.lattice_points)
        factors.append(Factor(vars_, ctx.index(i, ctx.expansion_points[i])))
    return constant_term_series(ctx.space, factors, k_max, ctx.dimension)


def annihilation_residual(op: WeylOperator, s: TruncatedSeries) -> TruncatedSeries:
    """The operator applied to the series, restricted to the fully determined levels."""
    return apply_to_series(op, s)


def level2_bruteforce(ctx: GkzContext) -> dict:
    """Level-2 terms recomputed from ordered pairs (mu, nu) with mu + nu = 0."""
    out: dict = defaultdict(Fraction)
    b0 = ctx.origin_index
    for i, mu in enumerate(ctx.points):
        for j, nu in enumerate(ctx.points):
            if i == b0 or j == b0:
                continue
            if all(a + b == 0 for a, b in zip(mu, nu)):
                out[mono([(i, 1), (j, 1), (b0, -3)])] += 1
    return dict(out)


def direct_first_order_apply(op: WeylOperator, s: TruncatedSeries) -> dict:
    """Apply a first-order operator by explicit per-variable differentiation.

    This independent path walks variables of the series monomials rather than
    operator terms; it exists to cross-check `apply_to_series`.
    """
    if op.order > 1:
        raise PeriodError("direct application supports first-order operators only")
    coeff_by_d: dict = defaultdict(list)
    const = Fraction(0)
    for (xm, dm), c in op.terms.items():
        if not dm:
            const += c.constant()
        else:
            (i, _), = dm
            coeff_by_d[i].append((xm, c.constant()))
    out: dict = defaultdict(Fraction)
    for m, c in s.terms.items():
        if const:
            out[m] += const * c
        for i, e in m:
            for xm, a in coeff_by_d.get(i, ()):
                d = dict(m)
                d[i] = e - 1
                for j, k in xm:
                    d[j] = d.get(j, 0) + k
                out[mono(d)] += a * e * c
    top = s.k_max - max(
        (sum(e for i, e in dm if i not in s.distinguished) - sum(e for i, e in xm if i not in s.distinguished)
         for xm, dm in op.terms), default=0)
    return {m: v for m, v in out.items() if v and 0 <= s.level(m) <= top}
