"""The G(2,4) side: Pluecker coordinates, quartic index set, sl4 actions and tau_X.

Coordinates are ordered ``z12, z13, z14, z23, z24, z34`` (indices 0..5). A
quartic exponent ``I = (i0, ..., i5)`` refers to this order, and the
variable ``a_I`` is the dual coordinate of ``z^I``.

An sl4 element ``x`` acts on coordinates through the substitution
``z_c -> z_c + s * sum_r M[c, r] z_r`` with ``M = (wedge^2 x)^T``. The
degeneration family conjugates by ``D_t = diag(t, 1, 1, 1, 1, 1)``:
``M_t[c, r] = M[c, r] * d_r / d_c``. Four basis elements acquire a ``1/t``
entry this way; their family is rescaled by ``t`` so that every entry is
polynomial, and the power used is recorded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .weyl import (
    ONE,
    ZERO,
    OperatorSystem,
    TPoly,
    VariableSpace,
    WeylOperator,
    mono,
)

PAIRS: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
Z_NAMES = tuple(f"z{i}{j}" for i, j in PAIRS)
Z12, Z13, Z14, Z23, Z24, Z34 = range(6)

Matrix = tuple[tuple[int, ...], ...]


class GrassmannError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Index sets
# ---------------------------------------------------------------------------

def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``, lex order."""
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        v = []
        for b in bars:
            v.append(b - prev - 1)
            prev = b
        v.append(total + parts - 1 - prev - 1)
        out.append(tuple(v))
    return sorted(out)


@lru_cache(maxsize=None)
def quartic_indices() -> tuple[tuple[int, ...], ...]:
    """The index set E of quartic monomials in the six Pluecker coordinates."""
    return tuple(compositions(4, 6))


@lru_cache(maxsize=None)
def quadric_indices() -> tuple[tuple[int, ...], ...]:
    return tuple(compositions(2, 6))


@lru_cache(maxsize=None)
def quartic_space() -> VariableSpace:
    return VariableSpace("E", quartic_indices(), symbol="a", has_t=True)


def unit(k: int, n: int = 6) -> tuple[int, ...]:
    return tuple(int(i == k) for i in range(n))


def vadd(*vs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x) for x in zip(*vs))


# ---------------------------------------------------------------------------
# Pluecker quadric
# ---------------------------------------------------------------------------

def quadric_matrix(t=None) -> list[list[TPoly]]:
    """Symmetric matrix A_t of 2*q_t, q_t = z14 z23 - z13 z24 + t z12 z34."""
    tt = TPoly.t() if t is None else TPoly.const(t)
    a = [[ZERO] * 6 for _ in range(6)]
    a[Z14][Z23] = a[Z23][Z14] = ONE
    a[Z13][Z24] = a[Z24][Z13] = -ONE
    a[Z12][Z34] = a[Z34][Z12] = tt
    return a


def quadric_terms(t=None) -> list[tuple[TPoly, tuple[int, ...]]]:
    """q_t as (coefficient, exponent) pairs."""
    tt = TPoly.t() if t is None else TPoly.const(t)
    return [
        (ONE, vadd(unit(Z14), unit(Z23))),
        (-ONE, vadd(unit(Z13), unit(Z24))),
        (tt, vadd(unit(Z12), unit(Z34))),
    ]


def evaluate_q(z: Sequence, t) -> Fraction:
    return z[Z14] * z[Z23] - z[Z13] * z[Z24] + Fraction(t) * z[Z12] * z[Z34]


def pluecker_point(m: Sequence[Sequence]) -> tuple:
    """The 2x2 minors of a 2x4 matrix, in coordinate order."""
    return tuple(m[0][i - 1] * m[1][j - 1] - m[0][j - 1] * m[1][i - 1] for i, j in PAIRS)


# ---------------------------------------------------------------------------
# sl4
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sl4Element:
    matrix: Matrix
    label: str = ""

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise GrassmannError("sl4 elements are 4x4 matrices")
        if sum(m[i][i] for i in range(4)) != 0:
            raise GrassmannError("sl4 elements are traceless")
        object.__setattr__(self, "matrix", m)

    def bracket(self, other: "Sl4Element") -> "Sl4Element":
        a, b = self.matrix, other.matrix
        ab = [[sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
        ba = [[sum(b[i][k] * a[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
        return Sl4Element(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba)),
                          f"[{self.label},{other.label}]")

    def is_diagonal(self) -> bool:
        return all(self.matrix[i][j] == 0 for i in range(4) for j in range(4) if i != j)


def elementary(p: int, q: int) -> Sl4Element:
    """The elementary matrix E_pq with 1-based indices p != q."""
    m = [[0] * 4 for _ in range(4)]
    m[p - 1][q - 1] = 1
    return Sl4Element(tuple(map(tuple, m)), f"E{p}{q}")


def diagonal_difference(p: int, q: int) -> Sl4Element:
    m = [[0] * 4 for _ in range(4)]
    m[p - 1][p - 1] = 1
    m[q - 1][q - 1] = -1
    return Sl4Element(tuple(map(tuple, m)), f"E{p}{p}-E{q}{q}")


def sl4_basis() -> list[Sl4Element]:
    """Three diagonal differences E11-Eqq followed by the twelve E_pq, p != q."""
    out = [diagonal_difference(1, q) for q in (2, 3, 4)]
    out += [elementary(p, q) for p in range(1, 5) for q in range(1, 5) if p != q]
    return out


def basis_element(label: str) -> Sl4Element:
    for x in sl4_basis():
        if x.label == label:
            return x
    raise GrassmannError(f"unknown sl4 basis label {label!r}")


def wedge2_action(x: Sl4Element) -> list[list[int]]:
    """The coordinate substitution matrix M(x) = (wedge^2 x)^T.

    ``M[c][r]`` is the coefficient of ``z_r`` added to ``z_c``.
    """
    a = x.matrix
    idx = {p: k for k, p in enumerate(PAIRS)}
    w = [[0] * 6 for _ in range(6)]  # w[r][c]: coefficient of basis r in x(e_i ^ e_j), c = (i, j)
    for c, (i, j) in enumerate(PAIRS):
        for k in range(1, 5):
            # x e_i = sum_k a[k][i] e_k
            for (u, v), coeff in (((k, j), a[k - 1][i - 1]), ((i, k), a[k - 1][j - 1])):
                if coeff == 0 or u == v:
                    continue
                sign = 1
                if u > v:
                    u, v, sign = v, u, -1
                w[idx[(u, v)]][c] += sign * coeff
    return [[w[r][c] for r in range(6)] for c in range(6)]


@dataclass(frozen=True)
class FamilyAction:
    """The t-family substitution matrix and the power of t used to clear denominators."""

    matrix: tuple[tuple[TPoly, ...], ...]
    t_power: int

    def at(self, t) -> list[list[Fraction]]:
        return [[c(t) for c in row] for row in self.matrix]


def family_action(x: Sl4Element) -> FamilyAction:
    """D_t^{-1} M D_t, multiplied by the least power of t making it polynomial."""
    m = wedge2_action(x)
    d = [1, 0, 0, 0, 0, 0]  # exponent of t in d_c
    laurent = [[(m[c][r], d[r] - d[c]) for r in range(6)] for c in range(6)]
    low = min((e for row in laurent for v, e in row if v), default=0)
    k = max(0, -low)
    mat = tuple(
        tuple(TPoly([0] * (e + k) + [v]) if v else ZERO for v, e in row) for row in laurent
    )
    return FamilyAction(mat, k)


def preserves_ideal(n: Sequence[Sequence], t) -> tuple[bool, Fraction | None]:
    """Whether N^T A_t + A_t N = c A_t for a scalar c; returns (ok, c)."""
    a = [[x(t) for x in row] for row in quadric_matrix(t)]
    n = [[Fraction(x) for x in row] for row in n]
    lhs = [[sum(n[k][i] * a[k][j] + a[i][k] * n[k][j] for k in range(6)) for j in range(6)]
           for i in range(6)]
    c = None
    for i in range(6):
        for j in range(6):
            if a[i][j] != 0:
                q = lhs[i][j] / a[i][j]
                if c is None:
                    c = q
                elif q != c:
                    return False, None
    if c is None:
        c = Fraction(0)
    ok = all(lhs[i][j] == c * a[i][j] for i in range(6) for j in range(6))
    return ok, (c if ok else None)


def operator_from_substitution(matrix: Sequence[Sequence]) -> WeylOperator:
    """The first-order operator on E induced by z_c -> z_c + s sum_r N[c][r] z_r.

    The substitution acts on z^I as the derivation sum_c i_c z^(I - e_c + e_r);
    dualizing gives ``sum_I a_I sum_{c,r} i_c N[c][r] d/da_{I - e_c + e_r}``.
    """
    space = quartic_space()
    entries = [(c, r, TPoly.const(v) if not isinstance(v, TPoly) else v)
               for c, row in enumerate(matrix) for r, v in enumerate(row)]
    entries = [(c, r, v) for c, r, v in entries if not v.is_zero()]
    items = []
    for idx, lab in enumerate(space.labels):
        for c, r, v in entries:
            if lab[c] == 0:
                continue
            target = tuple(x - (k == c) + (k == r) for k, x in enumerate(lab))
            items.append((v * lab[c], ((idx, 1),), ((space.index(target), 1),)))
    return WeylOperator.from_sum(space, items)


def sl4_operator(x: Sl4Element, t=None) -> WeylOperator:
    """Z(x) on the a-variables for the family action; ``t`` specializes if given."""
    op = operator_from_substitution(family_action(x).matrix)
    return op if t is None else op.specialize(t)


def euler_E() -> WeylOperator:
    space = quartic_space()
    return WeylOperator.from_sum(
        space, [(1, ((i, 1),), ((i, 1),)) for i in range(len(space))] + [(1, (), ())]
    )


def linear_d_operator(coeffs: dict) -> WeylOperator:
    """``sum_I c_I d/da_I`` for a map I -> coefficient."""
    space = quartic_space()
    return WeylOperator.from_sum(space, [(c, (), ((space.index(I), 1),)) for I, c in coeffs.items()])


def q4_vectors(t=None) -> list[dict]:
    """For each quadric monomial z^K, the expansion of q_t z^K in the quartic basis."""
    out = []
    for K in quadric_indices():
        vec: dict = {}
        for c, e in quadric_terms(t):
            I = vadd(e, K)
            vec[I] = vec.get(I, ZERO) + c
        out.append(vec)
    return out


def q4_operators(t=None) -> list[WeylOperator]:
    """The 21 operators d_zeta, zeta = q_t z^K; symbolic in t unless ``t`` is given."""
    return [linear_d_operator(v) for v in q4_vectors(t)]


def evaluate_quartic(vec: dict, z: Sequence, t=1) -> Fraction:
    total = Fraction(0)
    for I, c in vec.items():
        term = c(t) if isinstance(c, TPoly) else Fraction(c)
        for k, e in enumerate(I):
            term *= Fraction(z[k]) ** e
        total += term
    return total


def veronese_pair_classes() -> dict[tuple[int, ...], list[tuple[int, int]]]:
    """Unordered pairs {u, v} of E (as index pairs) grouped by u + v."""
    labels = quartic_indices()
    classes: dict = {}
    for i in range(len(labels)):
        for j in range(i, len(labels)):
            s = vadd(labels[i], labels[j])
            classes.setdefault(s, []).append((i, j))
    return classes


def veronese_binomials() -> list[WeylOperator]:
    """All d_u d_v - d_p d_q with u + v = p + q and {u, v} != {p, q}."""
    space = quartic_space()
    out = []
    classes = veronese_pair_classes_cached()
    for s in sorted(classes):
        pairs = classes[s]
        for (u, v), (p, q) in itertools.combinations(pairs, 2):
            out.append(WeylOperator(space, {
                ((), mono([(u, 1), (v, 1)])): ONE,
                ((), mono([(p, 1), (q, 1)])): -ONE,
            }))
    return out


@lru_cache(maxsize=None)
def veronese_pair_classes_cached():
    return veronese_pair_classes()


def taut_system_X(t=1) -> OperatorSystem:
    """The tautological system on the quartic space, specialized at ``t`` (default 1).

    Pass ``t=None`` for coefficients symbolic in ``t``.
    """
    sys = OperatorSystem("tau_X", quartic_space(), parameter_t=None if t is None else str(t))
    for x in sl4_basis():
        fa = family_action(x)
        op = operator_from_substitution(fa.matrix)
        sys.add("symmetry", op if t is None else op.specialize(t), sl4=x.label, t_power=fa.t_power)
    sys.add("euler", euler_E())
    for K, op in zip(quadric_indices(), q4_operators(t)):
        sys.add("polynomial", op, quadric=list(K))
    for op in veronese_binomials():
        sys.add("binomial", op)
    return sys
