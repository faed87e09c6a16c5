"""Exact integer and rational linear algebra on the lattices M and N.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point. Vectors are plain tuples internally, `LatticeVector` is the
tagged public wrapper used where the M/N distinction matters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVec = tuple[int, ...]


class LatticeError(ValueError):
    """Raised on dimension or lattice-tag mismatches."""


@dataclass(frozen=True)
class LatticeVector:
    """A point of M (characters) or N (cocharacters)."""

    entries: IntVec
    space: str = "N"

    def __post_init__(self):
        if self.space not in ("M", "N"):
            raise LatticeError(f"unknown lattice tag {self.space!r}")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if not self.entries:
            raise LatticeError("lattice vectors must have positive dimension")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def is_primitive(self) -> bool:
        g = 0
        for e in self.entries:
            g = gcd(g, e)
        return g == 1

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _check_same(self, other)
        return LatticeVector(add(self.entries, other.entries), self.space)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-e for e in self.entries), self.space)

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * e for e in self.entries), self.space)

    __rmul__ = __mul__


def _check_same(u: LatticeVector, v: LatticeVector) -> None:
    if u.space != v.space or u.dimension != v.dimension:
        raise LatticeError("vectors live in different lattices")


def pairing(m: LatticeVector, v: LatticeVector) -> int:
    """The dual pairing <m, v> between an M-vector and an N-vector."""
    if m.dimension != v.dimension:
        raise LatticeError(f"dimension mismatch: {m.dimension} vs {v.dimension}")
    if {m.space, v.space} != {"M", "N"}:
        raise LatticeError("pairing needs one M-vector and one N-vector")
    return dot(m.entries, v.entries)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def scale(k, u: Sequence) -> tuple:
    return tuple(k * a for a in u)


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

def _as_int_rows(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    out = [[int(x) for x in r] for r in rows]
    if out and len({len(r) for r in out}) != 1:
        raise LatticeError("ragged matrix")
    return out


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[IntVec]:
    """Row-style Hermite normal form, zero rows dropped.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``, so the result is a canonical basis of the row lattice.
    """
    h, _, _ = _echelon(_as_int_rows(rows), track=False)
    return [tuple(r) for r in h]


def _echelon(a: list[list[int]], track: bool):
    """Integer row echelon form by unimodular row operations.

    Returns the nonzero echelon rows (HNF-reduced) and, when ``track`` is set,
    the unimodular transform ``u`` with ``u @ a_original == echelon`` padded by
    the rows spanning the left kernel.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    a = [r[:] for r in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    pivot_row = 0
    pivots = []
    for col in range(n):
        if pivot_row >= m:
            break
        # Euclid on the column below pivot_row
        while True:
            nz = [i for i in range(pivot_row, m) if a[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][col]))
            a[pivot_row], a[best] = a[best], a[pivot_row]
            if track:
                u[pivot_row], u[best] = u[best], u[pivot_row]
            done = True
            for i in range(pivot_row + 1, m):
                if a[i][col]:
                    q = a[i][col] // a[pivot_row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[pivot_row][col] == 0:
            continue
        if a[pivot_row][col] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
            if track:
                u[pivot_row] = [-x for x in u[pivot_row]]
        p = a[pivot_row][col]
        for i in range(pivot_row):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                if track:
                    u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return a[:pivot_row], (u if track else None), pivot_row


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[IntVec]:
    """A canonical Z-basis of ``{x : A x = 0}``.

    The basis is returned in Hermite normal form (first nonzero entry of each
    vector positive), so equal kernels give identical output.
    """
    a = _as_int_rows(matrix)
    if not a:
        return []
    ncols = len(a[0])
    _, u, r = _echelon(transpose(a), track=True)
    basis = [u[i] for i in range(r, ncols)]
    if not basis:
        return []
    return hermite_normal_form(basis)


def abs_determinant(rows: Sequence[Sequence[int]]) -> int:
    """|det| of a square integer matrix (fraction-free Bareiss elimination)."""
    a = _as_int_rows(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise LatticeError(f"determinant of a non-square {n}x{len(a[0]) if a else 0} matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return abs(sign * a[n - 1][n - 1])


# ---------------------------------------------------------------------------
# Rational linear algebra
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` over Q (free variables set to 0), or None."""
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    if not aug:
        return []
    n = len(aug[0]) - 1
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """A basis of the rational kernel, one vector per free column."""
    if not matrix:
        return []
    n = len(matrix[0])
    red, piv = rref(matrix)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def in_cone(point: Sequence, generators: Sequence[Sequence[int]]) -> bool:
    """Exact membership of ``point`` in the cone spanned by ``generators``.

    By Caratheodory it is enough to try every linearly independent subset of
    size ``rank``; each is solved exactly and checked for nonnegativity.
    """
    point = [Fraction(x) for x in point]
    if all(x == 0 for x in point):
        return True
    gens = [tuple(g) for g in generators]
    if not gens:
        return False
    r = rank(gens)
    for subset in itertools.combinations(gens, r):
        if rank(subset) < r:
            continue
        sol = solve(transpose(subset), point)
        if sol is not None and all(c >= 0 for c in sol):
            return True
    return False


def primitive(v: Sequence[int]) -> IntVec:
    g = 0
    for e in v:
        g = gcd(g, int(e))
    if g == 0:
        return tuple(v)
    return tuple(int(e) // g for e in v)
