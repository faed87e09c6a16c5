"""A small exact Weyl-algebra engine.

Operators are finite sums ``c * x^a * d^b`` kept in normal order (variables to
the left of derivatives) over a finite, labelled set of variables. Coefficients
are polynomials in one formal parameter ``t`` with rational coefficients, so a
single operator can describe a whole one-parameter family.

Monomials are stored sparsely as sorted tuples of ``(index, exponent)`` pairs;
with 100+ variables and at most a handful of nonzero exponents per term this
keeps every operation proportional to the number of terms.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

Mono = tuple[tuple[int, int], ...]


class WeylError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Polynomials in t
# ---------------------------------------------------------------------------

class TPoly:
    """Polynomial in ``t`` with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x) -> "TPoly":
        return cls((x,))

    @classmethod
    def t(cls) -> "TPoly":
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def constant(self) -> Fraction:
        """The value of a constant polynomial; raises if ``t`` still appears."""
        if len(self.c) > 1:
            raise WeylError(f"coefficient {self} still depends on t")
        return self.c[0] if self.c else Fraction(0)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        acc = Fraction(0)
        for x in reversed(self.c):
            acc = acc * t + x
        return acc

    def __add__(self, other):
        try:
            other = _tp(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return TPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-x for x in self.c)

    def __sub__(self, other):
        return self + (-_tp(other))

    def __rsub__(self, other):
        return _tp(other) - self

    def __mul__(self, other):
        try:
            other = _tp(other)
        except TypeError:
            return NotImplemented
        if not self.c or not other.c:
            return TPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return TPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.c == _tp(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"TPoly({self})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k, x in enumerate(self.c):
            if x == 0:
                continue
            if k == 0:
                s = str(x)
            else:
                tk = "t" if k == 1 else f"t^{k}"
                s = tk if x == 1 else "-" + tk if x == -1 else f"{x}*{tk}"
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)

    _TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*t(?:\^(\d+))?)?|t(?:\^(\d+))?)")

    @classmethod
    def parse(cls, text: str) -> "TPoly":
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        out: dict[int, Fraction] = defaultdict(Fraction)
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise WeylError(f"cannot parse coefficient {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(2) is not None:
                val = Fraction(m.group(2))
                if "*t" in m.group(0):
                    k = int(m.group(3) or 1)
                else:
                    k = 0
            else:
                val = Fraction(1)
                k = int(m.group(4) or 1)
            out[k] += sign * val
            pos = m.end()
        n = max(out) + 1 if out else 0
        return cls(out.get(k, 0) for k in range(n))


def _tp(x) -> TPoly:
    if isinstance(x, TPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return TPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to TPoly")


ZERO = TPoly()
ONE = TPoly.const(1)
T = TPoly.t()


# ---------------------------------------------------------------------------
# Variable spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VariableSpace:
    """An ordered set of labelled coordinates, e.g. ``{a_I}`` or ``{b_J}``."""

    name: str
    labels: tuple
    symbol: str = "b"
    has_t: bool = False
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(tuple(l) if isinstance(l, (list, tuple)) else l for l in self.labels)
        object.__setattr__(self, "labels", labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise WeylError(f"duplicate labels in space {self.name!r}")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise WeylError(f"{label!r} is not a variable of {self.name!r}") from None

    def label_str(self, i: int) -> str:
        lab = self.labels[i]
        if isinstance(lab, tuple):
            return ",".join(str(x) for x in lab)
        return str(lab)

    def parse_label(self, text: str):
        for lab in self.labels:
            break
        if isinstance(lab, tuple):
            return tuple(int(x) for x in text.split(","))
        return type(lab)(text)


# ---------------------------------------------------------------------------
# Monomial helpers
# ---------------------------------------------------------------------------

def mono(exps: Mapping[int, int] | Iterable[tuple[int, int]]) -> Mono:
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[int, int] = defaultdict(int)
    for i, e in items:
        acc[i] += e
    return tuple(sorted((i, e) for i, e in acc.items() if e != 0))


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted((i, e) for i, e in d.items() if e != 0))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

class WeylOperator:
    """Normal-ordered differential operator with polynomial-in-t coefficients.

    ``terms`` maps ``(x_monomial, d_monomial)`` to a nonzero `TPoly`. Two
    operators are equal exactly when their canonical term maps agree.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: Mapping | None = None):
        self.space = space
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _tp(c)
                if not c.is_zero():
                    clean[key] = c
        self.terms: dict[tuple[Mono, Mono], TPoly] = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def scalar(cls, space, c):
        return cls(space, {((), ()): c})

    @classmethod
    def identity(cls, space):
        return cls.scalar(space, 1)

    @classmethod
    def var(cls, space, label, power: int = 1):
        return cls(space, {(((space.index(label), power),), ()): ONE})

    @classmethod
    def d(cls, space, label, power: int = 1):
        return cls(space, {((), ((space.index(label), power),)): ONE})

    @classmethod
    def from_sum(cls, space, items: Iterable[tuple[object, Mono, Mono]]):
        """Accumulate ``(coeff, x_mono, d_mono)`` triples into one operator."""
        acc: dict = {}
        for c, xm, dm in items:
            key = (xm, dm)
            acc[key] = acc.get(key, ZERO) + _tp(c)
        return cls(space, acc)

    # algebra ----------------------------------------------------------------
    def _check(self, other: "WeylOperator"):
        if other.space is not self.space:
            raise WeylError(f"operators on different spaces {self.space.name!r}/{other.space.name!r}")

    def __add__(self, other):
        if not isinstance(other, WeylOperator):
            other = WeylOperator.scalar(self.space, other)
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, ZERO) + c
        return WeylOperator(self.space, acc)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOperator):
            other = WeylOperator.scalar(self.space, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return op_compose(self, other)
        c = _tp(other)
        return WeylOperator(self.space, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = _tp(other)
        return WeylOperator(self.space, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"WeylOperator({self.space.name}, {len(self.terms)} terms)"

    # inspection ---------------------------------------------------------
    @property
    def order(self) -> int:
        """Highest total derivative degree among the terms (0 for scalars)."""
        return max((mono_degree(dm) for _, dm in self.terms), default=0)

    @property
    def t_degree(self) -> int:
        return max((c.degree for c in self.terms.values()), default=0)

    def coefficient(self, x: Mapping | Mono = (), d: Mapping | Mono = ()) -> TPoly:
        key = (mono(x) if isinstance(x, Mapping) else x, mono(d) if isinstance(d, Mapping) else d)
        return self.terms.get(key, ZERO)

    def specialize(self, t) -> "WeylOperator":
        """Substitute a rational value for ``t``."""
        return WeylOperator(self.space, {k: TPoly.const(c(t)) for k, c in self.terms.items()})

    def t_coefficient(self, k: int) -> "WeylOperator":
        """The operator multiplying ``t^k``."""
        return WeylOperator(
            self.space,
            {key: TPoly.const(c.c[k]) for key, c in self.terms.items() if len(c.c) > k},
        )

    def is_specialized(self) -> bool:
        return all(c.is_const() for c in self.terms.values())

    def vector(self) -> dict:
        """Terms as a plain key -> Fraction map (requires ``t`` specialized)."""
        return {k: c.constant() for k, c in self.terms.items()}

    def remap(self, space: VariableSpace, index_map: Mapping[int, int]) -> "WeylOperator":
        """Rename variables into another space through an index map."""
        def tr(m: Mono) -> Mono:
            return mono((index_map[i], e) for i, e in m)
        return WeylOperator.from_sum(space, ((c, tr(x), tr(d)) for (x, d), c in self.terms.items()))

    # serialization ----------------------------------------------------------
    def to_text(self) -> str:
        lines = []
        for (xm, dm) in sorted(self.terms, key=_term_sort_key):
            c = self.terms[(xm, dm)]
            cs = str(c)
            if len([x for x in c.c if x]) > 1:
                cs = f"({cs})"
            parts = [cs]
            sym = self.space.symbol
            for i, e in xm:
                parts.append(f"{sym}[{self.space.label_str(i)}]" + (f"^{e}" if e != 1 else ""))
            for i, e in dm:
                parts.append(f"d[{self.space.label_str(i)}]" + (f"^{e}" if e != 1 else ""))
            lines.append(" * ".join(parts))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, space: VariableSpace, text: str) -> "WeylOperator":
        factor = re.compile(r"^(\w+)\[([^\]]*)\](?:\^(-?\d+))?$")
        items = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            pieces = [p.strip() for p in _split_factors(line)]
            c = TPoly.parse(pieces[0])
            xs, ds = [], []
            for p in pieces[1:]:
                m = factor.match(p)
                if not m:
                    raise WeylError(f"bad factor {p!r}")
                idx = space.index(space.parse_label(m.group(2)))
                e = int(m.group(3) or 1)
                if m.group(1) == "d":
                    ds.append((idx, e))
                elif m.group(1) == space.symbol:
                    xs.append((idx, e))
                else:
                    raise WeylError(f"unknown symbol {m.group(1)!r}")
            items.append((c, mono(xs), mono(ds)))
        return cls.from_sum(space, items)

    def to_json(self) -> list:
        out = []
        for (xm, dm) in sorted(self.terms, key=_term_sort_key):
            c = self.terms[(xm, dm)]
            out.append({
                "coeff": [str(x) for x in c.c],
                "x": [[self.space.label_str(i), e] for i, e in xm],
                "d": [[self.space.label_str(i), e] for i, e in dm],
            })
        return out

    @classmethod
    def from_json(cls, space: VariableSpace, data: list) -> "WeylOperator":
        items = []
        for term in data:
            c = TPoly(Fraction(x) for x in term["coeff"])
            xm = mono((space.index(space.parse_label(l)), e) for l, e in term["x"])
            dm = mono((space.index(space.parse_label(l)), e) for l, e in term["d"])
            items.append((c, xm, dm))
        return cls.from_sum(space, items)


def _split_factors(line: str) -> list[str]:
    # split on '*' that is surrounded by spaces; coefficients use '*' without spaces
    return line.split(" * ")


def _term_sort_key(key):
    xm, dm = key
    return (mono_degree(dm), dm, mono_degree(xm), xm)


# ---------------------------------------------------------------------------
# Composition and commutators
# ---------------------------------------------------------------------------

def _contractions(ad: Mono, bx: Mono) -> Iterator[tuple[int, Mono, Mono]]:
    """Yield ``(factor, bx - k, ad - k)`` for all ways of moving ``d^ad`` past ``x^bx``.

    Uses d_i^p x_i^q = sum_k C(p,k) q!/(q-k)! x_i^(q-k) d_i^(p-k).
    """
    dd = dict(ad)
    xx = dict(bx)
    common = sorted(set(dd) & set(xx))
    ranges = [range(min(dd[i], xx[i]) + 1) for i in common]
    for ks in product(*ranges):
        f = 1
        nx = dict(xx)
        nd = dict(dd)
        for i, k in zip(common, ks):
            if k:
                f *= comb(dd[i], k) * _falling(xx[i], k)
                nx[i] -= k
                nd[i] -= k
        yield f, ks, tuple(sorted((i, e) for i, e in nx.items() if e)), tuple(
            sorted((i, e) for i, e in nd.items() if e)
        )


def op_compose(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    """The normal-ordered product ``a b``."""
    a._check(b)
    acc: dict = {}
    for (ax, ad), ca in a.terms.items():
        for (bx, bd), cb in b.terms.items():
            c = ca * cb
            for f, _, rest_x, rest_d in _contractions(ad, bx):
                key = (mono_mul(ax, rest_x), mono_mul(rest_d, bd))
                acc[key] = acc.get(key, ZERO) + c * f
    return WeylOperator(a.space, acc)


def _contraction_part(a: WeylOperator, b: WeylOperator, acc: dict, sign: int) -> None:
    # only pairs where a's derivatives meet b's variables produce k != 0 terms
    by_var: dict[int, list] = defaultdict(list)
    for key in b.terms:
        for i, _ in key[0]:
            by_var[i].append(key)
    for (ax, ad), ca in a.terms.items():
        seen = set()
        for i, _ in ad:
            for bkey in by_var.get(i, ()):
                if bkey in seen:
                    continue
                seen.add(bkey)
                bx, bd = bkey
                c = ca * b.terms[bkey]
                for f, ks, rest_x, rest_d in _contractions(ad, bx):
                    if not any(ks):
                        continue
                    key = (mono_mul(ax, rest_x), mono_mul(rest_d, bd))
                    acc[key] = acc.get(key, ZERO) + c * (sign * f)


def op_commutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    """``[a, b] = ab - ba``.

    The uncontracted parts of ``ab`` and ``ba`` coincide, so only the
    contraction terms are generated; this is what keeps commutators of
    operators with hundreds of terms cheap.
    """
    a._check(b)
    acc: dict = {}
    _contraction_part(a, b, acc, 1)
    _contraction_part(b, a, acc, -1)
    return WeylOperator(a.space, acc)


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """A formal series in the variables of a space, truncated by level.

    The distinguished variables (the inverted leading coefficients) may carry
    negative exponents; the level of a monomial is its total degree in the
    remaining variables. Levels ``0..k_max`` are complete.
    """

    __slots__ = ("space", "distinguished", "k_max", "terms")

    def __init__(self, space: VariableSpace, distinguished: Sequence[int], k_max: int,
                 terms: Mapping[Mono, Fraction] | None = None):
        self.space = space
        self.distinguished = tuple(distinguished)
        self.k_max = k_max
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    def level(self, m: Mono) -> int:
        dist = self.distinguished
        return sum(e for i, e in m if i not in dist)

    def level_part(self, k: int) -> dict[Mono, Fraction]:
        return {m: c for m, c in self.terms.items() if self.level(m) == k}

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {mono_degree(m) for m in self.terms}

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.space is other.space and self.k_max == other.k_max
                and self.distinguished == other.distinguished and self.terms == other.terms)

    def __repr__(self):
        return f"TruncatedSeries({self.space.name}, k_max={self.k_max}, {len(self.terms)} terms)"

    def dump(self) -> str:
        """One line per term: ``b0^e : multi-index : rational``."""
        dist = self.distinguished
        lines = []
        for m in sorted(self.terms, key=lambda m: (self.level(m), m)):
            d = dict(m)
            b0 = ",".join(str(d.get(i, 0)) for i in dist)
            rest = " ".join(
                f"[{self.space.label_str(i)}]^{e}" for i, e in m if i not in dist
            )
            lines.append(f"b0^{b0} : {rest} : {self.terms[m]}")
        return "\n".join(lines)


def _level_shift(op: WeylOperator, dist: Sequence[int]) -> int:
    """Max over terms of (derivative degree - variable degree) off the distinguished vars."""
    best = None
    for xm, dm in op.terms:
        s = sum(e for i, e in dm if i not in dist) - sum(e for i, e in xm if i not in dist)
        best = s if best is None else max(best, s)
    return best or 0


def apply_to_series(op: WeylOperator, s: TruncatedSeries) -> TruncatedSeries:
    """Apply ``op`` termwise and keep only the fully determined levels.

    An output level ``L`` draws on input level ``L + (|d| - |x|)`` for each
    term, so it is determined when ``L <= k_max - max(|d| - |x|)``.
    """
    if op.space is not s.space:
        raise WeylError("operator and series live on different spaces")
    if not op.is_specialized():
        raise WeylError("specialize t before applying an operator to a series")
    dist = s.distinguished
    top = s.k_max - _level_shift(op, dist)
    postings: dict[int, list[Mono]] = defaultdict(list)
    for m in s.terms:
        for i, _ in m:
            postings[i].append(m)
    everything = list(s.terms)
    acc: dict[Mono, Fraction] = defaultdict(Fraction)
    for (xm, dm), c in op.terms.items():
        c = c.constant()
        # restrict the scan to monomials containing a non-distinguished derivative variable
        candidates = everything
        for i, _ in dm:
            if i not in dist and len(postings.get(i, ())) < len(candidates):
                candidates = postings.get(i, [])
        for m in candidates:
            md = dict(m)
            f = c
            for i, k in dm:
                e = md.get(i, 0)
                ff = _falling(e, k)
                if ff == 0:
                    f = 0
                    break
                f *= ff
                md[i] = e - k
            if f == 0:
                continue
            for i, k in xm:
                md[i] = md.get(i, 0) + k
            nm = tuple(sorted((i, e) for i, e in md.items() if e != 0))
            acc[nm] += f * s.terms[m]
    out = {m: v for m, v in acc.items() if v != 0 and 0 <= s.level(m) <= top}
    return TruncatedSeries(s.space, dist, top, out)


# ---------------------------------------------------------------------------
# Spans of operators
# ---------------------------------------------------------------------------

class OperatorSpan:
    """Incrementally maintained rational span of specialized operators.

    Rows are kept reduced against each other's pivot keys, so membership is a
    single reduction.
    """

    def __init__(self, ops: Iterable[WeylOperator] = ()):
        self.rows: list[dict] = []
        self.pivots: list = []
        for op in ops:
            self.add(op)

    @staticmethod
    def _vec(op) -> dict:
        return op.vector() if isinstance(op, WeylOperator) else dict(op)

    def _reduce(self, v: dict) -> dict:
        v = dict(v)
        for row, p in zip(self.rows, self.pivots):
            c = v.get(p)
            if c:
                for k, x in row.items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, op) -> bool:
        """Insert ``op``; returns True when it enlarged the span."""
        v = self._reduce(self._vec(op))
        if not v:
            return False
        p = min(v, key=_term_sort_key)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows:
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def __contains__(self, op) -> bool:
        return not self._reduce(self._vec(op))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_all(self, ops: Iterable) -> bool:
        return all(op in self for op in ops)


def span_dim(ops: Iterable[WeylOperator]) -> int:
    return OperatorSpan(ops).dim


def spans_equal(a: Sequence[WeylOperator], b: Sequence[WeylOperator]) -> bool:
    sa, sb = OperatorSpan(a), OperatorSpan(b)
    return sa.dim == sb.dim and sa.contains_all(b)


def proportionality(op: WeylOperator, ref: WeylOperator) -> Fraction | None:
    """The scalar ``c`` with ``op == c * ref`` (both specialized), or None."""
    if not ref.terms:
        return Fraction(0) if not op.terms else None
    if set(op.terms) != set(ref.terms):
        return None
    key = next(iter(ref.terms))
    c = op.terms[key].constant() / ref.terms[key].constant()
    for k, v in ref.terms.items():
        if op.terms[k].constant() != c * v.constant():
            return None
    return c


# ---------------------------------------------------------------------------
# Tagged generator systems
# ---------------------------------------------------------------------------

@dataclass
class Generator:
    tag: str
    operator: WeylOperator
    provenance: dict = field(default_factory=dict)


@dataclass
class OperatorSystem:
    """A tagged list of generators (torus, euler, root, polynomial, binomial, ...)."""

    name: str
    space: VariableSpace
    generators: list[Generator] = field(default_factory=list)
    parameter_t: str | None = None

    def add(self, tag: str, operator: WeylOperator, **provenance) -> None:
        if operator.space is not self.space:
            raise WeylError("generator lives on a different space")
        self.generators.append(Generator(tag, operator, provenance))

    def by_tag(self, *tags: str) -> list[WeylOperator]:
        return [g.operator for g in self.generators if g.tag in tags]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.generators:
            out[g.tag] = out.get(g.tag, 0) + 1
        return out

    def __len__(self):
        return len(self.generators)

    def to_json(self) -> dict:
        return {
            "system": self.name,
            "space": self.space.name,
            "variables": [self.space.label_str(i) for i in range(len(self.space))],
            "t": self.parameter_t,
            "counts": self.counts(),
            "generators": [
                {"tag": g.tag, "provenance": _jsonable(g.provenance), "operator": g.operator.to_text()}
                for g in self.generators
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x
