"""Exact coefficient fields, monomial orders, sparse polynomials and polynomial matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class RingMismatchError(ValueError):
    """Raised when operands live in different polynomial rings."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (characteristic 0) or the prime field F_p.

    Rational elements are ``Fraction`` instances, prime-field elements are
    ints in ``[0, p)``.
    """

    __slots__ = ("p",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.p = characteristic

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime-field"

    def __call__(self, value) -> Fraction | int:
        p = self.p
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by ``kind`` plus optional weights and precedence.

    ``precedence`` lists variable indices from most to least significant.
    ``weights`` (weighted-degrevlex only) are compared before the ordinary
    degrevlex tiebreak; zero weights are allowed, which gives elimination
    orders.
    """

    kind: str = "degrevlex"
    weights: tuple[int, ...] | None = None
    precedence: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "weighted-degrevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weighted-degrevlex":
            if self.weights is None or any(w < 0 for w in self.weights):
                raise ValueError("weighted-degrevlex needs nonnegative weights")

    @property
    def key(self):
        """Sort key on exponent tuples: larger key means larger monomial."""
        return _order_key(self.kind, self.weights, self.precedence)

    def is_graded(self) -> bool:
        return self.kind == "degrevlex"


@lru_cache(maxsize=None)
def _order_key(kind, weights, precedence):
    if kind == "lex":
        if precedence is None:
            return lambda m: m
        return lambda m: tuple(m[i] for i in precedence)
    if precedence is None:
        def revlex(m):
            return (sum(m), tuple(-e for e in reversed(m)))
    else:
        rev = tuple(reversed(precedence))

        def revlex(m):
            return (sum(m), tuple(-m[i] for i in rev))
    if kind == "degrevlex":
        return lru_cache(maxsize=1 << 16)(revlex)
    w = weights

    def weighted(m):
        return (sum(a * b for a, b in zip(w, m)), revlex(m))

    return lru_cache(maxsize=1 << 16)(weighted)


DEGREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


def elimination_order(n: int, eliminate: Iterable[int]) -> MonomialOrder:
    """Order in which any monomial involving ``eliminate`` beats every one that does not."""
    elim = set(eliminate)
    return MonomialOrder("weighted-degrevlex", tuple(1 if i in elim else 0 for i in range(n)))


# ---------------------------------------------------------------------------
# rings and polynomials


class PolyRing:
    """Polynomial ring over a :class:`Field` with named variables.

    Two rings are equal when their variable names and field agree; the
    default order is a property of the ring object, not of its identity.
    """

    def __init__(self, variables: Sequence[str] | str, field: Field = QQ,
                 order: MonomialOrder = DEGREVLEX):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.replace(" ", ",").split(",") if v.strip()]
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.field = field
        self.order = order
        self.nvars = len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.variables, self.field))

    def __repr__(self) -> str:
        return f"PolyRing({','.join(self.variables)} over {self.field!r})"

    def index(self, var: str | Polynomial) -> int:
        if isinstance(var, Polynomial):
            var = var.as_variable()
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r} in {self!r}") from None

    def has_var(self, name: str) -> bool:
        return name in self._index

    @property
    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(v) for v in self.variables)

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def __getitem__(self, name: str) -> Polynomial:
        return self.var(name)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping[tuple[int, ...], object]) -> Polynomial:
        conv = self.field
        out = {}
        for m, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def __call__(self, obj) -> Polynomial:
        if isinstance(obj, Polynomial):
            if obj.ring == self:
                return obj
            return self.embed(obj)
        if isinstance(obj, str):
            from .grammar import parse_polynomial
            return parse_polynomial(obj, self)
        return self.constant(obj)

    def parse(self, text: str) -> Polynomial:
        from .grammar import parse_polynomial
        return parse_polynomial(text, self)

    def with_field(self, field: Field) -> PolyRing:
        return PolyRing(self.variables, field, self.order)

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.variables, self.field, order)

    def extend(self, new_vars: Sequence[str], front: bool = False) -> PolyRing:
        """Enlarged ring with ``new_vars`` adjoined (after the existing ones by default)."""
        new_vars = [v for v in new_vars if v not in self._index]
        vs = list(new_vars) + list(self.variables) if front else list(self.variables) + list(new_vars)
        return PolyRing(vs, self.field, DEGREVLEX)

    def drop(self, names: Iterable[str]) -> PolyRing:
        names = set(names)
        return PolyRing([v for v in self.variables if v not in names], self.field, DEGREVLEX)

    def embed(self, f: Polynomial) -> Polynomial:
        """Inject ``f`` by variable name; every variable of ``f`` must exist here."""
        src = f.ring
        if src.field != self.field:
            raise RingMismatchError(f"field mismatch: {src.field!r} vs {self.field!r}")
        perm = []
        for i, v in enumerate(src.variables):
            if v in self._index:
                perm.append((i, self._index[v]))
            elif f.degree_in(i) > 0:
                raise RingMismatchError(f"variable {v!r} is not in {self!r}")
        out = {}
        n = self.nvars
        for m, c in f._terms.items():
            e = [0] * n
            for i, j in perm:
                e[j] = m[i]
            out[tuple(e)] = c
        return Polynomial(self, out)

    def change_field(self, f: Polynomial) -> Polynomial:
        """Reduce/convert the coefficients of ``f`` into this ring's field (by name)."""
        field = self.field
        if f.ring.field.p == 0 and field.p:
            g = {}
            for m, c in f._terms.items():
                c = field(c)
                if c:
                    g[m] = c
            return self.embed(Polynomial(f.ring.with_field(field), g))
        return self.embed(Polynomial(f.ring.with_field(field), {m: field(c) for m, c in f._terms.items()}))

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return list(_monomials_of_degree(self.nvars, d))


@lru_cache(maxsize=None)
def _monomials_of_degree(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(d + n - 2 - prev)
        out.append(tuple(e))
    return tuple(out)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero coefficients.

    Instances are treated as immutable; every operation returns a new object.
    ``terms()`` lists the terms in decreasing order for the ring's order.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- inspection -------------------------------------------------------
    def terms(self, order: MonomialOrder | None = None) -> list[tuple[tuple[int, ...], object]]:
        key = (order or self.ring.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), self.ring.field.zero())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring.zero_exp in self._terms)

    def constant_value(self):
        return self._terms.get(self.ring.zero_exp, self.ring.field.zero())

    def leading_monomial(self, order: MonomialOrder | None = None) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self._terms[self.leading_monomial(order)]

    def leading_term(self, order: MonomialOrder | None = None) -> Polynomial:
        m = self.leading_monomial(order)
        return Polynomial(self.ring, {m: self._terms[m]})

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max(sum(a * b for a, b in zip(weights, m)) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self._terms}
        return len(degs) <= 1

    def variables_used(self) -> set[str]:
        used = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    def as_variable(self) -> str:
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            if c == 1 and sum(m) == 1:
                return self.ring.variables[m.index(1)]
        raise ValueError(f"{self} is not a ring variable")

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self._terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                out[m] = v % p if p else v
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self._terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, exps: Sequence[int], c) -> Polynomial:
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {_add_exp(m, exps): v * c % p for m, v in self._terms.items()})
        return Polynomial(self.ring, {_add_exp(m, exps): v * c for m, v in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def diff(self, var) -> Polynomial:
        i = var if isinstance(var, int) else self.ring.index(var)
        p = self.ring.field.p
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    m2 = list(m)
                    m2[i] -= 1
                    out[tuple(m2)] = v
        return Polynomial(self.ring, out)

    def homogenize(self, var) -> Polynomial:
        """Multiply each term by the power of ``var`` that lifts it to the top degree."""
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self._terms:
            return self
        d = self.total_degree()
        out = {}
        for m, c in self._terms.items():
            m2 = list(m)
            m2[i] += d - sum(m)
            out[tuple(m2)] = c
        return Polynomial(self.ring, out)

    def truncate(self, weights: Sequence[int], below: int) -> Polynomial:
        """Keep only terms whose weighted degree is strictly less than ``below``."""
        return Polynomial(self.ring, {m: c for m, c in self._terms.items()
                                      if sum(a * b for a, b in zip(weights, m)) < below})

    def subs(self, images: Mapping, ring: PolyRing | None = None) -> Polynomial:
        return substitute(self, images, ring)

    # -- printing ---------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if not f._terms:
        return "0"
    names = f.ring.variables
    p = f.ring.field.p
    parts = []
    for m, c in f.terms(order):
        if p and c > p // 2:
            c = c - p
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring!r} vs {g.ring!r}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def substitute(f: Polynomial, images: Mapping, ring: PolyRing | None = None) -> Polynomial:
    """Apply the ring homomorphism sending variables to ``images``.

    Keys are variable names (or variable polynomials) of ``f.ring``; values
    are polynomials of the target ring or scalars.  Variables not listed map
    to the same-named variable of the target ring.
    """
    src = f.ring
    imgs: dict[int, Polynomial] = {}
    target = ring
    for k, v in images.items():
        i = src.index(k)
        if isinstance(v, Polynomial):
            if target is None:
                target = v.ring
            elif v.ring != target:
                raise RingMismatchError(f"image {v} not in {target!r}")
        imgs[i] = v
    if target is None:
        target = src
    for i, v in list(imgs.items()):
        if not isinstance(v, Polynomial):
            imgs[i] = target.constant(v)
    for i, name in enumerate(src.variables):
        if i not in imgs:
            if not target.has_var(name):
                if f.degree_in(i) > 0:
                    raise KeyError(f"no image for variable {name!r}")
                continue
            imgs[i] = target.var(name)
    if target.field != src.field:
        raise RingMismatchError("substitution cannot change the field")
    power_cache: dict[tuple[int, int], Polynomial] = {}

    def power(i, e):
        key = (i, e)
        r = power_cache.get(key)
        if r is None:
            r = imgs[i] ** e
            power_cache[key] = r
        return r

    result = target.zero()
    p = target.field.p
    acc: dict = {}
    for m, c in f._terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
                if not term:
                    break
        for mm, cc in term._terms.items():
            v = acc.get(mm, 0) + cc
            acc[mm] = v % p if p else v
    result = Polynomial(target, {m: c for m, c in acc.items() if c})
    return result


def partial_derivatives(f: Polynomial, variables: Sequence[str] | None = None) -> list[Polynomial]:
    names = f.ring.variables if variables is None else variables
    return [f.diff(v) for v in names]


# ---------------------------------------------------------------------------
# matrices


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring (row-major, immutable)."""

    __slots__ = ("ring", "rows", "cols", "_entries")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence]):
        self.ring = ring
        rows = [[ring(e) if not isinstance(e, Polynomial) else e for e in row] for row in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.ring != ring:
                    raise RingMismatchError(f"entry {e} not in {ring!r}")
        self._entries = tuple(tuple(r) for r in rows)

    @classmethod
    def parse(cls, ring: PolyRing, rows: Sequence[Sequence[str]]) -> PolyMatrix:
        return cls(ring, [[ring.parse(e) if isinstance(e, str) else ring(e) for e in row] for row in rows])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> PolyMatrix:
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Polynomial]], nrows: int | None = None) -> PolyMatrix:
        if not columns:
            return cls(ring, [[] for _ in range(nrows or 0)]) if nrows else cls(ring, [])
        n = len(columns[0])
        return cls(ring, [[col[i] for col in columns] for i in range(n)])

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self._entries[i][j]

    def row(self, i: int) -> tuple[Polynomial, ...]:
        return self._entries[i]

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(r[j] for r in self._entries)

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Polynomial]]:
        return [list(r) for r in self._entries]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> list[Polynomial]:
        return [e for r in self._entries for e in r]

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [list(self.column(j)) for j in range(self.cols)])

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a, b = self._entries[i][k], other._entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r1, r2)]
                                      for r1, r2 in zip(self._entries, other._entries)])

    def map(self, fn) -> PolyMatrix:
        rows = [[fn(e) for e in r] for r in self._entries]
        ring = rows[0][0].ring if rows and rows[0] else self.ring
        return PolyMatrix(ring, rows)

    def subs(self, images: Mapping, ring: PolyRing | None = None) -> PolyMatrix:
        target = ring
        if target is None:
            for v in images.values():
                if isinstance(v, Polynomial):
                    target = v.ring
                    break
        target = target or self.ring
        return PolyMatrix(target, [[substitute(e, images, target) for e in r] for r in self._entries])

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self._entries == other._entries

    def __hash__(self):
        return hash((self.ring, self._entries))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self._entries) + "]"

    __repr__ = __str__

    def determinant(self) -> Polynomial:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _det(self._entries, tuple(range(self.rows)), tuple(range(self.cols)), {}, self.ring)

    def minors(self, k: int) -> list[Polynomial]:
        return minors(self, k)


def _det(entries, rows, cols, memo, ring) -> Polynomial:
    """Laplace expansion along the first row of the submatrix ``rows`` x ``cols``."""
    if not rows:
        return ring.one()
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        res = entries[rows[0]][cols[0]]
    else:
        res = ring.zero()
        r0, rest = rows[0], rows[1:]
        for idx, c in enumerate(cols):
            a = entries[r0][c]
            if not a:
                continue
            sub = _det(entries, rest, cols[:idx] + cols[idx + 1:], memo, ring)
            if not sub:
                continue
            term = a * sub
            res = res - term if idx % 2 else res + term
    memo[key] = res
    return res


def minors(M: PolyMatrix, k: int) -> list[Polynomial]:
    """All k x k minors, row subsets outermost, both index sets increasing.

    Each minor is the determinant of the submatrix with rows and columns kept
    in increasing order; no extra sign is applied.
    """
    if k < 1 or k > min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    memo: dict = {}
    out = []
    for rs in itertools.combinations(range(M.rows), k):
        for cs in itertools.combinations(range(M.cols), k):
            out.append(_det(M._entries, rs, cs, memo, M.ring))
    return out
