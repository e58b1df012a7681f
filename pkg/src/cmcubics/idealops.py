"""Derived ideal and module operations.

Colon ideals, saturation, elimination, Hilbert data of graded quotients,
Fitting ideals and annihilators of finitely presented modules, torsion
witnesses, and presentations of push-forwards along finite linear maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .groebner import (FreeModuleVector, Ideal, ModuleGB, _buchberger,
                       _module_key, _same_ring, ideal_equal, syzygies)
from .polyring import (MonomialOrder, PolyMatrix, PolyRing, Polynomial,
                       elimination_order, minors)


class NonHomogeneousError(ValueError):
    pass


def _fresh(ring: PolyRing, stem: str) -> str:
    name = stem
    k = 0
    while ring.has_var(name):
        k += 1
        name = f"{stem}{k}"
    return name


# ---------------------------------------------------------------------------
# elimination, intersection, colon, saturation


def eliminate(I: Ideal, variables: Sequence[str]) -> Ideal:
    """I intersected with the subring on the remaining variables (returned in that subring)."""
    ring = I.ring
    idx = [ring.index(v) for v in variables]
    order = elimination_order(ring.nvars, idx)
    sub = ring.drop(variables)
    kept = []
    for g in I.groebner_basis(order):
        if all(m[i] == 0 for m in g.monomials() for i in idx):
            kept.append(sub.embed(g))
    return Ideal(sub, kept)


def intersect(*ideals: Ideal) -> Ideal:
    if not ideals:
        raise ValueError("intersection of no ideals")
    out = ideals[0]
    for J in ideals[1:]:
        out = _intersect2(out, J)
    return out


def _intersect2(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I.ring, J.ring)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    ring = I.ring
    t = _fresh(ring, "_t")
    big = ring.extend([t])
    tv = big.var(t)
    gens = [tv * big.embed(f) for f in I.generators]
    gens += [(1 - tv) * big.embed(g) for g in J.generators]
    out = eliminate(Ideal(big, gens), [t])
    return Ideal(ring, [ring.embed(g) for g in out.generators])


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, which must be exact."""
    ring = f.ring
    order = ring.order
    lm = g.leading_monomial(order)
    inv = ring.field.inv(g._terms[lm])
    q = {}
    r = f
    p = ring.field.p
    while r:
        m = r.leading_monomial(order)
        e = tuple(a - b for a, b in zip(m, lm))
        if any(x < 0 for x in e):
            raise ArithmeticError(f"{g} does not divide {f}")
        c = r._terms[m] * inv
        if p:
            c %= p
        q[e] = c
        r = r - g.mul_term(e, c)
    return Polynomial(ring, q)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f J subset I}, via I cap (f) for each generator f of J."""
    _same_ring(I.ring, J.ring)
    ring = I.ring
    parts = []
    for f in J.generators:
        inter = intersect(I, Ideal(ring, [f]))
        parts.append(Ideal(ring, [divide_exact(h, f) for h in inter.generators]))
    if not parts:
        return Ideal(ring, [1])
    return intersect(*parts)


def _var_saturation(I: Ideal, var: str) -> Ideal:
    """I : x^infinity for homogeneous I: degrevlex with x last, then strip powers of x."""
    ring = I.ring
    i = ring.index(var)
    prec = tuple(j for j in range(ring.nvars) if j != i) + (i,)
    order = MonomialOrder("degrevlex", precedence=prec)
    out = []
    for g in I.groebner_basis(order):
        k = min(m[i] for m in g.monomials())
        if k:
            g = Polynomial(ring, {m[:i] + (m[i] - k,) + m[i + 1:]: c for m, c in g.items()})
        out.append(g)
    return Ideal(ring, out)


def _poly_saturation(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity = (I + (1 - s f)) cap k[vars]."""
    ring = I.ring
    s = _fresh(ring, "_s")
    big = ring.extend([s])
    gens = [big.embed(g) for g in I.generators] + [1 - big.var(s) * big.embed(f)]
    out = eliminate(Ideal(big, gens), [s])
    return Ideal(ring, [ring.embed(g) for g in out.generators])


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^infinity) = intersection over generators f of J of (I : f^infinity)."""
    _same_ring(I.ring, J.ring)
    ring = I.ring
    if not J.generators:
        return Ideal(ring, [1])
    parts = []
    homogeneous = I.is_homogeneous()
    for f in J.generators:
        try:
            var = f.as_variable() if homogeneous else None
        except ValueError:
            var = None
        parts.append(_var_saturation(I, var) if var else _poly_saturation(I, f))
    return intersect(*parts)


def irrelevant_ideal(ring: PolyRing, variables: Sequence[str] | None = None) -> Ideal:
    names = ring.variables if variables is None else variables
    return Ideal(ring, [ring.var(v) for v in names])


def torsion_witnesses(I: Ideal, t) -> list[Polynomial]:
    """Generators of (I : t) that are not in I; an empty list means no t-torsion."""
    ring = I.ring
    tv = t if isinstance(t, Polynomial) else ring.var(t)
    colon = quotient(I, Ideal(ring, [tv]))
    return [g for g in colon.groebner_basis() if not I.contains(g)]


# ---------------------------------------------------------------------------
# Hilbert data


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def hilbert_numerator(monomials: Sequence[tuple[int, ...]], nvars: int) -> list[int]:
    """Numerator N(T) of the Hilbert series N(T)/(1-T)^n of k[x]/(monomials).

    Pivot recursion: H(I) = H(I + (x)) + T * H(I : x) for a variable x that
    occurs in a non-pure-power generator.
    """
    gens = _minimalize(monomials)
    if any(sum(m) == 0 for m in gens):
        return [0]
    return _numerator(tuple(gens), nvars)


def _numerator(gens, n) -> list[int]:
    # base case: pairwise coprime generators
    support_count = [0] * n
    for m in gens:
        for i, e in enumerate(m):
            if e:
                support_count[i] += 1
    if all(c <= 1 for c in support_count):
        out = [1]
        for m in gens:
            d = sum(m)
            factor = [1] + [0] * (d - 1) + [-1]
            out = _poly_mul(out, factor)
        return out
    i = max(range(n), key=lambda k: support_count[k])
    x = tuple(1 if k == i else 0 for k in range(n))
    plus = _minimalize([m for m in gens if m[i] == 0] + [x])
    colon = _minimalize([m[:i] + (max(m[i] - 1, 0),) + m[i + 1:] for m in gens])
    if any(sum(m) == 0 for m in colon):
        right = [0]
    else:
        right = _numerator(tuple(colon), n)
    left = _numerator(tuple(plus), n)
    return _poly_add(left, [0] + right)


@dataclass
class HilbertData:
    """Hilbert series numerator, function table and polynomial of a graded quotient."""

    series_numerator: list[int]
    nvars: int
    function_table: list[tuple[int, int]]
    hilbert_polynomial: tuple[Fraction, ...]   # coefficients, constant term first
    regularity_index: int
    extras: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        """Krull dimension of the quotient (degree of the polynomial + 1)."""
        return len(self.hilbert_polynomial) if any(self.hilbert_polynomial) else 0

    def value(self, t: int) -> Fraction:
        return sum((c * t ** k for k, c in enumerate(self.hilbert_polynomial)), Fraction(0))

    def polynomial_equals(self, coeffs: Sequence) -> bool:
        a = list(self.hilbert_polynomial)
        b = [Fraction(c) for c in coeffs]
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        return a == b

    def polynomial_str(self, var: str = "t") -> str:
        return format_univariate(self.hilbert_polynomial, var)

    def __str__(self) -> str:
        return self.polynomial_str()


def format_univariate(coeffs: Sequence[Fraction], var: str = "t") -> str:
    terms = [(k, c) for k, c in enumerate(coeffs) if c]
    if not terms:
        return "0"
    out = ""
    for k, c in reversed(terms):
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += ("-" if neg else "+") + body
    return out


def _binomial_poly(shift: int, r: int) -> list[Fraction]:
    """Coefficients of binom(t + shift, r) as a polynomial in t."""
    out = [Fraction(1)]
    for j in range(r):
        out = _poly_mul(out, [Fraction(shift - j), Fraction(1)])
    fact = 1
    for j in range(2, r + 1):
        fact *= j
    return [Fraction(c) / fact for c in out]


def _hilbert_function(num: list[int], n: int, d: int) -> int:
    total = 0
    for k, c in enumerate(num):
        if c and d - k >= 0:
            total += c * comb(d - k + n - 1, n - 1)
    return total


def _interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Lagrange interpolation through integer points; coefficients low to high."""
    out = [Fraction(0)]
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _yj) in enumerate(points):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        out = _poly_add(out, [Fraction(yi) * b / denom for b in basis])
    return out


def hilbert_from_monomials(monomials: Sequence[tuple[int, ...]], nvars: int, table_depth: int = 8) -> HilbertData:
    num = hilbert_numerator(monomials, nvars)
    n = nvars
    poly = [Fraction(0)]
    if n > 0:
        for k, c in enumerate(num):
            if c:
                term = [c * x for x in _binomial_poly(n - 1 - k, n - 1)]
                poly = _poly_add(poly, term)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    depth = max(table_depth, len(num) + 1)
    table = [(d, _hilbert_function(num, n, d)) for d in range(depth + 1)]

    def pval(t):
        return sum((c * t ** k for k, c in enumerate(poly)), Fraction(0))

    reg = depth + 1
    for d in range(depth, -1, -1):
        if pval(d) == table[d][1]:
            reg = d
        else:
            break
    dim = len(poly) if any(poly) else 0
    tail = [pt for pt in table if pt[0] >= reg]
    # cross-check: interpolation on the last dim+1 stable entries reproduces the polynomial
    interp = _interpolate(tail[-(dim + 1):]) if dim + 1 <= len(tail) else None
    if interp is not None:
        while len(interp) > 1 and interp[-1] == 0:
            interp.pop()
        if [Fraction(c) for c in interp] != [Fraction(c) for c in poly]:
            raise AssertionError("Hilbert polynomial interpolation mismatch")
    return HilbertData(num, n, table, tuple(Fraction(c) for c in poly), reg)


def hilbert(I: Ideal, table_depth: int = 8) -> HilbertData:
    """Hilbert data of ring/I for homogeneous I (standard grading)."""
    if not I.is_homogeneous():
        raise NonHomogeneousError("hilbert needs a homogeneous ideal")
    ring = I.ring
    order = MonomialOrder("degrevlex")
    lms = [g.leading_monomial(order) for g in I.groebner_basis(order)]
    return hilbert_from_monomials(lms, ring.nvars, table_depth)


# ---------------------------------------------------------------------------
# module presentations


@dataclass(frozen=True)
class ModulePresentation:
    """coker(R^cols -> R^rows); columns of ``relations`` are relations among the generators."""

    ring: PolyRing
    relations: PolyMatrix
    generator_degrees: tuple[int, ...] | None = None

    @property
    def ngens(self) -> int:
        return self.relations.rows

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return self.relations.columns()

    def column_degrees(self) -> list[int | None]:
        degs = self.generator_degrees or (0,) * self.ngens
        out = []
        for col in self.columns():
            v = FreeModuleVector(tuple(col), tuple(degs))
            out.append(v.degree())
        return out

    def is_graded(self) -> bool:
        return self.generator_degrees is not None and all(d is not None for d in self.column_degrees())

    def with_columns(self, cols: Sequence[Sequence[Polynomial]]) -> ModulePresentation:
        return ModulePresentation(self.ring, PolyMatrix.from_columns(self.ring, [list(c) for c in cols]),
                                  self.generator_degrees)


def fitting_ideal(P: ModulePresentation, n: int = 0) -> Ideal:
    """Ideal of (g-n)-minors of the relation matrix, g = number of generators."""
    g = P.ngens
    k = g - n
    if k <= 0:
        return Ideal(P.ring, [1])
    if P.relations.cols < k:
        return Ideal(P.ring, [])
    return Ideal(P.ring, minors(P.relations, k))


def annihilator(P: ModulePresentation) -> Ideal:
    """Ann(coker P) = intersection over generators e_i of (im P : e_i)."""
    ring = P.ring
    g = P.ngens
    zero = ring.zero()
    cols = [FreeModuleVector(tuple(c)) for c in P.columns()]
    parts = []
    for i in range(g):
        e = FreeModuleVector(tuple(ring.one() if k == i else zero for k in range(g)))
        syz = syzygies([e] + cols) if cols else []
        parts.append(Ideal(ring, [s[0] for s in syz]))
    if not parts:
        return Ideal(ring, [1])
    return intersect(*parts)


def minimize_presentation(P: ModulePresentation) -> ModulePresentation:
    """Drop redundant relation columns of a graded presentation (degree-greedy)."""
    if not P.is_graded():
        raise NonHomogeneousError("minimize_presentation needs a graded presentation")
    ring = P.ring
    cols = [c for c in P.columns() if any(c)]
    degs = P.column_degrees()
    order = sorted(range(len(cols)), key=lambda k: degs[k])
    kept: list = []
    for k in order:
        if kept:
            gb = ModuleGB(ring, P.ngens, [list(c) for c in kept])
            if gb.contains(list(cols[k])):
                continue
        kept.append(cols[k])
    return P.with_columns(kept)


# ---------------------------------------------------------------------------
# finite linear maps: push-forward presentation and schematic image


@dataclass
class _Graph:
    ring: PolyRing           # target vars first, then renamed source-only vars
    target: PolyRing
    src_to_w: dict            # source var name -> W var name
    eliminate: list[str]
    relations: list[Polynomial]

    def from_source(self, f: Polynomial) -> Polynomial:
        return _rename(f, self.src_to_w, self.ring)

    def to_target(self, f: Polynomial) -> Polynomial:
        n = self.target.nvars
        return Polynomial(self.target, {m[:n]: c for m, c in f.items()})


def _rename(f: Polynomial, mapping: Mapping[str, str], ring: PolyRing) -> Polynomial:
    idx = [ring.index(mapping[v]) for v in f.ring.variables]
    out = {}
    for m, c in f.items():
        e = [0] * ring.nvars
        for i, k in enumerate(m):
            if k:
                e[idx[i]] += k
        out[tuple(e)] = c
    return Polynomial(ring, out)


def _graph(source: PolyRing, images: Mapping[str, Polynomial], target: PolyRing) -> _Graph:
    imgs = {}
    for tv in target.variables:
        img = images.get(tv)
        if img is None:
            if not source.has_var(tv):
                raise KeyError(f"no image for target variable {tv!r}")
            img = source.var(tv)
        imgs[tv] = source(img)
    src_to_w: dict[str, str] = {}
    pending = []
    for tv, img in imgs.items():
        try:
            sv = img.as_variable()
        except ValueError:
            sv = None
        if sv is not None and sv not in src_to_w:
            src_to_w[sv] = tv
        else:
            pending.append(tv)
    extra = []
    for sv in source.variables:
        if sv not in src_to_w:
            name = "_" + sv
            while target.has_var(name) or name in extra:
                name = "_" + name
            src_to_w[sv] = name
            extra.append(name)
    W = PolyRing(list(target.variables) + extra, source.field)
    rels = [W.var(tv) - _rename(imgs[tv], src_to_w, W) for tv in pending]
    return _Graph(W, target, src_to_w, extra, rels)


def image_ideal(source_ideal: Ideal, images: Mapping[str, Polynomial], target: PolyRing) -> Ideal:
    """Kernel of target -> source/I, the ideal of the schematic image."""
    gr = _graph(source_ideal.ring, images, target)
    gens = [gr.from_source(g) for g in source_ideal.generators] + gr.relations
    elim = eliminate(Ideal(gr.ring, gens), gr.eliminate)
    return Ideal(target, [target.embed(g) for g in elim.generators])


def pushforward_presentation(source_ideal: Ideal, images: Mapping[str, Polynomial],
                             target: PolyRing, module_generators: Sequence[Polynomial]) -> ModulePresentation:
    """Presentation over ``target`` of source/I, generated by ``module_generators``.

    The relations are the kernel of target^g -> source/I, computed as the
    eliminated part of a syzygy module in the graph ring.
    """
    source = source_ideal.ring
    gr = _graph(source, images, target)
    W = gr.ring
    g = len(module_generators)
    elim_idx = [W.index(v) for v in gr.eliminate]
    order = elimination_order(W.nvars, elim_idx)
    key = _module_key(order, split=1)
    one = W.field.one()
    elems = []
    for k, m in enumerate(module_generators):
        t = {(0, e): c for e, c in gr.from_source(source(m)).items()}
        t[(1 + k, W.zero_exp)] = one
        elems.append(t)
    for h in [gr.from_source(x) for x in source_ideal.generators] + gr.relations:
        elems.append({(0, e): c for e, c in h.items()})
    gb = _buchberger(elems, key, W.field, False)
    cols = []
    for el in gb:
        if el.lm[0] == 0:
            continue
        if any(e[i] for (_p, e) in el.terms for i in elim_idx):
            continue
        parts: list[dict] = [{} for _ in range(g)]
        for (pos, e), c in el.terms.items():
            parts[pos - 1][e] = c
        cols.append([gr.to_target(Polynomial(W, d)) for d in parts])
    degs = None
    try:
        degs = tuple(source(m).total_degree() if source(m).is_homogeneous() else None for m in module_generators)
        if None in degs:
            degs = None
    except ValueError:
        degs = None
    return ModulePresentation(target, PolyMatrix.from_columns(target, cols) if cols
                              else PolyMatrix(target, [[] for _ in range(g)]), degs)


__all__ = [
    "HilbertData", "ModulePresentation", "NonHomogeneousError", "annihilator",
    "divide_exact", "eliminate", "fitting_ideal", "hilbert", "hilbert_from_monomials",
    "hilbert_numerator", "ideal_equal", "image_ideal", "intersect", "irrelevant_ideal",
    "minimize_presentation", "pushforward_presentation", "quotient", "saturate",
    "torsion_witnesses",
]
