"""Multivariate division, Buchberger's algorithm and syzygies.

The engine works on module elements stored as dicts mapping
``(position, exponents)`` to coefficients; an ideal is the rank-one case.
Pairs are chosen by the normal strategy (smallest lcm degree first) and
pruned with the Gebauer-Moeller installation of Buchberger's criteria.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .polyring import (DEGREVLEX, MonomialOrder, PolyRing, Polynomial,
                       RingMismatchError)


# ---------------------------------------------------------------------------
# engine


def _module_key(order: MonomialOrder, split: int | None = None):
    """Term-over-position key on (pos, exps).

    With ``split`` every term in a position below ``split`` beats every term
    in a position at or above it (the elimination order used for syzygies).
    """
    rkey = order.key
    cache: dict = {}

    if split is None:
        def key(mm):
            k = cache.get(mm)
            if k is None:
                k = cache[mm] = (rkey(mm[1]), -mm[0])
            return k
    else:
        def key(mm):
            k = cache.get(mm)
            if k is None:
                k = cache[mm] = (mm[0] < split, rkey(mm[1]), -mm[0])
            return k
    return key


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("lm", "terms")

    def __init__(self, lm, terms):
        self.lm = lm
        self.terms = terms


def _make_monic(terms: dict, key, field) -> _Elem | None:
    if not terms:
        return None
    lm = max(terms, key=key)
    c = terms[lm]
    if c != 1:
        inv = field.inv(c)
        p = field.p
        terms = {m: (v * inv % p if p else v * inv) for m, v in terms.items()}
    return _Elem(lm, terms)


def _reduce(f: dict, basis: Sequence[_Elem], key, p: int, full: bool = True) -> dict:
    """Remainder of ``f`` on division by the monic elements of ``basis``."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        pos, exps = m
        for g in basis:
            gpos, gexp = g.lm
            if gpos == pos and _divides(gexp, exps):
                q = _sub(exps, gexp)
                for (tp, te), tc in g.terms.items():
                    nm = (tp, tuple(a + b for a, b in zip(te, q)))
                    v = f.get(nm, 0) - c * tc
                    if p:
                        v %= p
                    if v:
                        f[nm] = v
                    else:
                        f.pop(nm, None)
                break
        else:
            rem[m] = c
            del f[m]
            if not full:
                rem.update(f)
                break
    return rem


def _spoly(f: _Elem, g: _Elem, lcm_exp, p: int) -> dict:
    qf = _sub(lcm_exp, f.lm[1])
    qg = _sub(lcm_exp, g.lm[1])
    out: dict = {}
    for (tp, te), tc in f.terms.items():
        out[(tp, tuple(a + b for a, b in zip(te, qf)))] = tc
    for (tp, te), tc in g.terms.items():
        nm = (tp, tuple(a + b for a, b in zip(te, qg)))
        v = out.get(nm, 0) - tc
        if p:
            v %= p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _buchberger(elements: Iterable[dict], key, field, rank_one: bool, stats: dict | None = None) -> list[_Elem]:
    p = field.p
    polys: list[_Elem] = []
    active: list[int] = []
    pairs: list[tuple] = []  # (deg, i, j, lcm)

    def update(h: int):
        nonlocal pairs, active
        hl = polys[h].lm
        hpos, hexp = hl
        cand = []
        for g in active:
            gpos, gexp = polys[g].lm
            if gpos != hpos:
                continue
            cand.append((g, _lcm(hexp, gexp), rank_one and all(a == 0 or b == 0 for a, b in zip(hexp, gexp))))
        # chain criterion among the new pairs
        kept = []
        for idx, (g, L, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, L, coprime))
                continue
            dominated = False
            for jdx, (g2, L2, _c2) in enumerate(cand):
                if jdx == idx:
                    continue
                if _divides(L2, L) and (L2 != L or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, L, coprime))
        new_pairs = [(sum(L), g, h, (hpos, L)) for g, L, coprime in kept if not coprime]
        if stats is not None:
            stats["pairs_pruned"] = stats.get("pairs_pruned", 0) + len(cand) - len(new_pairs)
        # old pairs killed by the new leading monomial
        survivors = []
        for pr in pairs:
            _d, i, j, (lpos, L) = pr
            if lpos == hpos and _divides(hexp, L):
                li = _lcm(polys[i].lm[1], hexp)
                lj = _lcm(polys[j].lm[1], hexp)
                if li != L and lj != L:
                    continue
            survivors.append(pr)
        pairs = survivors + new_pairs
        active = [g for g in active
                  if not (polys[g].lm[0] == hpos and _divides(hexp, polys[g].lm[1]))] + [h]

    start = []
    for e in elements:
        el = _make_monic(e, key, field)
        if el is not None:
            start.append(el)
    start.sort(key=lambda el: key(el.lm))
    for el in start:
        r = _reduce(el.terms, [polys[i] for i in active], key, p)
        el = _make_monic(r, key, field)
        if el is None:
            continue
        polys.append(el)
        update(len(polys) - 1)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][0], key(pairs[k][3])))
        _d, i, j, (lpos, L) = pairs.pop(best)
        if stats is not None:
            stats["pairs"] = stats.get("pairs", 0) + 1
        s = _spoly(polys[i], polys[j], L, p)
        r = _reduce(s, [polys[k] for k in active], key, p)
        el = _make_monic(r, key, field)
        if el is None:
            if stats is not None:
                stats["zero_reductions"] = stats.get("zero_reductions", 0) + 1
            continue
        polys.append(el)
        update(len(polys) - 1)

    # minimal then reduced basis
    basis = [polys[i] for i in active]
    basis.sort(key=lambda el: key(el.lm))
    minimal: list[_Elem] = []
    for el in basis:
        if not any(b.lm[0] == el.lm[0] and _divides(b.lm[1], el.lm[1]) for b in minimal):
            minimal.append(el)
    reduced = []
    for idx, el in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce(el.terms, others, key, p)
        reduced.append(_make_monic(r, key, field))
    reduced.sort(key=lambda el: key(el.lm), reverse=True)
    return reduced


def _poly_to_terms(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in f._terms.items()}


def _terms_to_poly(ring: PolyRing, terms: dict) -> Polynomial:
    return Polynomial(ring, {m: c for (_pos, m), c in terms.items()})


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal given by generators; reduced Groebner bases are cached per order."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, tuple[Polynomial, ...]] = {}

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def groebner_basis(self, order: MonomialOrder | None = None, stats: dict | None = None) -> tuple[Polynomial, ...]:
        order = order or self.ring.order
        hit = self._gb.get(order)
        if hit is not None:
            return hit
        key = _module_key(order)
        elems = _buchberger((_poly_to_terms(g) for g in self.generators), key,
                            self.ring.field, True, stats)
        gb = tuple(_terms_to_poly(self.ring, e.terms) for e in elems)
        # single assignment: a concurrent writer may have won; keep its value
        return self._gb.setdefault(order, gb)

    def reduce(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        return normal_form(self.ring(f), self.groebner_basis(order), order or self.ring.order)

    def contains(self, f) -> bool:
        return not self.reduce(self.ring(f))

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def leading_monomials(self, order: MonomialOrder | None = None) -> list[tuple[int, ...]]:
        order = order or self.ring.order
        return [g.leading_monomial(order) for g in self.groebner_basis(order)]

    def __add__(self, other) -> Ideal:
        if isinstance(other, Ideal):
            _same_ring(self.ring, other.ring)
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(self.ring(g) for g in other))

    def __mul__(self, other: Ideal) -> Ideal:
        _same_ring(self.ring, other.ring)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, n: int) -> Ideal:
        out = Ideal(self.ring, [1])
        for _ in range(n):
            out = out * self
        return out

    def map(self, fn, ring: PolyRing | None = None) -> Ideal:
        imgs = [fn(g) for g in self.generators]
        return Ideal(ring or (imgs[0].ring if imgs else self.ring), imgs)

    def subs(self, images, ring: PolyRing | None = None) -> Ideal:
        from .polyring import substitute
        imgs = [substitute(g, images, ring) for g in self.generators]
        target = ring or (imgs[0].ring if imgs else self.ring)
        return Ideal(target, imgs)


def _same_ring(a: PolyRing, b: PolyRing):
    if a != b:
        raise RingMismatchError(f"{a!r} vs {b!r}")


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` under multivariate division by ``G``.

    No term of the result is divisible by a leading monomial of ``G``.
    """
    ring = f.ring
    order = order or ring.order
    for g in G:
        _same_ring(ring, g.ring)
    key = _module_key(order)
    basis = [_make_monic(_poly_to_terms(g), key, ring.field) for g in G if g]
    return _terms_to_poly(ring, _reduce(_poly_to_terms(f), basis, key, ring.field.p))


def buchberger(I: Ideal, order: MonomialOrder | None = None, stats: dict | None = None) -> tuple[Polynomial, ...]:
    return I.groebner_basis(order, stats)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I.ring, J.ring)
    return I.contains_ideal(J) and J.contains_ideal(I)


def ideal(ring: PolyRing, *gens) -> Ideal:
    if len(gens) == 1 and not isinstance(gens[0], (str, Polynomial, int)):
        gens = tuple(gens[0])
    return Ideal(ring, [ring(g) for g in gens])


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class FreeModuleVector:
    """Element of a free module R^rank; ``shifts`` are optional degree shifts."""

    components: tuple[Polynomial, ...]
    shifts: tuple[int, ...] | None = None

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("empty vector")
        ring = comps[0].ring
        for c in comps:
            _same_ring(ring, c.ring)
        if self.shifts is not None and len(self.shifts) != len(comps):
            raise ValueError("shifts length must equal rank")

    @classmethod
    def of(cls, ring: PolyRing, comps: Sequence, shifts=None) -> FreeModuleVector:
        return cls(tuple(ring(c) for c in comps), tuple(shifts) if shifts is not None else None)

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i) -> Polynomial:
        return self.components[i]

    def __add__(self, other: FreeModuleVector) -> FreeModuleVector:
        return FreeModuleVector(tuple(a + b for a, b in zip(self, other)), self.shifts)

    def __sub__(self, other: FreeModuleVector) -> FreeModuleVector:
        return FreeModuleVector(tuple(a - b for a, b in zip(self, other)), self.shifts)

    def __neg__(self) -> FreeModuleVector:
        return FreeModuleVector(tuple(-a for a in self), self.shifts)

    def scale(self, f) -> FreeModuleVector:
        f = self.ring(f)
        return FreeModuleVector(tuple(f * a for a in self), self.shifts)

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def dot(self, other: Sequence[Polynomial]) -> Polynomial:
        acc = self.ring.zero()
        for a, b in zip(self.components, other):
            if a and b:
                acc = acc + a * b
        return acc

    def map(self, fn) -> FreeModuleVector:
        return FreeModuleVector(tuple(fn(c) for c in self.components), self.shifts)

    def degree(self) -> int | None:
        """Degree for the grading given by ``shifts`` (None if not homogeneous)."""
        shifts = self.shifts or (0,) * self.rank
        degs = set()
        for c, s in zip(self.components, shifts):
            for m in c.monomials():
                degs.add(sum(m) + s)
        if len(degs) != 1:
            return None
        return degs.pop()

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _vec_to_terms(v: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for k, comp in enumerate(v):
        for m, c in comp._terms.items():
            out[(k + offset, m)] = c
    return out


def _terms_to_vec(ring: PolyRing, terms: dict, rank: int, offset: int = 0) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (pos, m), c in terms.items():
        parts[pos - offset][m] = c
    return [Polynomial(ring, d) for d in parts]


def _check_vectors(vectors: Sequence[FreeModuleVector]) -> tuple[PolyRing, int]:
    if not vectors:
        raise ValueError("need at least one vector")
    ring, rank = vectors[0].ring, vectors[0].rank
    for v in vectors:
        _same_ring(ring, v.ring)
        if v.rank != rank:
            raise ValueError("vectors of different rank")
    return ring, rank


class ModuleGB:
    """Reduced Groebner basis of a submodule of R^rank (term over position)."""

    def __init__(self, ring: PolyRing, rank: int, vectors: Sequence[Sequence[Polynomial]],
                 order: MonomialOrder | None = None):
        self.ring = ring
        self.rank = rank
        self.order = order or ring.order
        self._key = _module_key(self.order)
        self._elems = _buchberger((_vec_to_terms(v) for v in vectors), self._key, ring.field, rank == 1)

    @property
    def basis(self) -> list[FreeModuleVector]:
        return [FreeModuleVector(tuple(_terms_to_vec(self.ring, e.terms, self.rank))) for e in self._elems]

    def reduce(self, v: Sequence[Polynomial]) -> list[Polynomial]:
        r = _reduce(_vec_to_terms(v), self._elems, self._key, self.ring.field.p)
        return _terms_to_vec(self.ring, r, self.rank)

    def contains(self, v: Sequence[Polynomial]) -> bool:
        return all(not c for c in self.reduce(v))


def _with_ideal(vectors: Sequence[Sequence[Polynomial]], rank: int, I: Ideal | None):
    vecs = [list(v) for v in vectors]
    if I is not None:
        zero = I.ring.zero()
        for g in I.generators:
            for k in range(rank):
                e = [zero] * rank
                e[k] = g
                vecs.append(e)
    return vecs


def module_gb(vectors: Sequence[FreeModuleVector], order: MonomialOrder | None = None,
              modulo: Ideal | None = None) -> ModuleGB:
    ring, rank = _check_vectors(vectors)
    return ModuleGB(ring, rank, _with_ideal(vectors, rank, modulo), order)


def module_contains(vectors: Sequence[FreeModuleVector], v: FreeModuleVector,
                    modulo: Ideal | None = None) -> bool:
    return module_gb(vectors, modulo=modulo).contains(v.components)


def module_equal(A: Sequence[FreeModuleVector], B: Sequence[FreeModuleVector],
                 modulo: Ideal | None = None) -> bool:
    """Equality of the submodules generated by A and B (each plus ``modulo``*R^rank)."""
    vecs = list(A) + list(B)
    if not vecs:
        return True
    ring, rank = _check_vectors(vecs)
    ga = ModuleGB(ring, rank, _with_ideal([v.components for v in A], rank, modulo))
    gb = ModuleGB(ring, rank, _with_ideal([v.components for v in B], rank, modulo))
    return all(ga.contains(v.components) for v in B) and all(gb.contains(v.components) for v in A)


def _syzygies_raw(ring: PolyRing, rank: int, vectors: Sequence[Sequence[Polynomial]],
                  order: MonomialOrder) -> list[list[Polynomial]]:
    """Generators of the kernel of R^m -> R^rank, e_i -> vectors[i].

    Each input is augmented with the unit vector e_{rank+i}; under an order
    where the first ``rank`` positions dominate, the basis elements living
    entirely in the trailing block generate the syzygy module.
    """
    m = len(vectors)
    key = _module_key(order, split=rank)
    elems = []
    one = ring.field.one()
    for i, v in enumerate(vectors):
        t = _vec_to_terms(v)
        t[(rank + i, ring.zero_exp)] = one
        elems.append(t)
    gb = _buchberger(elems, key, ring.field, False)
    out = []
    for e in gb:
        if e.lm[0] >= rank:
            out.append(_terms_to_vec(ring, e.terms, m, offset=rank))
    return out


def syzygies(vectors: Sequence[FreeModuleVector], order: MonomialOrder | None = None) -> list[FreeModuleVector]:
    """Generators of the module of relations sum_i s_i v_i = 0."""
    ring, rank = _check_vectors(vectors)
    order = order or ring.order
    raw = _syzygies_raw(ring, rank, [v.components for v in vectors], order)
    shifts = _syz_shifts(vectors)
    out = [FreeModuleVector(tuple(s), shifts) for s in raw]
    for s in out:
        _assert_syzygy(s, vectors, None)
    return out


def syzygies_modulo(vectors: Sequence[FreeModuleVector], I: Ideal,
                    order: MonomialOrder | None = None) -> list[FreeModuleVector]:
    """Generators of the kernel of R^m -> (R/I)^rank, e_i -> vectors[i]."""
    ring, rank = _check_vectors(vectors)
    _same_ring(ring, I.ring)
    order = order or ring.order
    m = len(vectors)
    aug = _with_ideal([v.components for v in vectors], rank, I)
    raw = _syzygies_raw(ring, rank, aug, order)
    shifts = _syz_shifts(vectors)
    out = []
    seen = set()
    for s in raw:
        head = tuple(s[:m])
        if all(not c for c in head) or head in seen:
            continue
        seen.add(head)
        out.append(FreeModuleVector(head, shifts))
    for s in out:
        _assert_syzygy(s, vectors, I)
    return out


def _syz_shifts(vectors: Sequence[FreeModuleVector]):
    """Shift of e_i = degree of v_i (when every input is homogeneous)."""
    degs = []
    for v in vectors:
        d = v.degree()
        if d is None:
            return None
        degs.append(d)
    return tuple(degs)


def _assert_syzygy(s: FreeModuleVector, vectors: Sequence[FreeModuleVector], I: Ideal | None):
    rank = vectors[0].rank
    for k in range(rank):
        acc = s.ring.zero()
        for si, v in zip(s.components, vectors):
            if si and v[k]:
                acc = acc + si * v[k]
        if I is None:
            if acc:
                raise AssertionError(f"bad syzygy {s}")
        elif acc and not I.contains(acc):
            raise AssertionError(f"bad syzygy modulo ideal {s}")
