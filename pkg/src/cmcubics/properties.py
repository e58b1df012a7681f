"""Seeded randomized property checks of the algebra kernel.

Each property draws small random instances over a large prime field and
compares two independent computations (or checks an exact identity).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .cmcurves import matrix_factorization, random_singular_cubic
from .groebner import FreeModuleVector, Ideal, ideal_equal, syzygies
from .idealops import ModulePresentation, fitting_ideal, irrelevant_ideal, quotient, saturate
from .linalg import in_span
from .polyring import GF, Field, PolyMatrix, PolyRing, Polynomial

DEFAULT_PRIME = 32003


def random_form(ring: PolyRing, degree: int, rng: random.Random, density: float = 0.6) -> Polynomial:
    p = ring.field.p or 101
    terms = {}
    for m in ring.monomials_of_degree(degree):
        if rng.random() < density:
            terms[m] = rng.randrange(1, p)
    if not terms:
        m = rng.choice(ring.monomials_of_degree(degree))
        terms[m] = 1
    return ring.from_dict(terms)


def random_homogeneous_ideal(ring: PolyRing, rng: random.Random, ngens: tuple[int, int] = (2, 3),
                             degrees: tuple[int, ...] = (1, 2, 2, 3)) -> Ideal:
    n = rng.randint(*ngens)
    return Ideal(ring, [random_form(ring, rng.choice(degrees), rng) for _ in range(n)])


def member_by_linear_algebra(f: Polynomial, generators: list[Polynomial]) -> bool:
    """Homogeneous membership: is f in the span of m*g over monomials m of complementary degree?"""
    ring = f.ring
    if not f:
        return True
    d = f.total_degree()
    index: dict = {}
    rows = []
    for g in generators:
        e = d - g.total_degree()
        if e < 0 or not g:
            continue
        for m in ring.monomials_of_degree(e):
            prod = g.mul_term(m, ring.field.one())
            rows.append({index.setdefault(mm, len(index)): c for mm, c in prod.items()})
    target = {index.setdefault(mm, len(index)): c for mm, c in f.items()}
    return in_span(target, rows, ring.field)


@dataclass
class PropertyResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def prop_membership(rng: random.Random, fld: Field) -> str | None:
    ring = PolyRing("x,y,z", fld)
    I = random_homogeneous_ideal(ring, rng)
    d = rng.randint(2, 4)
    if rng.random() < 0.5:
        f = ring.zero()
        for g in I.generators:
            e = d - g.total_degree()
            if e >= 0:
                f = f + random_form(ring, e, rng) * g
        if not f:
            f = random_form(ring, d, rng)
    else:
        f = random_form(ring, d, rng)
    gb_says = I.contains(f)
    la_says = member_by_linear_algebra(f, list(I.generators))
    if gb_says != la_says:
        return f"membership disagreement for {f} in {I.generators}: gb={gb_says} oracle={la_says}"
    return None


def _random_matrix(ring: PolyRing, rng: random.Random, rows: int, cols: int) -> PolyMatrix:
    return PolyMatrix(ring, [[random_form(ring, rng.choice((0, 1, 1, 2)), rng, 0.5) if rng.random() < 0.8
                              else ring.zero() for _ in range(cols)] for _ in range(rows)])


def prop_fitting_invariance(rng: random.Random, fld: Field) -> str | None:
    ring = PolyRing("x,y,z", fld)
    g, c = rng.randint(1, 2), rng.randint(2, 3)
    M = _random_matrix(ring, rng, g, c)
    n = rng.randint(0, g - 1)
    base = fitting_ideal(ModulePresentation(ring, M), n)
    rows = M.tolist()
    # row operation: row_i += h * row_j
    if g > 1:
        i, j = rng.sample(range(g), 2)
        h = random_form(ring, 1, rng)
        rows2 = [list(r) for r in rows]
        rows2[i] = [a + h * b for a, b in zip(rows[i], rows[j])]
        variants = {"row operation": PolyMatrix(ring, rows2)}
    else:
        unit = fld(rng.randrange(1, fld.p or 101))
        variants = {"row scaling": PolyMatrix(ring, [[unit * a for a in rows[0]]])}
    # column operation: col_k += h * col_l
    k, l = rng.sample(range(c), 2)
    h = random_form(ring, 1, rng)
    cols = [list(col) for col in M.columns()]
    cols[k] = [a + h * b for a, b in zip(cols[k], cols[l])]
    variants["column operation"] = PolyMatrix.from_columns(ring, cols)
    variants["zero column"] = PolyMatrix.from_columns(ring, M.columns() + [tuple(ring.zero() for _ in range(g))])
    one, zero = ring.one(), ring.zero()
    stab = [[one] + [zero] * c] + [[zero] + list(r) for r in rows]
    variants["unit stabilization"] = PolyMatrix(ring, stab)
    for label, V in variants.items():
        other = fitting_ideal(ModulePresentation(ring, V), n)
        if not ideal_equal(base, other):
            return f"Fitting ideal {n} changed under {label} for {M}"
    return None


def prop_saturation(rng: random.Random, fld: Field) -> str | None:
    ring = PolyRing("x,y,z", fld)
    I = random_homogeneous_ideal(ring, rng)
    # throw in a component supported at the irrelevant ideal sometimes
    if rng.random() < 0.5:
        I = Ideal(ring, [g * random_form(ring, 1, rng) for g in I.generators]
                  + [random_form(ring, 3, rng) for _ in range(2)])
    if rng.random() < 0.5:
        J = irrelevant_ideal(ring)
    else:
        J = Ideal(ring, [random_form(ring, 1, rng)])
    s1 = saturate(I, J)
    s2 = saturate(s1, J)
    if not ideal_equal(s1, s2):
        return f"saturation not idempotent for {I.generators} by {J.generators}"
    if not s1.contains_ideal(quotient(I, J)) or not s1.contains_ideal(I):
        return f"saturation does not contain the colon for {I.generators}"
    return None


def prop_syzygy(rng: random.Random, fld: Field) -> str | None:
    ring = PolyRing("x,y,z", fld)
    rank = rng.randint(1, 2)
    m = rng.randint(2, 3)
    vecs = [FreeModuleVector(tuple(random_form(ring, rng.randint(1, 2), rng) for _ in range(rank)))
            for _ in range(m)]
    syz = syzygies(vecs)
    for s in syz:
        for k in range(rank):
            acc = ring.zero()
            for si, v in zip(s.components, vecs):
                acc = acc + si * v[k]
            if acc:
                return f"syzygy {s} is not a relation of {vecs}"
    if rank == 1 and m >= 2:
        # Koszul relations must lie in the computed module
        from .groebner import ModuleGB
        gb = ModuleGB(ring, m, [list(s.components) for s in syz]) if syz else None
        for i in range(m):
            for j in range(i + 1, m):
                kos = [ring.zero()] * m
                kos[i] = vecs[j][0]
                kos[j] = -vecs[i][0]
                if gb is None or not gb.contains(kos):
                    return f"Koszul relation ({i},{j}) missing from syzygies of {vecs}"
    return None


def prop_matrix_factorization(rng: random.Random, fld: Field) -> str | None:
    sc = random_singular_cubic(rng, fld)
    M = matrix_factorization(sc)
    if M.determinant() != -sc.Q:
        return f"det(M) != -Q for Q = {sc.Q}"
    return None


PROPERTIES: dict[str, Callable[[random.Random, Field], str | None]] = {
    "gb-membership-vs-linear-algebra": prop_membership,
    "fitting-invariance": prop_fitting_invariance,
    "saturation-idempotence": prop_saturation,
    "syzygy-exactness": prop_syzygy,
    "matrix-factorization-determinant": prop_matrix_factorization,
}


def run_property(name: str, cases: int = 200, seed: int = 0, prime: int = DEFAULT_PRIME) -> PropertyResult:
    fn = PROPERTIES[name]
    rng = random.Random(f"{name}:{seed}")
    fld = GF(prime)
    res = PropertyResult(name, cases)
    for _ in range(cases):
        msg = fn(rng, fld)
        if msg:
            res.failures.append(msg)
    return res
