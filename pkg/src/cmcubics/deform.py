"""Deformation calculus: normal-module generators, graded tangent dimension, lift checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import FreeModuleVector, Ideal, syzygies, syzygies_modulo
from .idealops import NonHomogeneousError, irrelevant_ideal, saturate
from .linalg import echelon, nullspace
from .polyring import DEGREVLEX, PolyMatrix, PolyRing, Polynomial


class NotSaturatedError(ValueError):
    pass


def relation_matrix(generators: Sequence[Polynomial]) -> PolyMatrix:
    """Columns generate the syzygies of the generator vector."""
    ring = generators[0].ring
    syz = syzygies([FreeModuleVector((g,)) for g in generators])
    return PolyMatrix.from_columns(ring, [s.components for s in syz], nrows=len(generators))


def _chart(I: Ideal, var: str) -> tuple[PolyRing, list[Polynomial]]:
    ring = I.ring
    sub = ring.drop([var])
    i = ring.index(var)
    out = []
    for g in I.generators:
        terms: dict = {}
        for m, c in g.items():
            e = m[:i] + m[i + 1:]
            terms[e] = terms.get(e, 0) + c
        out.append(sub.from_dict(terms))
    return sub, out


def normal_module_generators(I: Ideal, chart: str | None = None) -> list[FreeModuleVector]:
    """Generators of Hom(I, R/I) as images of the generator vector, reduced mod I.

    Computed as the syzygies of the rows of the relation matrix, modulo I.
    With ``chart`` the ideal is first dehomogenized by setting that variable to 1.
    """
    if chart is not None:
        ring, gens = _chart(I, chart)
        I = Ideal(ring, gens)
    gens = list(I.generators)
    ring = I.ring
    R = relation_matrix(gens)
    if R.cols == 0:
        rows = [FreeModuleVector((ring.zero(),)) for _ in gens]
    else:
        col_degs = _column_degrees(R, gens)
        shifts = tuple(-d for d in col_degs) if None not in col_degs else None
        rows = [FreeModuleVector(R.row(i), shifts) for i in range(R.rows)]
    out = []
    for h in syzygies_modulo(rows, I):
        red = FreeModuleVector(tuple(I.reduce(c) for c in h.components), h.shifts)
        if not red.is_zero():
            out.append(red)
    return out


def _column_degrees(R: PolyMatrix, gens: Sequence[Polynomial]) -> list[int | None]:
    out = []
    for j in range(R.cols):
        degs = set()
        for i in range(R.rows):
            e = R[i, j]
            for m in e.monomials():
                degs.add(sum(m) + gens[i].total_degree())
        out.append(degs.pop() if len(degs) == 1 else None)
    return out


@dataclass
class TangentReport:
    """Degree-0 graded Hom(I, S/I): its dimension and a basis of homomorphisms."""

    dimension: int
    basis: list[FreeModuleVector]


def _check_saturated_homogeneous(I: Ideal):
    if not all(g.is_homogeneous() for g in I.generators):
        raise NonHomogeneousError("tangent computation needs a homogeneous ideal")
    sat = saturate(I, irrelevant_ideal(I.ring))
    if not I.contains_ideal(sat):
        raise NotSaturatedError("ideal is not saturated with respect to the irrelevant ideal")


def tangent_space(I: Ideal, check_saturated: bool = True) -> TangentReport:
    """Degree-0 homomorphisms I -> S/I by exact linear algebra on standard monomials."""
    if check_saturated:
        _check_saturated_homogeneous(I)
    ring = I.ring
    field = ring.field
    gens = [g for g in I.generators]
    degs = [g.total_degree() for g in gens]
    R = relation_matrix(gens)
    lm = set(I.leading_monomials(DEGREVLEX))

    def standard(d):
        return [m for m in ring.monomials_of_degree(d)
                if not any(all(a <= b for a, b in zip(g, m)) for g in lm)]

    unknowns = [(i, m) for i, d in enumerate(degs) for m in standard(d)]
    # constraint coordinates: (syzygy column, standard monomial)
    coord: dict = {}
    columns = []
    for i, m in unknowns:
        mono = ring.monomial(m)
        col = {}
        for j in range(R.cols):
            e = R[i, j]
            if not e:
                continue
            nf = I.reduce(mono * e)
            for mm, c in nf.items():
                k = coord.setdefault((j, mm), len(coord))
                col[k] = c
        columns.append(col)
    # build rows of A (constraints x unknowns)
    rows: list[dict] = [dict() for _ in range(len(coord))]
    for u, col in enumerate(columns):
        for k, c in col.items():
            rows[k][u] = c
    null = nullspace(rows, len(unknowns), field)
    basis = []
    for v in null:
        comps = [dict() for _ in gens]
        for u, c in enumerate(v):
            if c:
                i, m = unknowns[u]
                comps[i][m] = c
        basis.append(FreeModuleVector(tuple(ring.from_dict(d) for d in comps), tuple(-d for d in degs)))
    return TangentReport(len(null), basis)


def tangent_dimension(I: Ideal) -> int:
    """Dimension of the degree-0 part of Hom(I, S/I) for a saturated homogeneous I."""
    return tangent_space(I).dimension


def degree_zero_span(I: Ideal, generators: Sequence[FreeModuleVector]) -> int:
    """Dimension of the degree-0 part of the submodule of Hom(I, S/I) spanned by graded generators.

    Each generator h (with h_i of degree deg(phi_i) + delta) contributes
    m*h for every monomial m of degree -delta.
    """
    ring = I.ring
    degs = [g.total_degree() for g in I.generators]
    shifts = tuple(-d for d in degs)
    index: dict = {}
    vecs = []
    for h in generators:
        delta = FreeModuleVector(h.components, shifts).degree()
        if delta is None:
            raise NonHomogeneousError(f"generator {h} is not homogeneous")
        if delta > 0:
            continue
        for mono in ring.monomials_of_degree(-delta):
            mpoly = ring.monomial(mono)
            row = {}
            for i, c in enumerate(h.components):
                if not c:
                    continue
                for mm, a in I.reduce(mpoly * c).items():
                    k = index.setdefault((i, mm), len(index))
                    row[k] = a
            vecs.append(row)
    if not vecs:
        return 0
    return len(echelon(vecs, ring.field)[1])


# ---------------------------------------------------------------------------
# lifting relations


@dataclass
class DeformationSetup:
    """Perturbed generators (as a matrix, a 1 x m row for an ideal) and perturbed relations."""

    ring: PolyRing
    generators: PolyMatrix
    relations: PolyMatrix
    obstruction: Ideal
    deformation_variables: tuple[str, ...]
    truncation_degree: int | None = None

    @classmethod
    def from_vector(cls, ring: PolyRing, phi: Sequence[Polynomial], relations: PolyMatrix,
                    obstruction: Ideal, deformation_variables: Sequence[str],
                    truncation_degree: int | None = None) -> DeformationSetup:
        return cls(ring, PolyMatrix(ring, [list(phi)]), relations, obstruction,
                   tuple(deformation_variables), truncation_degree)

    def weights(self) -> tuple[int, ...]:
        dv = set(self.deformation_variables)
        return tuple(1 if v in dv else 0 for v in self.ring.variables)

    def specialize_undeformed(self) -> DeformationSetup:
        zero = {v: self.ring.zero() for v in self.deformation_variables}
        return DeformationSetup(self.ring, self.generators.subs(zero), self.relations.subs(zero),
                                Ideal(self.ring, []), self.deformation_variables, self.truncation_degree)

    def specialize(self, values: dict) -> DeformationSetup:
        images = {k: self.ring(v) for k, v in values.items()}
        return DeformationSetup(self.ring, self.generators.subs(images), self.relations.subs(images),
                                self.obstruction.subs(images), self.deformation_variables,
                                self.truncation_degree)


@dataclass
class LiftReport:
    product: PolyMatrix
    residue: PolyMatrix
    zero_mod_obstruction: bool

    @property
    def product_is_zero(self) -> bool:
        return self.product.is_zero()


def lift_check(setup: DeformationSetup) -> LiftReport:
    """Multiply generators by relations; truncate in the deformation variables; test against J."""
    G, R = setup.generators, setup.relations
    if G.cols != R.rows:
        raise ValueError(f"shape mismatch: {G.shape} times {R.shape}")
    prod = G * R
    if setup.truncation_degree is None:
        residue = prod
    else:
        w = setup.weights()
        residue = prod.map(lambda f: f.truncate(w, setup.truncation_degree))
    J = setup.obstruction
    ok = all(J.contains(e) for e in prod.entries) if not J.is_zero() else prod.is_zero()
    return LiftReport(prod, residue, ok)


__all__ = [
    "DeformationSetup", "LiftReport", "NotSaturatedError", "TangentReport",
    "degree_zero_span", "lift_check", "normal_module_generators", "relation_matrix",
    "tangent_dimension", "tangent_space",
]
