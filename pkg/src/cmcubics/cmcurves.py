"""Named constructions for Cohen-Macaulay curves of degree three and their verifications.

Coordinate conventions: the plane is k[x,y,w], the source space of a curve
is k[x,y,u,w], and the target space is k[x,y,z,w].  Parameter variables may
be appended to any of these rings; they are carried along by name.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .groebner import Ideal, ideal_equal
from .idealops import (HilbertData, ModulePresentation, fitting_ideal, hilbert,
                       image_ideal, irrelevant_ideal, minimize_presentation,
                       pushforward_presentation, saturate, annihilator)
from .deform import DeformationSetup
from .linalg import echelon
from .polyring import QQ, Field, PolyMatrix, PolyRing, Polynomial, minors, substitute

PLANE = ("x", "y", "w")


def _insert_var(ring: PolyRing, name: str, after: str = "y") -> PolyRing:
    vs = list(ring.variables)
    if name in vs:
        return ring
    vs.insert(vs.index(after) + 1, name)
    return PolyRing(vs, ring.field)


def plane_ring(field: Field = QQ, params: Sequence[str] = ()) -> PolyRing:
    return PolyRing(list(PLANE) + list(params), field)


def source_ring(field: Field = QQ, params: Sequence[str] = ()) -> PolyRing:
    return PolyRing(["x", "y", "u", "w"] + list(params), field)


def space_ring(field: Field = QQ, params: Sequence[str] = ()) -> PolyRing:
    return PolyRing(["x", "y", "z", "w"] + list(params), field)


# ---------------------------------------------------------------------------
# curves and their maps


@dataclass
class CMCurvePresentation:
    """A curve X (ideal in k[x,y,u,w,...]) with a linear map to a target space."""

    source_ideal: Ideal
    map_images: dict[str, Polynomial]
    target_ring: PolyRing
    module_generators: tuple[Polynomial, ...] | None = None

    def generators(self) -> tuple[Polynomial, ...]:
        ring = self.source_ideal.ring
        if self.module_generators is not None:
            return tuple(ring(m) for m in self.module_generators)
        return (ring.one(), ring.var("u")) if ring.has_var("u") else (ring.one(),)

    def pushforward(self) -> ModulePresentation:
        return pushforward_presentation(self.source_ideal, self.map_images, self.target_ring,
                                        self.generators())

    def image(self) -> Ideal:
        return image_ideal(self.source_ideal, self.map_images, self.target_ring)


def fitting_image(c: CMCurvePresentation, check: bool = True) -> Ideal:
    """Fitt^0 of the push-forward of the structure sheaf, as an ideal of the target."""
    fitt = fitting_ideal(c.pushforward(), 0)
    if check and fitt.is_homogeneous() and not fitt.is_unit():
        hd = hilbert(fitt)
        if hd.dimension != 2:
            raise ValueError(f"Fitting scheme is not a curve (Hilbert polynomial {hd})")
    return fitt


def twisted_cubic_family(a: Sequence, ring: PolyRing | None = None) -> Ideal:
    """Maximal minors of the 12-parameter determinantal family around (u^2, uy-x^2, xu)."""
    if len(a) != 12:
        raise ValueError("need 12 parameters")
    if ring is None:
        ring = next((v.ring for v in a if isinstance(v, Polynomial)), None) or source_ring()
    a = [None] + [ring(v) for v in a]
    x, y, u, w = (ring.var(v) for v in ("x", "y", "u", "w"))
    M = PolyMatrix(ring, [
        [x + a[2] * w, a[7] * y + a[6] * w, u + a[12] * x + a[11] * y + a[10] * u + a[9] * w],
        [y + a[1] * w, u + a[5] * x + a[4] * y + a[3] * w, x + a[8] * w],
    ])
    return Ideal(ring, minors(M, 2))


def degenerate_curve(field: Field = QQ) -> Ideal:
    ring = source_ring(field)
    x, y, u, w = ring.gens
    return Ideal(ring, [u ** 2, u * y - x ** 2, x * u])


def degenerate_family(a: Sequence, b: Sequence, field: Field = QQ) -> CMCurvePresentation:
    """Universal family near the most degenerate point: a_1..a_8 deform the curve, b_9..b_12 the map."""
    if len(a) != 8 or len(b) != 4:
        raise ValueError("need a_1..a_8 and b_9..b_12")
    src = source_ring(field)
    x, y, u, w = src.gens
    a = [None] + [src(v) for v in a]
    b = [src(v) for v in b]
    M = PolyMatrix(src, [
        [x + a[2] * w, a[7] * y + a[6] * w, u],
        [y + a[1] * w, u + a[5] * x + a[4] * y + a[3] * w, x + a[8] * w],
    ])
    images = {"z": b[0] * x + b[1] * y + b[2] * w + b[3] * u}
    return CMCurvePresentation(Ideal(src, minors(M, 2)), images, space_ring(field))


# ---------------------------------------------------------------------------
# singular cubics with a section


@dataclass(frozen=True)
class SingularCubicSection:
    """A plane cubic Q singular along the section s = t = 0."""

    Q: Polynomial
    s: Polynomial
    t: Polynomial

    def __post_init__(self):
        ring = self.Q.ring
        for v in PLANE:
            if not ring.has_var(v):
                raise ValueError(f"cubic ring needs variable {v!r}")
        for lf in (self.s, self.t):
            if lf.ring != ring or not _is_linear_form(lf):
                raise ValueError(f"{lf} is not a linear form in x, y, w")
        if len(echelon([_coeffs(self.s), _coeffs(self.t)], ring.field)[1]) != 2:
            raise ValueError("s and t are linearly dependent")

    @property
    def ring(self) -> PolyRing:
        return self.Q.ring

    def section_ideal(self) -> Ideal:
        return Ideal(self.ring, [self.s, self.t])


def _is_linear_form(f: Polynomial) -> bool:
    idx = {f.ring.index(v) for v in PLANE}
    return bool(f) and all(sum(m) == 1 and any(m[i] for i in idx) for m in f.monomials())


def _coeffs(f: Polynomial) -> list:
    ring = f.ring
    return [f.coefficient(ring.var(v).leading_monomial()) for v in PLANE]


def _inverse3(A: list[list], field: Field) -> list[list]:
    rows = [list(A[i]) + [1 if j == i else 0 for j in range(3)] for i in range(3)]
    red, piv = echelon(rows, field)
    if piv[:3] != [0, 1, 2]:
        raise ValueError("singular coordinate change")
    return [[r.get(3 + j, field.zero()) for j in range(3)] for r in red]


@dataclass(frozen=True)
class CubicDecomposition:
    """Linear forms with Q = s^2 f1 + s t (f2 - g1) - t^2 g2."""

    f1: Polynomial
    f2: Polynomial
    g1: Polynomial
    g2: Polynomial


def decompose_singular_cubic(sc: SingularCubicSection) -> CubicDecomposition:
    """Deterministic decomposition: s^2 block to f1, mixed block to f2, t^2 block to -g2, g1 = 0."""
    ring = sc.ring
    fld = ring.field
    # complete (s, t) to a basis with a coordinate form r
    r = None
    for v in ("w", "y", "x"):
        cand = ring.var(v)
        if len(echelon([_coeffs(sc.s), _coeffs(sc.t), _coeffs(cand)], fld)[1]) == 3:
            r = cand
            break
    A = [_coeffs(sc.s), _coeffs(sc.t), _coeffs(r)]
    inv = _inverse3(A, fld)
    params = [v for v in ring.variables if v not in PLANE]
    aux = PolyRing(["_S", "_T", "_R"] + params, fld)
    S, T, Rv = aux.var("_S"), aux.var("_T"), aux.var("_R")
    # (x, y, w) = inv * (S, T, R)
    images = {v: inv[i][0] * S + inv[i][1] * T + inv[i][2] * Rv for i, v in enumerate(PLANE)}
    Qn = substitute(sc.Q, images, aux)
    blocks: dict[str, dict] = {"f1": {}, "f2": {}, "g2": {}}
    for m, c in Qn.items():
        es, et, er = m[0], m[1], m[2]
        if es + et + er != 3:
            raise ValueError("Q is not a cubic form in x, y, w")
        if es >= 2:
            blocks["f1"][(es - 2, et, er) + m[3:]] = c
        elif es == 1 and et >= 1:
            blocks["f2"][(0, et - 1, er) + m[3:]] = c
        elif es == 0 and et >= 2:
            blocks["g2"][(0, et - 2, er) + m[3:]] = -c
        else:
            raise ValueError("Q is not in the square of the section ideal (s, t)")
    back = {"_S": sc.s, "_T": sc.t, "_R": r}
    out = {k: substitute(aux.from_dict(d), back, ring) for k, d in blocks.items()}
    dec = CubicDecomposition(out["f1"], out["f2"], ring.zero(), out["g2"])
    s, t = sc.s, sc.t
    if s * s * dec.f1 + s * t * (dec.f2 - dec.g1) - t * t * dec.g2 != sc.Q:
        raise AssertionError("decomposition identity failed")
    return dec


def matrix_factorization(sc: SingularCubicSection) -> PolyMatrix:
    """[[g1 s + g2 t, f1 s + f2 t], [s, t]], whose determinant is -Q."""
    d = decompose_singular_cubic(sc)
    s, t = sc.s, sc.t
    return PolyMatrix(sc.ring, [[d.g1 * s + d.g2 * t, d.f1 * s + d.f2 * t], [s, t]])


def curve_from_factorization(sc: SingularCubicSection) -> Ideal:
    """Maximal minors of [[s, -g2, u + f2], [t, u + g1, -f1]] in k[x,y,u,w]."""
    d = decompose_singular_cubic(sc)
    ring = _insert_var(sc.ring, "u")
    u = ring.var("u")
    s, t = ring(sc.s), ring(sc.t)
    f1, f2, g1, g2 = (ring(v) for v in (d.f1, d.f2, d.g1, d.g2))
    M = PolyMatrix(ring, [[s, -g2, u + f2], [t, u + g1, -f1]])
    return Ideal(ring, minors(M, 2))


def avoids_center(I: Ideal) -> bool:
    """True when the curve misses the point where x = y = w = 0."""
    ring = I.ring
    J = I + [ring.var(v) for v in PLANE]
    return saturate(J, irrelevant_ideal(ring)).is_unit()


def ring_condition_check(P: ModulePresentation | PolyMatrix, n: Ideal) -> bool:
    """Both first-row entries of a 2x2 presentation lie in n."""
    M = P.relations if isinstance(P, ModulePresentation) else P
    if M.shape != (2, 2):
        raise ValueError(f"ring condition needs a 2x2 presentation, got {M.shape}")
    return all(n.contains(e) for e in M.row(0))


def plain_double_point_length(c: CMCurvePresentation) -> int:
    """HP(push-forward) - HP(image): the length of the cokernel of O_D -> i_* O_X."""
    hx = hilbert(c.source_ideal)
    hd = hilbert(saturate(c.image(), irrelevant_ideal(c.target_ring)))
    n = max(len(hx.hilbert_polynomial), len(hd.hilbert_polynomial))
    diff = [(hx.hilbert_polynomial[k] if k < len(hx.hilbert_polynomial) else 0)
            - (hd.hilbert_polynomial[k] if k < len(hd.hilbert_polynomial) else 0) for k in range(n)]
    if any(diff[1:]) or diff[0].denominator != 1 or diff[0] < 0:
        raise ValueError(f"difference of Hilbert polynomials is not a length: {diff}")
    return int(diff[0])


@dataclass
class RoundTripReport:
    image_matches_q: bool
    section_matches_annihilator: bool
    ring_condition: bool
    hilbert_3t_plus_1: bool
    avoids_center: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.image_matches_q and self.section_matches_annihilator and self.ring_condition
                and self.hilbert_3t_plus_1 and self.avoids_center)


def roundtrip_check(sc: SingularCubicSection) -> RoundTripReport:
    """Cubic with singular section -> curve -> (image cubic, conductor) and compare."""
    plane = sc.ring
    X = curve_from_factorization(sc)
    c = CMCurvePresentation(X, {}, plane)
    image = saturate(c.image(), irrelevant_ideal(plane))
    img_ok = ideal_equal(image, Ideal(plane, [sc.Q]))
    P = minimize_presentation(c.pushforward())
    one = plane.one()
    zero = plane.zero()
    K = P.with_columns(P.columns() + [(one, zero)])
    ann = annihilator(K)
    ann_ok = ideal_equal(ann, sc.section_ideal())
    rc = P.relations.shape == (2, 2) and ring_condition_check(P, sc.section_ideal())
    hd = hilbert(X)
    return RoundTripReport(img_ok, ann_ok, rc, hd.polynomial_equals([1, 3]), avoids_center(X),
                           {"curve": X, "presentation": P, "annihilator": ann, "image": image})


def random_linear_form(ring: PolyRing, rng: random.Random) -> Polynomial:
    p = ring.field.p or 101
    return sum((rng.randrange(p) * ring.var(v) for v in PLANE), ring.zero())


def random_singular_cubic(rng: random.Random, field: Field) -> SingularCubicSection:
    """Q = s^2 L1 + s t L2 + t^2 L3 with random independent s, t and random L_i."""
    ring = plane_ring(field)
    while True:
        s, t = random_linear_form(ring, rng), random_linear_form(ring, rng)
        if len(echelon([_coeffs(s), _coeffs(t)], field)[1]) == 2:
            break
    L = [random_linear_form(ring, rng) for _ in range(3)]
    Q = s * s * L[0] + s * t * L[1] + t * t * L[2]
    if not Q:
        return random_singular_cubic(rng, field)
    return SingularCubicSection(Q, s, t)


def critical_locus(f: Polynomial, variables: Sequence[str] = PLANE) -> Ideal:
    """(f, df/dv for the geometric variables v)."""
    return Ideal(f.ring, [f] + [f.diff(v) for v in variables])


def universal_cubic(field: Field = QQ) -> Polynomial:
    """The ternary cubic with one coefficient variable per monomial."""
    monos = [(i, j, 3 - i - j) for i in range(3, -1, -1) for j in range(3 - i, -1, -1)]
    names = [f"c{i}{j}{k}" for i, j, k in monos]
    ring = plane_ring(field, names)
    f = ring.zero()
    for (i, j, k), n in zip(monos, names):
        f = f + ring.var(n) * ring.var("x") ** i * ring.var("y") ** j * ring.var("w") ** k
    return f


# ---------------------------------------------------------------------------
# Fitting images of the non-immersion chart


def beta_family_curve(f1, g1, g2, beta) -> CMCurvePresentation:
    """X = (xu + g, yu + f, u(u + g1) - f1 g2), g = g1 x + g2 y, f = x f1, with z -> beta u."""
    base = next(v.ring for v in (f1, g1, g2, beta) if isinstance(v, Polynomial))
    src = _insert_var(base, "u")
    tgt = _insert_var(base, "z")
    x, y, u = src.var("x"), src.var("y"), src.var("u")
    f1, g1, g2, beta = (src(v) for v in (f1, g1, g2, beta))
    gens = [x * u + g1 * x + g2 * y, y * u + x * f1, u * (u + g1) - f1 * g2]
    return CMCurvePresentation(Ideal(src, gens), {"z": beta * u}, tgt)


def beta_family_matrix(f1, g1, g2, beta) -> PolyMatrix:
    base = next(v.ring for v in (f1, g1, g2, beta) if isinstance(v, Polynomial))
    ring = _insert_var(base, "z")
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    f1, g1, g2, beta = (ring(v) for v in (f1, g1, g2, beta))
    return PolyMatrix(ring, [[z, -beta * f1 * g2, g1 * x + g2 * y, f1 * x],
                             [-beta, z + beta * g1, x, y]])


def beta_family_closed_form(f1, g1, g2, beta) -> Ideal:
    """(Q, F1, F2, F3) with Q = f1 x^2 - g1 x y - g2 y^2."""
    base = next(v.ring for v in (f1, g1, g2, beta) if isinstance(v, Polynomial))
    ring = _insert_var(base, "z")
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    f1, g1, g2, beta = (ring(v) for v in (f1, g1, g2, beta))
    Q = f1 * x ** 2 - g1 * x * y - g2 * y ** 2
    F1 = z ** 2 + beta * g1 * z - beta ** 2 * f1 * g2
    F2 = z * x + beta * g1 * x + beta * g2 * y
    F3 = z * y + beta * f1 * x
    return Ideal(ring, [Q, F1, F2, F3])


def planar_fitting_image(sc: SingularCubicSection) -> Ideal:
    """Fitt^0 of the curve of a singular section mapped into the plane z = 0 of P^3."""
    X = curve_from_factorization(sc)
    tgt = _insert_var(sc.ring, "z")
    return fitting_image(CMCurvePresentation(X, {"z": X.ring.zero()}, tgt))


def planar_embedded_point_ideal(sc: SingularCubicSection) -> Ideal:
    """(Q, z^2, zx, zy): plane cubic with an embedded point at the singular point."""
    tgt = _insert_var(sc.ring, "z")
    z, x, y = tgt.var("z"), tgt.var("x"), tgt.var("y")
    return Ideal(tgt, [tgt(sc.Q), z ** 2, z * x, z * y])


# ---------------------------------------------------------------------------
# planar image in P^n


def pn_ring(n: int, field: Field = QQ) -> PolyRing:
    return PolyRing(["x", "y", "w"] + [f"z{i}" for i in range(1, n - 1)], field)


def planar_image_fitting_pn(n: int, g, f, field: Field = QQ) -> tuple[Ideal, HilbertData]:
    """Fitt^0 of [[z1,0,...,z_{n-2},0,g,f],[0,z1,...,0,z_{n-2},x,y]] and its Hilbert data."""
    if n < 4:
        raise ValueError("n must be at least 4")
    ring = pn_ring(n, field)
    g, f = ring(g), ring(f)
    zero = ring.zero()
    cols = []
    for i in range(1, n - 1):
        z = ring.var(f"z{i}")
        cols += [(z, zero), (zero, z)]
    cols += [(g, ring.var("x")), (f, ring.var("y"))]
    P = ModulePresentation(ring, PolyMatrix.from_columns(ring, cols), (0, 1))
    fitt = fitting_ideal(P, 0)
    return fitt, hilbert(fitt)


def planar_image_pattern(n: int, g, f, field: Field = QQ) -> Ideal:
    """(z_i^2, z_i z_j, z_i x, z_i y, y g - x f)."""
    ring = pn_ring(n, field)
    g, f = ring(g), ring(f)
    zs = [ring.var(f"z{i}") for i in range(1, n - 1)]
    x, y = ring.var("x"), ring.var("y")
    gens = [z * z for z in zs] + [a * b for a, b in combinations(zs, 2)]
    gens += [z * x for z in zs] + [z * y for z in zs] + [y * g - x * f]
    return Ideal(ring, gens)


def pn_degenerate_curve(n: int, b: Sequence[Sequence] | None = None, field: Field = QQ) -> CMCurvePresentation:
    """(u^2, uy - x^2, xu) mapped to P^n by z_i -> b_i1 x + b_i2 y + b_i3 w + b_i4 u."""
    X = degenerate_curve(field)
    src = X.ring
    x, y, u, w = src.gens
    images = {}
    for i in range(1, n - 1):
        row = b[i - 1] if b is not None else (0, 0, 0, 0)
        images[f"z{i}"] = row[0] * x + row[1] * y + row[2] * w + row[3] * u
    return CMCurvePresentation(X, images, pn_ring(n, field))


# ---------------------------------------------------------------------------
# obstruction computations for two deformation problems (chart w = 1, shifted coordinates)

EMBEDDED_POINT_VARS = ("x", "y", "z", "a3", "a6", "a8", "b12", "c13", "c14", "c15", "c16")


def embedded_point_setup(field: Field = QQ) -> DeformationSetup:
    """Perturbed generators and relations of (zx, zy, z^2, x^3) with obstruction (b12 c13..c16).

    x, y, z, a3, a6 stand for the shifted coordinates and combined parameters.
    """
    R = PolyRing(EMBEDDED_POINT_VARS, field)
    x, y, z, a3, a6, a8, b, c13, c14, c15, c16 = R.gens
    phi = [
        z * x + b * a3 * x - b * a6 * y,
        z * y - b * x * (x + a8),
        z ** 2 + c16 * z + b * a3 * z - b ** 2 * a6 * (x + a8),
        x ** 3 + a3 * x * y - a6 * y ** 2 + a8 * x ** 2 + c13 * x + c14 * y + c15 * z + c15 * c16,
    ]
    rel = PolyMatrix(R, [
        [-b * (x + a8), z + c16, -y, -x * (x + a8) - c13],
        [-z - c16 - b * a3, b * a6, x, -c14 - a3 * x + a6 * y],
        [y, -x, 0, -c15],
        [0, 0, b, z],
    ])
    J = Ideal(R, [b * c13, b * c14, b * c15, b * c16])
    return DeformationSetup.from_vector(R, phi, rel, J, EMBEDDED_POINT_VARS[3:], truncation_degree=3)


def embedded_point_expected_residue(ring: PolyRing) -> list[Polynomial]:
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    b, c13, c14, c15, c16 = (ring.var(v) for v in ("b12", "c13", "c14", "c15", "c16"))
    return [b * c16 * x ** 2, ring.zero(), b * c13 * x + b * c14 * y + b * c15 * z, b * c14 * x ** 2]


def embedded_point_expanded_images(ring: PolyRing) -> dict[str, Polynomial]:
    """Substitution from the shifted coordinates to the original deformation parameters."""
    v = ring.var
    return {
        "x": v("x") + v("a2"), "y": v("y") + v("a1"),
        "z": v("z") + v("a11") + v("a9") * v("x") + v("a10") * v("y"),
        "a3": v("a3") + v("a4") * v("y") + v("a5") * v("x"),
        "a6": v("a6") + v("a7") * v("y"),
    }


def embedded_point_expanded_setup(field: Field = QQ) -> DeformationSetup:
    """The same lifting problem written in all sixteen parameters a1..a11, b12, c13..c16."""
    base = embedded_point_setup(field)
    params = [f"a{i}" for i in range(1, 12)] + ["b12", "c13", "c14", "c15", "c16"]
    R = PolyRing(["x", "y", "z"] + params, field)
    imgs = embedded_point_expanded_images(R)
    for v in base.ring.variables:
        imgs.setdefault(v, R.var(v))
    G = base.generators.map(lambda f: substitute(f, imgs, R))
    Rel = base.relations.map(lambda f: substitute(f, imgs, R))
    J = Ideal(R, [R.embed(g) for g in base.obstruction.generators])
    return DeformationSetup(R, G, Rel, J, tuple(params), None)


STABLE_SHEAF_VARS = ("x", "y", "z", "a3", "a6", "a8", "b12", "c13", "c14")


def stable_sheaf_presentation(field: Field = QQ) -> DeformationSetup:
    """Perturbed presentation matrices of the stable sheaf, with obstruction (b12 c13, b12 c14)."""
    R = PolyRing(STABLE_SHEAF_VARS, field)
    x, y, z, a3, a6, a8, b, c13, c14 = R.gens
    A = PolyMatrix(R, [
        [z, -b * a6 * (x + a8), a3 * x - a6 * y + c14, -x * (x + a8) - c13],
        [-b, z + b * a3, x, y],
    ])
    B = PolyMatrix(R, [
        [-a3 * x + a6 * y - c14, x * (x + a8) + c13],
        [-x, -y],
        [z, b * (x + a8)],
        [b * a6, z + b * a3],
    ])
    J = Ideal(R, [b * c13, b * c14])
    return DeformationSetup(R, A, B, J, STABLE_SHEAF_VARS[3:], None)


def stable_sheaf_expected_product(ring: PolyRing) -> PolyMatrix:
    x = ring.var("x")
    a3, a6, a8, b, c13, c14 = (ring.var(v) for v in STABLE_SHEAF_VARS[3:])
    return PolyMatrix(ring, [[-c13 * b * a6, c14 * b * (x + a8) - c13 * b * a3],
                             [c14 * b, -c13 * b]])


def stable_sheaf_undeformed(field: Field = QQ) -> tuple[PolyMatrix, PolyMatrix]:
    R = space_ring(field)
    x, y, z, w = R.gens
    A = PolyMatrix(R, [[z, 0, 0, -x ** 2], [0, z, x, y]])
    B = PolyMatrix(R, [[0, x ** 2], [-x, -y], [z, 0], [0, z]])
    return A, B


def stable_sheaf_graded_presentation(values: Mapping[str, object], field: Field = QQ) -> ModulePresentation:
    """Homogenized first matrix at concrete parameters a1..a11, b12, c13, c14 (in k[x,y,z,w])."""
    R = space_ring(field)
    x, y, z, w = R.gens
    val = {k: R.field(v) for k, v in values.items()}

    def a(i):
        return val.get(f"a{i}", 0)

    b, c13, c14 = val.get("b12", 0), val.get("c13", 0), val.get("c14", 0)
    xt = x + a(2) * w
    yt = y + a(1) * w
    zt = z + a(11) * w + a(9) * x + a(10) * y
    a3 = a(3) * w + a(4) * y + a(5) * x
    a6 = a(6) * w + a(7) * y
    A = PolyMatrix(R, [
        [zt, -b * a6 * (xt + a(8) * w), a3 * xt - a6 * yt + c14 * w ** 2, -xt * (xt + a(8) * w) - c13 * w ** 2],
        [R.constant(-b), zt + b * a3, xt, yt],
    ])
    return ModulePresentation(R, A, (0, 1))


# ---------------------------------------------------------------------------
# a non-flat Fitting family (genus two quintic projected with z -> t u)


def genus_two_curve(field: Field = QQ, with_parameter: bool = True) -> Ideal:
    """Maximal minors of [[x, u, y^2 + w^2], [y, x, u^2]]."""
    ring = source_ring(field, ["t"] if with_parameter else [])
    x, y, u, w = (ring.var(v) for v in ("x", "y", "u", "w"))
    M = PolyMatrix(ring, [[x, u, y ** 2 + w ** 2], [y, x, u ** 2]])
    return Ideal(ring, minors(M, 2))


def nonflat_family(field: Field = QQ) -> CMCurvePresentation:
    X = genus_two_curve(field)
    src = X.ring
    u = src.var("u")
    return CMCurvePresentation(X, {"z": src.var("t") * u}, space_ring(field, ["t"]),
                               (src.one(), u, u * u))


def nonflat_chart_presentation(field: Field = QQ) -> ModulePresentation:
    ring = PolyRing("x,y,z,t", field)
    x, y, z, t = ring.gens
    M = PolyMatrix(ring, [
        [z, 0, -t * x * (y ** 2 + 1), 0, x ** 2, -y - y ** 3],
        [-t, z, 0, x ** 2, -y, 0],
        [0, -t, z, -y, 0, x],
    ])
    return ModulePresentation(ring, M)


def nonflat_chart_generators(field: Field = QQ) -> Ideal:
    ring = PolyRing("x,y,z,t", field)
    x, y, z, t = ring.gens
    e = y * z - t * x ** 2
    q = y ** 2 + 1
    return Ideal(ring, [z ** 3 - t ** 3 * x * q, z ** 2 * x - t ** 2 * y * q, z * x ** 3 - t * y ** 2 * q,
                        x ** 5 - y ** 3 * q, e * x, e * y, e * z, e * t])


def dehomogenize(I: Ideal, var: str = "w") -> Ideal:
    ring = I.ring
    sub = ring.drop([var])
    return Ideal(sub, [substitute(g, {var: 1}, sub) for g in I.generators])


def specialize(I: Ideal, values: Mapping[str, object]) -> Ideal:
    """Set parameter variables to field values; the result lives in the ring without them."""
    ring = I.ring
    sub = ring.drop(values)
    return Ideal(sub, [substitute(g, dict(values), sub) for g in I.generators])


def cubic_with_limit_point(field: Field = QQ) -> Ideal:
    """(zx, zy, z^2, zw^2, xC, yC) with C = x^3 + y^3 + w^3."""
    R = space_ring(field)
    x, y, z, w = R.gens
    C = x ** 3 + y ** 3 + w ** 3
    return Ideal(R, [z * x, z * y, z ** 2, z * w ** 2, x * C, y * C])


def three_lines_projection(field: Field = QQ) -> CMCurvePresentation:
    """Three concurrent non-coplanar lines projected to the plane (triple point, plain double point)."""
    src = source_ring(field)
    x, y, u, w = src.gens
    X = Ideal(src, [x * y, x * u, y * u])
    return CMCurvePresentation(X, {"x": x + u, "y": y + u, "w": w}, plane_ring(field))
