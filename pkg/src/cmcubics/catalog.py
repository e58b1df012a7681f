"""Named verification checks, each reproducing one explicit computation end to end."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import cmcurves as cm
from .deform import degree_zero_span, lift_check, normal_module_generators, tangent_dimension
from .groebner import FreeModuleVector, Ideal, ideal_equal, module_equal
from .idealops import (fitting_ideal, hilbert, irrelevant_ideal, quotient, saturate,
                       torsion_witnesses)
from .polyring import GF, QQ, Field, PolyRing, format_polynomial
from .properties import DEFAULT_PRIME, PROPERTIES, run_property


@dataclass
class VerificationReport:
    check_id: str
    status: str                      # pass | fail | error
    details: list[tuple[str, str]] = field(default_factory=list)
    elapsed: float = 0.0
    field: str = "q"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {"check": self.check_id, "field": self.field, "status": self.status,
                "elapsed": round(self.elapsed, 3), "details": [list(d) for d in self.details]}


class _Recorder:
    def __init__(self):
        self.details: list[tuple[str, str]] = []
        self.ok = True

    def expect(self, label: str, cond: bool, value: object = None):
        shown = "ok" if cond else "FAILED"
        if value is not None:
            shown = f"{shown} ({_render(value)})"
        self.details.append((label, shown))
        self.ok = self.ok and bool(cond)

    def note(self, label: str, value: object):
        self.details.append((label, _render(value)))


def _render(v) -> str:
    if isinstance(v, Ideal):
        return "(" + ", ".join(format_polynomial(g) for g in v.generators) + ")"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_render(x) for x in v) + "]"
    return str(v)


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    run: Callable[[_Recorder, Field, int], None]
    characteristic_sensitive: bool = False
    fixed_field: bool = False        # randomized over the large prime regardless of --field


def field_name(f: Field) -> str:
    return "q" if f.p == 0 else f"fp:{f.p}"


# ---------------------------------------------------------------------------
# checks


def _determinantal_fiber(r: _Recorder, F: Field, seed: int):
    I = cm.twisted_cubic_family([0] * 12, cm.source_ring(F))
    r.note("minors", I)
    r.expect("equals (u^2, uy-x^2, xu)", ideal_equal(I, cm.degenerate_curve(F)))
    hd = hilbert(I)
    r.expect("Hilbert polynomial 3t+1", hd.polynomial_equals([1, 3]), hd)
    r.expect("Hilbert function 1,4,7,10", [v for _, v in hd.function_table[:4]] == [1, 4, 7, 10],
             [v for _, v in hd.function_table[:4]])


def _tangent(r: _Recorder, F: Field, seed: int):
    R = cm.space_ring(F)
    x, y, z, w = R.gens
    cases = [
        ("(z^2,zx,zy,x^3)", Ideal(R, [z ** 2, z * x, z * y, x ** 3]), 16),
        ("(z^2,zx,zy,xw^2)", Ideal(R, [z ** 2, z * x, z * y, x * w ** 2]), 15),
        ("(u^2,uy-x^2,xu)", cm.degenerate_curve(F), 12),
    ]
    for label, I, expected in cases:
        d = tangent_dimension(I)
        r.expect(f"tangent dimension {label} = {expected}", d == expected, d)
        span = degree_zero_span(I, normal_module_generators(I))
        r.expect(f"degree-0 span of normal generators {label}", span == d, span)


def _normal_generators(r: _Recorder, F: Field, seed: int):
    R = cm.space_ring(F)
    x, y, z, w = R.gens
    I = Ideal(R, [z * x, z * y, z ** 2, x ** 3])
    gens = normal_module_generators(I, chart="w")
    C = gens[0].ring
    cx, cy, cz = C.var("x"), C.var("y"), C.var("z")
    o = C.zero()
    f, g = cx ** 2, o      # x^3 = x f - y g
    expected = [(cz, o, o, o), (o, cz, o, o), (o, o, cz, o), (o, o, o, cz), (o, o, o, cx),
                (o, o, o, cy), (cx, cy, o, o), (g, f, o, o)]
    IC = Ideal(C, [cz * cx, cz * cy, cz ** 2, cx ** 3])
    same = module_equal(gens, [FreeModuleVector(v) for v in expected], modulo=IC)
    r.expect("normal module of (zx,zy,z^2,x^3) in the chart w=1 matches the 8 listed generators", same)
    S = cm.source_ring(F)
    D = cm.degenerate_curve(F)
    gens2 = normal_module_generators(D, chart="w")
    C2 = gens2[0].ring
    x2, y2, u2 = C2.var("x"), C2.var("y"), C2.var("u")
    o2 = C2.zero()
    eps = [(o2, -x2, u2), (-x2, o2, -y2), (u2, y2, o2), (o2, u2, o2), (u2, o2, x2), (o2, -x2, o2)]
    DC = Ideal(C2, [u2 ** 2, u2 * y2 - x2 ** 2, x2 * u2])
    r.expect("normal module of (u^2,yu-x^2,xu) is spanned by the six matrix perturbations",
             module_equal(gens2, [FreeModuleVector(v) for v in eps], modulo=DC))
    del S


def _embedded_point_obstruction(r: _Recorder, F: Field, seed: int):
    setup = cm.embedded_point_setup(F)
    rep = lift_check(setup)
    expected = cm.embedded_point_expected_residue(setup.ring)
    r.note("residue", list(rep.residue.entries))
    r.expect("residue modulo degree-3 terms matches", list(rep.residue.entries) == expected)
    r.expect("product vanishes modulo (b12c13, b12c14, b12c15, b12c16)", rep.zero_mod_obstruction)
    r.expect("undeformed product is zero", lift_check(setup.specialize_undeformed()).product_is_zero)
    r.expect("product is not identically zero", not rep.product_is_zero)
    full = lift_check(cm.embedded_point_expanded_setup(F))
    r.expect("product in all sixteen parameters vanishes modulo the obstruction ideal", full.zero_mod_obstruction)


def _stable_sheaf_obstruction(r: _Recorder, F: Field, seed: int):
    setup = cm.stable_sheaf_presentation(F)
    rep = lift_check(setup)
    r.note("product", rep.product)
    r.expect("product equals the expected 2x2 matrix", rep.product == cm.stable_sheaf_expected_product(setup.ring))
    r.expect("product vanishes modulo (b12c13, b12c14)", rep.zero_mod_obstruction)
    r.expect("undeformed product is zero", lift_check(setup.specialize_undeformed()).product_is_zero)
    A, B = cm.stable_sheaf_undeformed(F)
    r.expect("A*B = 0 for the undeformed matrices", (A * B).is_zero())


def _fitting_image_planar(r: _Recorder, F: Field, seed: int):
    P = cm.plane_ring(F)
    x, y, w = P.gens
    for Q in (x ** 3, w * (y ** 2 - x ** 2) - x ** 3, x ** 2 * w - y ** 2 * w + y ** 3):
        sc = cm.SingularCubicSection(Q, x, y)
        fi = cm.planar_fitting_image(sc)
        r.expect(f"Fitt0 for Q = {Q} is (Q, z^2, zx, zy)", ideal_equal(fi, cm.planar_embedded_point_ideal(sc)), fi)
    R = cm.space_ring(F)
    D = cm.degenerate_curve(F)
    imm = cm.CMCurvePresentation(D, {"z": D.ring.var("u")}, R)
    expected = Ideal(R, [R.parse("z^2"), R.parse("z*y - x^2"), R.parse("x*z")])
    r.expect("closed immersion: Fitt0 is the ideal of the image", ideal_equal(cm.fitting_image(imm), expected))


def _fitting_flat(r: _Recorder, F: Field, seed: int):
    B = cm.plane_ring(F, ["beta"])
    x, y, w, beta = B.gens
    args = (x, B.zero(), w, beta)
    closed = cm.beta_family_closed_form(*args)
    M = cm.beta_family_matrix(*args)
    from .idealops import ModulePresentation
    fm = fitting_ideal(ModulePresentation(M.ring, M), 0)
    r.expect("minors of the flat presentation give (Q, F1, F2, F3)", ideal_equal(fm, closed), closed)
    fp = cm.fitting_image(cm.beta_family_curve(*args))
    r.expect("Fitt0 of the computed push-forward gives (Q, F1, F2, F3)", ideal_equal(fp, closed))
    rng = random.Random(f"fitting-flat:{seed}")
    G = GF(DEFAULT_PRIME)
    BG = cm.plane_ring(G, ["beta"])
    bad = 0
    for _ in range(5):
        f1, g1, g2 = (cm.random_linear_form(BG, rng) for _ in range(3))
        bval = rng.randrange(DEFAULT_PRIME)
        fam = cm.fitting_image(cm.beta_family_curve(f1, g1, g2, BG.var("beta")))
        spec_after = cm.specialize(fam, {"beta": bval})
        PG = cm.plane_ring(G)
        lf = [PG(_drop_beta(v)) for v in (f1, g1, g2)]
        spec_first = cm.fitting_image(cm.beta_family_curve(*lf, PG.constant(bval)))
        ok = ideal_equal(Ideal(spec_first.ring, [spec_first.ring(g) for g in spec_after.generators]), spec_first)
        ok = ok and hilbert(spec_first).polynomial_equals([1, 3])
        bad += not ok
    r.expect("Fitt0 commutes with specializing beta at 5 random points; Hilbert polynomial 3t+1", bad == 0, bad)


def _drop_beta(f):
    return cm.plane_ring(f.ring.field).embed(f)


def _fitting_random(r: _Recorder, F: Field, seed: int):
    G = GF(DEFAULT_PRIME)
    rng = random.Random(f"fitting-image-random:{seed}")
    fails = []
    for k in range(20):
        a = [rng.randrange(DEFAULT_PRIME) for _ in range(8)]
        b = [rng.randrange(DEFAULT_PRIME) for _ in range(4)]
        if k % 2:
            b[3] = 0          # map not an immersion: plane image with a plain double point
        hd = hilbert(cm.fitting_image(cm.degenerate_family(a, b, G)))
        if not hd.polynomial_equals([1, 3]):
            fails.append((k, str(hd)))
    r.expect("Hilbert polynomial 3t+1 at 20 random points of the universal family", not fails, fails or 20)
    fails = []
    for k in range(5):
        vals = {f"a{i}": rng.randrange(DEFAULT_PRIME) for i in range(1, 12)}
        vals["b12"] = rng.randrange(DEFAULT_PRIME)
        hd = hilbert(fitting_ideal(cm.stable_sheaf_graded_presentation(vals, G), 0))
        if not hd.polynomial_equals([1, 3]):
            fails.append((k, str(hd)))
    r.expect("stable sheaf presentation with c13=c14=0: Fitt0 has Hilbert polynomial 3t+1", not fails, fails or 5)


def _nonflat(r: _Recorder, F: Field, seed: int):
    fitt = fitting_ideal(cm.nonflat_family(F).pushforward(), 0)
    R = fitt.ring
    e = R.parse("y*z - t*x^2")
    colon = quotient(fitt, Ideal(R, [R.var("t")]))
    r.expect("yz - tx^2 lies in (Fitt0 : t)", colon.contains(e))
    r.expect("yz - tx^2 does not lie in Fitt0", not fitt.contains(e))
    wit = torsion_witnesses(fitt, "t")
    r.expect("torsion witnesses", bool(wit), wit)
    chart = cm.nonflat_chart_generators(F)
    deh = cm.dehomogenize(fitt)
    r.expect("chart w=1 of Fitt0 equals the 8 listed generators",
             ideal_equal(Ideal(chart.ring, [chart.ring(g) for g in deh.generators]), chart))
    r.expect("3x3 minors of the listed 6-column presentation give the same ideal",
             ideal_equal(fitting_ideal(cm.nonflat_chart_presentation(F), 0), chart))
    h0 = hilbert(cm.specialize(fitt, {"t": 0}))
    h1 = hilbert(cm.specialize(fitt, {"t": 1}))
    r.note("Hilbert polynomial at t=0", h0)
    r.note("Hilbert polynomial at t=1", h1)
    r.expect("fibers at t=0 and t=1 have different Hilbert polynomials", h0.hilbert_polynomial != h1.hilbert_polynomial)


def _roundtrip(r: _Recorder, F: Field, seed: int):
    G = GF(DEFAULT_PRIME)
    P = cm.plane_ring(F)
    x, y, w = P.gens
    rep = cm.roundtrip_check(cm.SingularCubicSection(x ** 3, x, y))
    r.expect("Q = x^3, s = x, t = y round trip", rep.ok)
    rng = random.Random(f"roundtrip-sc:{seed}")
    fails = []
    for k in range(50):
        sc = cm.random_singular_cubic(rng, G)
        rep = cm.roundtrip_check(sc)
        if not rep.ok:
            fails.append((k, str(sc.Q)))
    r.expect("50 random singular cubics: 3t+1, avoids (0:0:1:0), image (Q), annihilator (s,t), ring condition",
             not fails, fails or 50)


def _pn(r: _Recorder, F: Field, seed: int):
    for n in (4, 5):
        I, hd = cm.planar_image_fitting_pn(n, "y^2", "x^2", F)
        r.expect(f"n={n}: Hilbert polynomial 3t+{n - 2}", hd.polynomial_equals([n - 2, 3]), hd)
        r.expect(f"n={n}: ideal pattern (z_i^2, z_i z_j, z_i x, z_i y, yg - xf)",
                 ideal_equal(I, cm.planar_image_pattern(n, "y^2", "x^2", F)))
        fi = cm.fitting_image(cm.pn_degenerate_curve(n, field=F))
        r.expect(f"n={n}: Fitt0 of the computed push-forward has the same pattern (g=0, f=-x^2)",
                 ideal_equal(fi, cm.planar_image_pattern(n, 0, "-x^2", F)))


def _double_points(r: _Recorder, F: Field, seed: int):
    D = cm.degenerate_curve(F)
    l1 = cm.plain_double_point_length(cm.CMCurvePresentation(D, {}, cm.plane_ring(F)))
    r.expect("projection of (u^2,uy-x^2,xu) to the plane: length 1", l1 == 1, l1)
    l3 = cm.plain_double_point_length(cm.three_lines_projection(F))
    r.expect("three concurrent lines projected to the plane: length 1", l3 == 1, l3)
    l0 = cm.plain_double_point_length(cm.CMCurvePresentation(D, {"z": D.ring.var("u")}, cm.space_ring(F)))
    r.expect("closed immersion: length 0", l0 == 0, l0)
    P = cm.plane_ring(F)
    x, y = P.var("x"), P.var("y")
    n = Ideal(P, [x, y])
    from .polyring import PolyMatrix
    r.expect("ring condition holds for [[y^2, x^2], [x, y]]", cm.ring_condition_check(PolyMatrix(P, [[y ** 2, x ** 2], [x, y]]), n))
    r.expect("ring condition fails for [[1, 0], [x, y]]", not cm.ring_condition_check(PolyMatrix(P, [[1, 0], [x, y]]), n))


def _saturation_limit_point(r: _Recorder, F: Field, seed: int):
    I = cm.cubic_with_limit_point(F)
    R = I.ring
    sat = saturate(I, irrelevant_ideal(R))
    x, y, z, w = R.gens
    C = x ** 3 + y ** 3 + w ** 3
    r.note("saturation", sat)
    r.expect("input is not saturated", not I.contains_ideal(sat))
    r.expect("saturation equals (z, xC, yC)", ideal_equal(sat, Ideal(R, [z, x * C, y * C])))
    r.expect("Hilbert polynomials of input and saturation are 3t+1",
             hilbert(I).polynomial_equals([1, 3]) and hilbert(sat).polynomial_equals([1, 3]))


def _critical(r: _Recorder, F: Field, seed: int):
    f = cm.universal_cubic(F)
    crit = cm.critical_locus(f)
    r.expect("universal cubic: 4 generators", len(crit.generators) == 4, len(crit.generators))
    P = cm.plane_ring(GF(3))
    g = P.parse("x^3 + y^3 + w^3")
    r.expect("Fermat cubic over F_3: critical locus is (f)", ideal_equal(cm.critical_locus(g), Ideal(P, [g])))


def _twisted_generic(r: _Recorder, F: Field, seed: int):
    G = GF(DEFAULT_PRIME)
    rng = random.Random(f"twisted-cubic-generic:{seed}")
    ring = cm.source_ring(G)
    fails = 0
    for _ in range(20):
        a = [rng.randrange(DEFAULT_PRIME) for _ in range(12)]
        hd = hilbert(cm.twisted_cubic_family(a, ring))
        fails += not hd.polynomial_equals([1, 3])
    r.expect("Hilbert polynomial 3t+1 at 20 random parameter points", fails == 0, fails)
    a = [0] * 12
    a[6] = 1
    I = cm.twisted_cubic_family(a, cm.source_ring(F))
    d = tangent_dimension(I)
    r.expect("a7 = 1: tangent dimension 12", d == 12, d)


def _kernel(r: _Recorder, F: Field, seed: int):
    for name in PROPERTIES:
        res = run_property(name, 200, seed)
        r.expect(f"{name} (200 cases)", res.ok, f"{len(res.failures)} failures" if res.failures else None)


CHECKS: dict[str, Check] = {c.check_id: c for c in [
    Check("determinantal-fiber", "minors of the 12-parameter matrix at a=0 and their Hilbert polynomial", _determinantal_fiber),
    Check("tangent-12-15-16", "graded tangent dimensions 16, 15, 12", _tangent, characteristic_sensitive=True),
    Check("normal-module-generators", "normal module generators in the chart w=1", _normal_generators),
    Check("ps-obstruction", "lifting the relations of (zx,zy,z^2,x^3)", _embedded_point_obstruction, characteristic_sensitive=True),
    Check("ft-obstruction", "lifting AB=0 for the stable sheaf presentation", _stable_sheaf_obstruction, characteristic_sensitive=True),
    Check("fitting-image-planar", "Fitt0 of a CM-curve mapped into a plane of P^3", _fitting_image_planar),
    Check("fitting-flat", "closed-form Fitting ideal of the beta family", _fitting_flat),
    Check("fitting-image-random", "Hilbert polynomial of the Fitting scheme at random points", _fitting_random, fixed_field=True),
    Check("nonflat-5t-1", "t-torsion in the Fitting family of a genus two quintic", _nonflat),
    Check("roundtrip-sc", "cubic with singular section to curve and back", _roundtrip, fixed_field=True),
    Check("pn-planar-fitting", "Fitting ideal of a planar image in P^n", _pn),
    Check("plain-double-points", "length of the cokernel of O_D -> i_* O_X; ring condition", _double_points),
    Check("saturation-limit-point", "saturation of the non-saturated plane cubic plus point", _saturation_limit_point),
    Check("critical-locus", "critical locus of cubic families", _critical),
    Check("twisted-cubic-generic", "generic members of the 12-parameter family", _twisted_generic, fixed_field=True),
    Check("kernel-properties", "seeded randomized property suite of the kernel", _kernel, fixed_field=True),
]}


def run_check(check_id: str, fld: Field = QQ, seed: int = 0) -> VerificationReport:
    check = CHECKS[check_id]
    rec = _Recorder()
    t0 = time.perf_counter()
    fname = f"fp:{DEFAULT_PRIME}" if check.fixed_field else field_name(fld)
    try:
        check.run(rec, fld, seed)
        status = "pass" if rec.ok else "fail"
    except Exception as exc:  # reported, not raised: one broken check must not hide the others
        rec.details.append(("exception", f"{type(exc).__name__}: {exc}"))
        status = "error"
    return VerificationReport(check_id, status, rec.details, time.perf_counter() - t0, fname)


def plan(selection: str, fld: Field | None) -> list[tuple[str, Field]]:
    """(check, field) pairs: 'all' runs characteristic-sensitive checks under q, fp:2 and fp:3."""
    ids = list(CHECKS) if selection == "all" else [selection]
    out = []
    for cid in ids:
        if cid not in CHECKS:
            raise KeyError(cid)
        if selection == "all" and fld is None and CHECKS[cid].characteristic_sensitive:
            out += [(cid, QQ), (cid, GF(2)), (cid, GF(3))]
        else:
            out.append((cid, fld or QQ))
    return out
