from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcubics import GF, QQ, Ideal, PolyMatrix, ideal_equal
from cmcubics import cmcurves as cm
from cmcubics.idealops import ModulePresentation, fitting_ideal, hilbert, saturate, irrelevant_ideal

P = cm.plane_ring()
x, y, w = P.gens


# ---------------------------------------------------------------------------
# singular cubics and their factorizations


def test_section_validation():
    with pytest.raises(ValueError):
        cm.SingularCubicSection(x ** 3, x, 2 * x)            # dependent
    with pytest.raises(ValueError):
        cm.SingularCubicSection(x ** 3, x * y, y)            # not linear
    with pytest.raises(ValueError):
        cm.decompose_singular_cubic(cm.SingularCubicSection(w ** 3, x, y))   # not singular along s = t = 0


@pytest.mark.parametrize("Q", ["x^3", "w*(y^2 - x^2) - x^3", "x^2*w - y^2*w + y^3", "y^2*w + x*y*w"])
def test_decomposition_identity_and_determinant(Q):
    sc = cm.SingularCubicSection(P.parse(Q), x, y)
    d = cm.decompose_singular_cubic(sc)
    assert x * x * d.f1 + x * y * (d.f2 - d.g1) - y * y * d.g2 == sc.Q
    assert not d.g1                                        # the mixed block goes entirely to f2
    assert cm.matrix_factorization(sc).determinant() == -sc.Q


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_determinant_of_random_factorizations(seed):
    sc = cm.random_singular_cubic(random.Random(seed), GF(32003))
    assert cm.matrix_factorization(sc).determinant() == -sc.Q


def test_decomposition_with_general_section():
    s, t = x + 2 * y - w, y + 3 * w
    Q = s * s * (x - w) + s * t * y + t * t * (2 * x + w)
    sc = cm.SingularCubicSection(Q, s, t)
    d = cm.decompose_singular_cubic(sc)
    assert s * s * d.f1 + s * t * (d.f2 - d.g1) - t * t * d.g2 == Q


def test_curve_from_factorization_of_cusp_line():
    S = cm.source_ring()
    xs, ys, us, ws = S.gens
    # Q = -x^3 recovers the most degenerate curve exactly
    X = cm.curve_from_factorization(cm.SingularCubicSection(-x ** 3, x, y))
    assert ideal_equal(X, cm.degenerate_curve())
    # Q = x^3 gives its image under u -> -u
    X2 = cm.curve_from_factorization(cm.SingularCubicSection(x ** 3, x, y))
    assert ideal_equal(X2, Ideal(S, [us ** 2, us * ys + xs ** 2, xs * us]))
    assert hilbert(X2).polynomial_equals([1, 3])


def test_avoids_center():
    S = cm.source_ring()
    assert cm.avoids_center(cm.degenerate_curve())
    # the line x = y = w = 0 passes through the center
    assert not cm.avoids_center(Ideal(S, [S.var("x"), S.var("y")]))


def test_roundtrip_fixed_examples():
    for Q in (x ** 3, -x ** 3, w * (y ** 2 - x ** 2) - x ** 3):
        rep = cm.roundtrip_check(cm.SingularCubicSection(Q, x, y))
        assert rep.ok, rep


def test_ring_condition():
    n = Ideal(P, [x, y])
    assert cm.ring_condition_check(PolyMatrix(P, [[y * y, x * x], [x, y]]), n)
    assert not cm.ring_condition_check(PolyMatrix(P, [[w * w, x * x], [x, y]]), n)
    with pytest.raises(ValueError):
        cm.ring_condition_check(PolyMatrix(P, [[x, y, w], [x, y, w]]), n)


def test_critical_locus_of_a_nodal_cubic():
    f = y ** 2 * w - x ** 2 * (x + w)
    crit = cm.critical_locus(f)
    sat = saturate(crit, irrelevant_ideal(P))
    assert ideal_equal(sat, Ideal(P, [x, y]))           # the node (0:0:1)


def test_universal_cubic_has_ten_coefficients():
    f = cm.universal_cubic()
    assert len(f) == 10
    assert len([v for v in f.ring.variables if v.startswith("c")]) == 10


# ---------------------------------------------------------------------------
# families


def test_twisted_cubic_family_at_zero_and_generic_point():
    assert ideal_equal(cm.twisted_cubic_family([0] * 12), cm.degenerate_curve())
    a = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8]
    hd = hilbert(cm.twisted_cubic_family(a))
    assert hd.polynomial_equals([1, 3])
    with pytest.raises(ValueError):
        cm.twisted_cubic_family([0] * 11)


def test_degenerate_family_fitting_image_at_a_point():
    fam = cm.degenerate_family([1, 2, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1])
    hd = hilbert(cm.fitting_image(fam))
    assert hd.polynomial_equals([1, 3])


def test_beta_family_matrix_and_curve_agree_with_closed_form():
    B = cm.plane_ring(QQ, ["beta"])
    bx, by, bw, beta = B.gens
    args = (bx + bw, B.zero(), bw, beta)
    closed = cm.beta_family_closed_form(*args)
    M = cm.beta_family_matrix(*args)
    assert ideal_equal(fitting_ideal(ModulePresentation(M.ring, M), 0), closed)
    assert ideal_equal(cm.fitting_image(cm.beta_family_curve(*args)), closed)


def test_planar_fitting_image_has_embedded_point():
    sc = cm.SingularCubicSection(w * (y ** 2 - x ** 2) - x ** 3, x, y)
    fi = cm.planar_fitting_image(sc)
    assert ideal_equal(fi, cm.planar_embedded_point_ideal(sc))
    assert hilbert(fi).polynomial_equals([1, 3])


@pytest.mark.parametrize("n", [4, 5, 6])
def test_pn_planar_fitting_pattern(n):
    I, hd = cm.planar_image_fitting_pn(n, "y^2", "x^2")
    assert hd.polynomial_equals([n - 2, 3])
    assert ideal_equal(I, cm.planar_image_pattern(n, "y^2", "x^2"))


def test_pn_ring_validation():
    with pytest.raises(ValueError):
        cm.planar_image_fitting_pn(3, 0, 0)


def test_plain_double_point_lengths():
    D = cm.degenerate_curve()
    assert cm.plain_double_point_length(cm.CMCurvePresentation(D, {}, cm.plane_ring())) == 1
    assert cm.plain_double_point_length(cm.three_lines_projection()) == 1
    assert cm.plain_double_point_length(cm.CMCurvePresentation(D, {"z": D.ring.var("u")}, cm.space_ring())) == 0


def test_specialize_and_dehomogenize():
    S = cm.space_ring(QQ, ["t"])
    I = Ideal(S, [S.parse("x*w - t*y^2")])
    J = cm.specialize(I, {"t": 2})
    assert J.ring.variables == ("x", "y", "z", "w")
    assert J.generators[0] == J.ring.parse("x*w - 2*y^2")
    D = cm.dehomogenize(J)
    assert D.generators[0] == D.ring.parse("x - 2*y^2")


# ---------------------------------------------------------------------------
# obstruction computations


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3)], ids=str)
def test_embedded_point_residue(field):
    setup = cm.embedded_point_setup(field)
    from cmcubics.deform import lift_check
    rep = lift_check(setup)
    assert list(rep.residue.entries) == cm.embedded_point_expected_residue(setup.ring)
    assert rep.zero_mod_obstruction


def test_embedded_point_obstruction_is_needed():
    from cmcubics.deform import lift_check
    setup = cm.embedded_point_setup()
    S = setup.ring
    smaller = Ideal(S, [S.parse("b12*c13"), S.parse("b12*c14"), S.parse("b12*c15")])
    setup.obstruction = smaller
    assert not lift_check(setup).zero_mod_obstruction


def test_stable_sheaf_products():
    from cmcubics.deform import lift_check
    setup = cm.stable_sheaf_presentation()
    rep = lift_check(setup)
    assert rep.product == cm.stable_sheaf_expected_product(setup.ring)
    A, B = cm.stable_sheaf_undeformed()
    assert (A * B).is_zero()


def test_nonflat_chart_generators_and_presentation():
    chart = cm.nonflat_chart_generators()
    assert len(chart.generators) == 8
    assert ideal_equal(fitting_ideal(cm.nonflat_chart_presentation(), 0), chart)
