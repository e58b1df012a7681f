from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcubics import GF, Ideal, PolyMatrix, PolyRing, ideal_equal
from cmcubics.idealops import (ModulePresentation, NonHomogeneousError, _poly_saturation,
                               _var_saturation, annihilator, divide_exact, eliminate, fitting_ideal,
                               hilbert, hilbert_from_monomials, hilbert_numerator, image_ideal,
                               intersect, irrelevant_ideal, minimize_presentation,
                               pushforward_presentation, quotient, saturate, torsion_witnesses)
from cmcubics.linalg import rank

from strategies import homogeneous_ideal_generators

R = PolyRing("x,y,z")
R101 = PolyRing("x,y,z", GF(101))
P3 = PolyRing("x,y,z,w")


def brute_force_hilbert_function(I: Ideal, d: int) -> int:
    """dim (S/I)_d by linear algebra on the span of m*g, independent of any Groebner basis."""
    ring = I.ring
    monos = ring.monomials_of_degree(d)
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in I.generators:
        e = d - g.total_degree()
        if e < 0:
            continue
        for m in ring.monomials_of_degree(e):
            prod = g.mul_term(m, ring.field.one())
            rows.append({index[mm]: c for mm, c in prod.items()})
    return len(monos) - rank(rows, ring.field)


# ---------------------------------------------------------------------------
# elimination, intersection, colon


def test_eliminate_parametrization_of_twisted_cubic():
    S = PolyRing("s,t,x,y,z,w")
    gens = [S.parse(p) for p in ("x - s^3", "y - s^2*t", "z - s*t^2", "w - t^3")]
    E = eliminate(Ideal(S, gens), ["s", "t"])
    assert E.ring == P3
    expected = Ideal(P3, [P3.parse(p) for p in ("x*z - y^2", "x*w - y*z", "y*w - z^2")])
    assert ideal_equal(E, expected)


@given(homogeneous_ideal_generators(R101), homogeneous_ideal_generators(R101))
@settings(max_examples=30)
def test_intersection_properties(a, b):
    I, J = Ideal(R101, a), Ideal(R101, b)
    K = intersect(I, J)
    assert I.contains_ideal(K) and J.contains_ideal(K)
    assert K.contains_ideal(I * J)


def test_intersection_of_coordinate_ideals():
    x, y, z = R.gens
    K = intersect(Ideal(R, [x]), Ideal(R, [y]), Ideal(R, [z]))
    assert ideal_equal(K, Ideal(R, [x * y * z]))
    K2 = intersect(Ideal(R, [x, y]), Ideal(R, [z]))
    assert ideal_equal(K2, Ideal(R, [x * z, y * z]))


def test_divide_exact():
    f = R.parse("(x + y)*(x - z^2)")
    assert divide_exact(f, R.parse("x + y")) == R.parse("x - z^2")
    with pytest.raises(ArithmeticError):
        divide_exact(R.parse("x + 1"), R.parse("y"))


@given(homogeneous_ideal_generators(R101), homogeneous_ideal_generators(R101, degrees=(1, 2), max_gens=2))
@settings(max_examples=30)
def test_colon_properties(a, b):
    I, J = Ideal(R101, a), Ideal(R101, b)
    Q = quotient(I, J)
    assert Q.contains_ideal(I)
    for q in Q.generators:
        for g in J.generators:
            assert I.contains(q * g)


def test_colon_known_value():
    x, y, z = R.gens
    I = Ideal(R, [x ** 2 * y, x * y ** 2])
    assert ideal_equal(quotient(I, Ideal(R, [x])), Ideal(R, [x * y, y ** 2]))
    assert ideal_equal(quotient(I, Ideal(R, [x, y])), Ideal(R, [x * y]))


# ---------------------------------------------------------------------------
# saturation: the variable route and the Rabinowitsch route must agree


@given(homogeneous_ideal_generators(R101), st.sampled_from(["x", "y", "z"]))
@settings(max_examples=40)
def test_two_saturation_routes_agree(gens, var):
    I = Ideal(R101, gens)
    assert ideal_equal(_var_saturation(I, var), _poly_saturation(I, R101.var(var)))


def test_saturation_removes_embedded_point():
    x, y, z, w = P3.gens
    I = Ideal(P3, [z ** 2, z * x, z * y, x ** 3])
    sat = saturate(I, irrelevant_ideal(P3))
    assert ideal_equal(sat, I)                         # already saturated: the point is not at the origin
    J = Ideal(P3, [x * z, y * z, z ** 2, z * w ** 2, x * (x ** 3 + y ** 3 + w ** 3), y * (x ** 3 + y ** 3 + w ** 3)])
    assert ideal_equal(saturate(J, irrelevant_ideal(P3)), Ideal(P3, [z, x * (x ** 3 + y ** 3 + w ** 3),
                                                                     y * (x ** 3 + y ** 3 + w ** 3)]))


def test_saturation_by_empty_ideal_is_unit():
    assert saturate(Ideal(R, [R.var("x")]), Ideal(R, [])).is_unit()


def test_torsion_witnesses():
    S = PolyRing("x,t")
    x, t = S.gens
    I = Ideal(S, [x * t, t ** 2])
    assert torsion_witnesses(I, "t")
    assert not torsion_witnesses(Ideal(S, [x ** 2]), "t")


# ---------------------------------------------------------------------------
# Hilbert data


@pytest.mark.parametrize("gens, coeffs", [
    (["z^2", "z*x", "z*y", "x^3"], [1, 3]),            # plane cubic plus embedded point
    (["x*z - y^2", "x*w - y*z", "y*w - z^2"], [1, 3]),  # twisted cubic
    (["z", "x^3 + y^3 + w^3"], [0, 3]),                 # plane cubic
    (["x", "y", "z"], [1]),                              # point
    (["x*y", "x*z", "y*z"], [1, 3]),                    # three concurrent lines in P^3 (not the same as in P^2)
])
def test_hilbert_polynomials(gens, coeffs):
    hd = hilbert(Ideal(P3, [P3.parse(g) for g in gens]))
    assert hd.polynomial_equals(coeffs), str(hd)


def test_hilbert_function_of_degenerate_cubic_and_string():
    S = PolyRing("x,y,u,w")
    hd = hilbert(Ideal(S, [S.parse("u^2"), S.parse("u*y - x^2"), S.parse("x*u")]))
    assert [v for _, v in hd.function_table[:4]] == [1, 4, 7, 10]
    assert str(hd) == "3t+1"
    assert hd.value(10) == 31
    assert hd.dimension == 2


@given(homogeneous_ideal_generators(R101))
@settings(max_examples=40)
def test_hilbert_function_matches_brute_force(gens):
    I = Ideal(R101, gens)
    hd = hilbert(I, table_depth=6)
    for d, v in hd.function_table:
        assert v == brute_force_hilbert_function(I, d)


@given(homogeneous_ideal_generators(R101))
@settings(max_examples=40)
def test_hilbert_polynomial_agrees_with_function_in_high_degree(gens):
    hd = hilbert(Ideal(R101, gens), table_depth=12)
    for d, v in hd.function_table:
        if d >= hd.regularity_index:
            assert hd.value(d) == v


def test_hilbert_numerator_of_monomial_ideals():
    # (x, y) in k[x, y, z]: numerator (1 - T)^2
    assert hilbert_numerator([(1, 0, 0), (0, 1, 0)], 3) == [1, -2, 1]
    # (x^2) in k[x]: 1 - T^2
    assert hilbert_numerator([(2,)], 1) == [1, 0, -1]
    hd = hilbert_from_monomials([(1, 0, 0), (0, 1, 0)], 3)
    assert hd.polynomial_equals([1])


def test_hilbert_rejects_nonhomogeneous():
    with pytest.raises(NonHomogeneousError):
        hilbert(Ideal(R, [R.parse("x + 1")]))


# ---------------------------------------------------------------------------
# Fitting ideals, annihilators, presentations


def test_fitting_ideal_of_cyclic_module_is_the_ideal():
    x, y, z = R.gens
    P = ModulePresentation(R, PolyMatrix(R, [[x ** 2, y * z, z ** 3]]))
    assert ideal_equal(fitting_ideal(P, 0), Ideal(R, [x ** 2, y * z, z ** 3]))
    assert fitting_ideal(P, 1).is_unit()


def test_fitting_ideal_edge_cases():
    x, y, z = R.gens
    P = ModulePresentation(R, PolyMatrix(R, [[x], [y]]))
    assert fitting_ideal(P, 0).is_zero()               # fewer relations than generators
    assert ideal_equal(fitting_ideal(P, 1), Ideal(R, [x, y]))
    assert fitting_ideal(P, 2).is_unit()


def test_annihilator_of_direct_sum():
    x, y, z = R.gens
    M = PolyMatrix(R, [[x, y, 0], [0, 0, z]])
    ann = annihilator(ModulePresentation(R, M))
    assert ideal_equal(ann, Ideal(R, [x * z, y * z]))
    # Fitt0 is contained in the annihilator
    assert ann.contains_ideal(fitting_ideal(ModulePresentation(R, M), 0))


def test_minimize_presentation_drops_redundant_columns():
    x, y, z = R.gens
    M = PolyMatrix.from_columns(R, [(x, y), (x * z, y * z), (z, R.zero())])
    P = minimize_presentation(ModulePresentation(R, M, (0, 0)))
    assert P.relations.cols == 2
    with pytest.raises(NonHomogeneousError):
        minimize_presentation(ModulePresentation(R, M))


def test_image_of_rational_normal_curve():
    S = PolyRing("s,t")
    imgs = {"x": S.parse("s^3"), "y": S.parse("s^2*t"), "z": S.parse("s*t^2"), "w": S.parse("t^3")}
    img = image_ideal(Ideal(S, []), imgs, P3)
    expected = Ideal(P3, [P3.parse(p) for p in ("x*z - y^2", "x*w - y*z", "y*w - z^2")])
    assert ideal_equal(img, expected)


def test_pushforward_of_double_line_to_the_plane():
    # (u^2) in k[x, u, w] mapped to k[x, w]: free of rank 2 on 1, u
    S = PolyRing("x,u,w")
    T = PolyRing("x,w")
    P = pushforward_presentation(Ideal(S, [S.parse("u^2")]), {}, T, [S.one(), S.var("u")])
    assert P.relations.is_zero() or P.relations.cols == 0
    assert fitting_ideal(P, 0).is_zero()


def test_pushforward_of_degenerate_cubic_to_the_plane():
    S = PolyRing("x,y,u,w")
    X = Ideal(S, [S.parse("u^2"), S.parse("u*y - x^2"), S.parse("x*u")])
    T = PolyRing("x,y,w")
    P = pushforward_presentation(X, {}, T, [S.one(), S.var("u")])
    assert P.generator_degrees == (0, 1)
    assert P.is_graded()
    assert ideal_equal(fitting_ideal(P, 0), Ideal(T, [T.parse("x^3")]))
    # every column is a relation: 1 -> 1, u -> u
    for a, b in P.columns():
        assert X.contains(S(a) + S(b) * S.var("u"))
