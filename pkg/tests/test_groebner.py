from __future__ import annotations

import itertools
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcubics import (GF, DEGREVLEX, LEX, FreeModuleVector, Ideal, PolyRing, ideal_equal,
                      normal_form, syzygies, syzygies_modulo)
from cmcubics.groebner import ModuleGB, module_equal
from cmcubics.polyring import format_polynomial
from cmcubics.properties import member_by_linear_algebra

from strategies import homogeneous_ideal_generators, homogeneous_polynomials, polynomials

R = PolyRing("x,y,z")
R101 = PolyRing("x,y,z", GF(101))
X, Y, Z = sympy.symbols("x y z")


def sympy_reduced_basis(gens, ring, order):
    exprs = [sympy.sympify(format_polynomial(g).replace("^", "**")) for g in gens]
    kw = {"modulus": ring.field.p} if ring.field.p else {}
    G = sympy.groebner(exprs, X, Y, Z, order=order, **kw)
    ours = DEGREVLEX if order == "grevlex" else LEX
    # normalize by the leading coefficient in our order (sympy's Poly.monic uses lex)
    return {ring.parse(str(sympy.expand(g)).replace("**", "^")).monic(ours) for g in G.exprs}


def monic_set(basis, order):
    return {g.monic(order) for g in basis}


def spoly(f, g, order):
    a, b = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(max(p, q) for p, q in zip(a, b))
    ring = f.ring
    fa = ring.monomial(tuple(l - p for l, p in zip(lcm, a)), ring.field.inv(f.leading_coefficient(order)))
    gb = ring.monomial(tuple(l - q for l, q in zip(lcm, b)), ring.field.inv(g.leading_coefficient(order)))
    return fa * f - gb * g


# ---------------------------------------------------------------------------
# known bases


def test_textbook_example():
    I = Ideal(R, [R.parse("x^3 - 2*x*y"), R.parse("x^2*y - 2*y^2 + x")])
    assert set(I.groebner_basis()) == {R.parse("x^2"), R.parse("x*y"), R.parse("y^2 - 1/2*x")}


def test_twisted_cubic_lex_basis():
    S = PolyRing("t,x,y,z")
    I = Ideal(S, [S.parse("x - t"), S.parse("y - t^2"), S.parse("z - t^3")])
    G = set(I.groebner_basis(LEX))
    assert G == {S.parse(s) for s in ("t - x", "x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2")}


def test_unit_ideal_and_zero_ideal():
    assert Ideal(R, [R.parse("x + 1"), R.parse("x")]).is_unit()
    Z0 = Ideal(R, [])
    assert Z0.is_zero() and Z0.groebner_basis() == ()
    assert Z0.contains(R.zero()) and not Z0.contains(R.one())


# ---------------------------------------------------------------------------
# cross-checks against an independent implementation


@settings(max_examples=40)
@given(st.lists(polynomials(R, max_terms=3, max_exp=2), min_size=1, max_size=3), st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_matches_sympy_over_rationals(gens, order):
    if not any(gens):
        return
    ours = monic_set(Ideal(R, gens).groebner_basis(DEGREVLEX if order == "grevlex" else LEX),
                     DEGREVLEX if order == "grevlex" else LEX)
    assert ours == sympy_reduced_basis([g for g in gens if g], R, order)


@settings(max_examples=40)
@given(st.lists(polynomials(R101, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy_over_prime_field(gens):
    if not any(gens):
        return
    assert monic_set(Ideal(R101, gens).groebner_basis(), DEGREVLEX) == sympy_reduced_basis(
        [g for g in gens if g], R101, "grevlex")


# ---------------------------------------------------------------------------
# defining properties


@given(st.lists(polynomials(R, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_buchberger_criterion_holds(gens):
    I = Ideal(R, gens)
    G = I.groebner_basis()
    for g in I.generators:
        assert not normal_form(g, G)
    for f, g in itertools.combinations(G, 2):
        assert not normal_form(spoly(f, g, DEGREVLEX), G)
    # reduced: no term of one element divisible by a leading monomial of another
    lms = [g.leading_monomial() for g in G]
    for g in G:
        assert g.leading_coefficient() == 1
        for m in g.monomials():
            for lm in lms:
                if lm != g.leading_monomial():
                    assert not all(a <= b for a, b in zip(lm, m))


@given(st.lists(polynomials(R, max_terms=3, max_exp=2), min_size=1, max_size=3), polynomials(R))
def test_normal_form_is_canonical(gens, f):
    I = Ideal(R, gens)
    nf = I.reduce(f)
    # f - nf lies in I, reducing again is the identity, and adding an element of I changes nothing
    assert I.contains(f - nf)
    assert I.reduce(nf) == nf
    if I.generators:
        assert I.reduce(f + I.generators[0] * f) == nf


@given(homogeneous_ideal_generators(R101), st.integers(2, 4), st.data())
def test_membership_agrees_with_linear_algebra(gens, d, data):
    I = Ideal(R101, gens)
    if data.draw(st.booleans()):
        f = R101.zero()
        for g in I.generators:
            e = d - g.total_degree()
            if e >= 0:
                f = f + data.draw(homogeneous_polynomials(R101, e)) * g
    else:
        f = data.draw(homogeneous_polynomials(R101, d))
    assert I.contains(f) == member_by_linear_algebra(f, list(I.generators))


def test_membership_oracle_sees_both_outcomes():
    x, y, z = R.gens
    gens = [x * y, z ** 2]
    assert member_by_linear_algebra(x * y * z + z ** 3, gens)
    assert not member_by_linear_algebra(x * z, gens)
    I = Ideal(R, gens)
    assert I.contains(x * y * z + z ** 3) and not I.contains(x * z)


@given(st.lists(polynomials(R, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_ideal_equality_is_independent_of_generators(gens):
    I = Ideal(R, gens)
    if not I.generators:
        return
    shuffled = list(reversed(I.generators)) + [I.generators[0] * R.var("x")]
    assert ideal_equal(I, Ideal(R, shuffled))


def test_basis_depends_on_field():
    I = Ideal(R, [R.parse("2*x"), R.parse("y")])
    assert Ideal(PolyRing("x,y,z", GF(2)), [PolyRing("x,y,z", GF(2)).parse("2*x + y")]).groebner_basis() == (
        PolyRing("x,y,z", GF(2)).parse("y"),)
    assert set(I.groebner_basis()) == {R.var("x"), R.var("y")}


# ---------------------------------------------------------------------------
# syzygies and modules


def _vec(*comps):
    return FreeModuleVector(tuple(R(c) for c in comps))


def test_koszul_syzygies_of_variables():
    syz = syzygies([_vec("x"), _vec("y"), _vec("z")])
    koszul = [_vec("y", "-x", "0"), _vec("z", "0", "-x"), _vec("0", "z", "-y")]
    assert module_equal(syz, koszul)
    assert len(syz) == 3


@given(st.lists(polynomials(R, max_terms=3, max_exp=2), min_size=2, max_size=3))
def test_syzygies_are_relations_and_contain_koszul(gens):
    gens = [g for g in gens if g]
    if len(gens) < 2:
        return
    vecs = [FreeModuleVector((g,)) for g in gens]
    syz = syzygies(vecs)
    for s in syz:
        assert not sum((c * g for c, g in zip(s.components, gens)), R.zero())
    gb = ModuleGB(R, len(gens), [list(s.components) for s in syz])
    for i, j in itertools.combinations(range(len(gens)), 2):
        kos = [R.zero()] * len(gens)
        kos[i], kos[j] = gens[j], -gens[i]
        assert gb.contains(kos)


def test_vector_syzygies():
    vecs = [_vec("x", "y"), _vec("y", "0"), _vec("0", "x")]
    syz = syzygies(vecs)
    assert syz
    for s in syz:
        for k in range(2):
            assert not sum((c * v[k] for c, v in zip(s.components, vecs)), R.zero())
    # a x + b y = 0 and a y + c x = 0 force (a, b, c) to be a multiple of (-xy, x^2, y^2)
    assert module_equal(syz, [_vec("-x*y", "x^2", "y^2")])


def test_syzygies_modulo_an_ideal():
    I = Ideal(R, [R.parse("x^2")])
    syz = syzygies_modulo([_vec("x")], I)
    # x * h in (x^2) iff h in (x)
    assert module_equal(syz, [_vec("x")])


def test_module_gb_membership():
    gb = ModuleGB(R, 2, [[R.parse("x"), R.parse("y")], [R.parse("z"), R.zero()]])
    assert gb.contains([R.parse("x*z + z^2"), R.parse("y*z")])
    assert not gb.contains([R.parse("y"), R.zero()])


def test_vectors_with_mismatched_rank_rejected():
    with pytest.raises(ValueError):
        syzygies([_vec("x"), _vec("x", "y")])
