"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from cmcubics import PolyRing


def polynomials(ring: PolyRing, max_terms: int = 4, max_exp: int = 3, coeff_range: int = 5):
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mono, st.integers(-coeff_range, coeff_range), max_size=max_terms).map(ring.from_dict)


def homogeneous_polynomials(ring: PolyRing, degree: int, max_terms: int = 4, coeff_range: int = 5):
    monos = ring.monomials_of_degree(degree)
    return st.dictionaries(st.sampled_from(monos), st.integers(-coeff_range, coeff_range),
                           min_size=1, max_size=max_terms).map(ring.from_dict)


def homogeneous_ideal_generators(ring: PolyRing, degrees=(1, 2, 3), max_gens: int = 3):
    return st.lists(st.sampled_from(degrees).flatmap(lambda d: homogeneous_polynomials(ring, d)),
                    min_size=1, max_size=max_gens).filter(lambda gs: any(gs))
