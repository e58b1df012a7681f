"""Exact polynomial algebra for Cohen-Macaulay twisted cubics."""

from .polyring import (GF, QQ, DEGREVLEX, LEX, Field, MonomialOrder, PolyMatrix,
                       PolyRing, Polynomial, RingMismatchError, minors,
                       partial_derivatives, poly_arith, substitute)
from .groebner import (FreeModuleVector, Ideal, buchberger, ideal_equal,
                       normal_form, syzygies, syzygies_modulo)

__version__ = "0.1.0"
