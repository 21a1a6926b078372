"""Exact arithmetic foundation: polynomials, resultants, Sturm counts, finite fields."""
from .finite_field import FiniteField, FiniteFieldElement, euler_witness, ff_is_square, is_irreducible_mod_p
from .integers import is_squarefree_integer, legendre, least_nonresidue
from .poly import (
    IntPolynomial,
    RatPolynomial,
    cyclotomic,
    graeffe,
    is_squarefree,
    make_poly,
    parse_polynomial,
    poly_discriminant,
    poly_gcd,
    poly_resultant,
    real_root_count,
    squarefree_part,
    sturm_count,
)
from .roots import RealAlgebraic, RootDisks, certified_roots

__all__ = [
    "FiniteField",
    "FiniteFieldElement",
    "IntPolynomial",
    "RatPolynomial",
    "RealAlgebraic",
    "RootDisks",
    "certified_roots",
    "cyclotomic",
    "euler_witness",
    "ff_is_square",
    "graeffe",
    "is_irreducible_mod_p",
    "is_squarefree",
    "is_squarefree_integer",
    "least_nonresidue",
    "legendre",
    "make_poly",
    "parse_polynomial",
    "poly_discriminant",
    "poly_gcd",
    "poly_resultant",
    "real_root_count",
    "squarefree_part",
    "sturm_count",
]
