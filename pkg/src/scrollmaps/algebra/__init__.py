from .field import GF, QQ, Field, FieldError, is_prime, random_prime
from .orders import GREVLEX, LEX, MonomialOrder, compare_monomials, elim
from .ring import Poly, PolyRing, RingError, format_poly, parse_poly

__all__ = [
    "GF", "QQ", "Field", "FieldError", "is_prime", "random_prime",
    "GREVLEX", "LEX", "MonomialOrder", "compare_monomials", "elim",
    "Poly", "PolyRing", "RingError", "format_poly", "parse_poly",
]
