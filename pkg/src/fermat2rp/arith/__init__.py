from .finite_field import FieldTable, FqElt, field_elements, field_table, quadratic_modulus
from .poly import Poly, discriminant, resultant
from .quadratic import QuadElt, quad_norm, quad_pow, quad_trace, roots_in_zphi
from .valuation import INF, as_rat, is_prime, prime_factors, val_q

poly_discriminant = discriminant

__all__ = [
    "INF",
    "FieldTable",
    "FqElt",
    "Poly",
    "QuadElt",
    "as_rat",
    "discriminant",
    "field_elements",
    "field_table",
    "is_prime",
    "poly_discriminant",
    "prime_factors",
    "quad_norm",
    "quad_pow",
    "quad_trace",
    "quadratic_modulus",
    "resultant",
    "roots_in_zphi",
    "val_q",
]
