"""Dimensional analysis and nondimensionalization of variational-form expressions."""
from .dimension import DIMENSIONLESS, Dimension, dim_is_dimensionless, dim_mul, dim_pow
from .units import Quantity, Unit, dims_equivalent, make_quantity, parse_unit
from .pi import PiGroup, buckingham_pi, dimensional_matrix
from .linalg import nullspace_rational
from .passes import (
    Mapping,
    factorize,
    factorize_terms,
    get_dimension,
    normalize,
    normalize_multi,
    transform,
)

__version__ = "0.1.0"

__all__ = [
    "DIMENSIONLESS",
    "Dimension",
    "Mapping",
    "PiGroup",
    "Quantity",
    "Unit",
    "buckingham_pi",
    "dim_is_dimensionless",
    "dim_mul",
    "dim_pow",
    "dimensional_matrix",
    "dims_equivalent",
    "factorize",
    "factorize_terms",
    "get_dimension",
    "make_quantity",
    "normalize",
    "normalize_multi",
    "nullspace_rational",
    "parse_unit",
    "transform",
]
