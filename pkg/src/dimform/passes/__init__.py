"""Transform, factorize and normalize passes over form expressions."""
from .errors import (
    AlreadyTransformedError,
    DimensionalMismatchAcrossTerms,
    InconsistentDimensions,
    InconsistentFactors,
    NonHomogeneousArgument,
    PassError,
    UnknownQuantityError,
    UnknownReferenceTerm,
    UnmappedTerminalError,
)
from .factorize import FactorizedTerm, factorize, factorize_terms, get_dimension
from .normalize import NormalizedGroup, NormalizedTerm, normalize, normalize_multi
from .transform import Mapping, transform

__all__ = [
    "AlreadyTransformedError",
    "DimensionalMismatchAcrossTerms",
    "FactorizedTerm",
    "InconsistentDimensions",
    "InconsistentFactors",
    "Mapping",
    "NonHomogeneousArgument",
    "NormalizedGroup",
    "NormalizedTerm",
    "PassError",
    "UnknownQuantityError",
    "UnknownReferenceTerm",
    "UnmappedTerminalError",
    "factorize",
    "factorize_terms",
    "get_dimension",
    "normalize",
    "normalize_multi",
    "transform",
]
