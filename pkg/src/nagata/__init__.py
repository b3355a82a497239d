"""Exact lattice arithmetic for Nagata's conjecture on blow-ups of the plane."""

from .errors import (
    DimensionMismatchError,
    InstabilityError,
    InternalError,
    NagataError,
    ParseError,
    ValidationError,
)
from .lattice import (
    ClassVector,
    NagataGap,
    Ray,
    SurdSum,
    arithmetic_genus,
    canonical_class,
    expected_dimension,
    format_class,
    intersect,
    k_pairing,
    nagata_gap,
    parse_class,
    primitive_normalize,
    surd_compare,
    virtual_dimension,
)

__version__ = "0.1.0"
SCHEMA = "nagata/1"

__all__ = [
    "__version__",
    "SCHEMA",
    "ClassVector",
    "NagataGap",
    "Ray",
    "SurdSum",
    "arithmetic_genus",
    "canonical_class",
    "expected_dimension",
    "format_class",
    "intersect",
    "k_pairing",
    "nagata_gap",
    "parse_class",
    "primitive_normalize",
    "surd_compare",
    "virtual_dimension",
    "NagataError",
    "DimensionMismatchError",
    "ParseError",
    "ValidationError",
    "InstabilityError",
    "InternalError",
]
