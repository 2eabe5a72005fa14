"""Constructive derivation, machine verification, and recursive application
of rank-7 bilinear 2x2 matrix multiplication over exact fields."""

from .construction import (
    BilinearDecomposition,
    PerpPair,
    Provenance,
    Rotation,
    StrassenBasis,
    Term,
    build_basis,
    coordinates,
    default_rotation,
    default_u,
    derive_decomposition,
    perp_vector,
    standard_units,
    validate_rotation,
)
from .engine import (
    EngineConfig,
    MatN,
    OpCounter,
    apply_decomposition_2x2,
    bench,
    classical_multiply,
    float_decomposition,
    strassen_multiply,
)
from .fields import (
    FLOAT64,
    RATIONAL,
    Field,
    FieldElement,
    Float64,
    PrimeField,
    Rationals,
    parse_field,
)
from .fileformat import format_matrix, parse, parse_matrix, serialize
from .linalg import ColVec2, Mat2, RowVec2, SquareSystem, outer, solve
from .verification import (
    VerificationReport,
    count_seven_distinct,
    verify_bilinear_identity,
    verify_exhaustive_gf,
    verify_multiplication_table,
    verify_trilinear,
)

__all__ = [
    "BilinearDecomposition",
    "ColVec2",
    "EngineConfig",
    "FLOAT64",
    "Field",
    "FieldElement",
    "Float64",
    "MatN",
    "Mat2",
    "OpCounter",
    "PerpPair",
    "PrimeField",
    "Provenance",
    "RATIONAL",
    "Rationals",
    "Rotation",
    "RowVec2",
    "SquareSystem",
    "StrassenBasis",
    "Term",
    "VerificationReport",
    "apply_decomposition_2x2",
    "bench",
    "build_basis",
    "classical_multiply",
    "coordinates",
    "count_seven_distinct",
    "default_rotation",
    "default_u",
    "derive_decomposition",
    "float_decomposition",
    "format_matrix",
    "outer",
    "parse",
    "parse_field",
    "parse_matrix",
    "perp_vector",
    "serialize",
    "solve",
    "standard_units",
    "strassen_multiply",
    "validate_rotation",
    "verify_bilinear_identity",
    "verify_exhaustive_gf",
    "verify_multiplication_table",
    "verify_trilinear",
]

__version__ = "0.1.0"
