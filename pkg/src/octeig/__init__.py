"""Octonionic arithmetic and eigenvalue problems for Hermitian matrices."""

from .errors import (
    DivisionByZero,
    InadmissibleLambda,
    NotInA,
    NotInV,
    OctonionError,
    ParseError,
    ShapeMismatch,
    TableInvalid,
    VersionUnsupported,
)
from .linalg import Hermitian2Params, Hermitian3Params, matrix, vector
from .octonion import (
    DEFAULT_TOL,
    TABLE,
    Octonion,
    Tolerance,
    associator,
    basis,
    build_table,
    commutator,
    conj,
    dot,
    format_octonion,
    im,
    inverse,
    mul,
    norm,
    parse,
    re,
    unit_complex,
)

__all__ = [
    "DEFAULT_TOL",
    "DivisionByZero",
    "Hermitian2Params",
    "Hermitian3Params",
    "InadmissibleLambda",
    "NotInA",
    "NotInV",
    "Octonion",
    "OctonionError",
    "ParseError",
    "ShapeMismatch",
    "TABLE",
    "TableInvalid",
    "Tolerance",
    "VersionUnsupported",
    "associator",
    "basis",
    "build_table",
    "commutator",
    "conj",
    "dot",
    "format_octonion",
    "im",
    "inverse",
    "matrix",
    "mul",
    "norm",
    "parse",
    "re",
    "unit_complex",
    "vector",
]
