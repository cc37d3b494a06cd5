"""Exact and numerical toolkit for KZ systems over symmetric-group residues."""

from .exactalg import (
    GaussianRational,
    Matrix,
    Vector,
    char_poly,
    determinant,
    integer_eigenvalues,
    nullspace,
    parse_scalar,
    solve_affine,
)
from .symrep import (
    plus_minus_matrices,
    s_matrix,
    star_generators,
    t_matrix,
    t_spectrum,
    transposition_matrix,
)
from .kzcore import KZSystem, eval_A, local_coefficients, new_system
from .frobenius import (
    LocalSeries,
    SeriesFamily,
    exponent_window,
    frobenius_solve,
    laurent_of_rational,
    recursion_defect,
)
from .ansatz import (
    ConditionReport,
    RationalVectorFunction,
    check_conditions,
    in_span,
    residual,
    solve_ansatz,
)
from .s4explicit import (
    FundamentalSolution,
    IndependenceCertificate,
    S4Coefficients,
    fundamental_matrix,
    independence_certificate,
    y1,
    y2,
    y3,
    y4,
)
from .numverify import (
    MonodromyResult,
    Path,
    integrate,
    monodromy,
    residual_scan,
)

__all__ = [
    "GaussianRational",
    "Matrix",
    "Vector",
    "char_poly",
    "determinant",
    "integer_eigenvalues",
    "nullspace",
    "parse_scalar",
    "solve_affine",
    "plus_minus_matrices",
    "s_matrix",
    "star_generators",
    "t_matrix",
    "t_spectrum",
    "transposition_matrix",
    "KZSystem",
    "eval_A",
    "local_coefficients",
    "new_system",
    "LocalSeries",
    "SeriesFamily",
    "exponent_window",
    "frobenius_solve",
    "laurent_of_rational",
    "recursion_defect",
    "ConditionReport",
    "RationalVectorFunction",
    "check_conditions",
    "in_span",
    "residual",
    "solve_ansatz",
    "FundamentalSolution",
    "IndependenceCertificate",
    "S4Coefficients",
    "fundamental_matrix",
    "independence_certificate",
    "y1",
    "y2",
    "y3",
    "y4",
    "MonodromyResult",
    "Path",
    "integrate",
    "monodromy",
    "residual_scan",
]

__version__ = "0.1.0"
