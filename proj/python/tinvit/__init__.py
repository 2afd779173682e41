"""Eigenvectors of symmetric tridiagonal matrices by inverse iteration."""

from ._core import (
    Backend,
    CwyVariant,
    DegenerateVectorError,
    EigenvalueEstimates,
    EigenvectorResult,
    OpCounters,
    SymTridiagonal,
    bisect_eigenvalues,
    cwy_orthogonalize,
    find_clusters,
    gen_glued_wilkinson,
    gen_type1,
    gen_type2,
    householder_orthogonalize,
    inverse_iteration,
    make_reflector,
    mgs_orthogonalize,
    orthogonality_deviation,
    sturm_count,
)

__all__ = [
    "Backend",
    "CwyVariant",
    "DegenerateVectorError",
    "EigenvalueEstimates",
    "EigenvectorResult",
    "OpCounters",
    "SymTridiagonal",
    "bisect_eigenvalues",
    "cwy_orthogonalize",
    "find_clusters",
    "gen_glued_wilkinson",
    "gen_type1",
    "gen_type2",
    "householder_orthogonalize",
    "inverse_iteration",
    "make_reflector",
    "mgs_orthogonalize",
    "orthogonality_deviation",
    "sturm_count",
]
