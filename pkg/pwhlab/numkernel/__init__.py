from pwhlab.numkernel.linalg import (
    CholeskyVerdict,
    as_matrix,
    as_sym_matrix,
    as_vector,
    cholesky_pd,
    is_diagonal,
    is_skew,
    is_symmetric,
    pd_tolerance,
    solve_linear,
    spectral_abscissa,
    sym_eig_extremes,
)

__all__ = [
    "CholeskyVerdict",
    "as_matrix",
    "as_sym_matrix",
    "as_vector",
    "cholesky_pd",
    "is_diagonal",
    "is_skew",
    "is_symmetric",
    "pd_tolerance",
    "solve_linear",
    "spectral_abscissa",
    "sym_eig_extremes",
]
