"""Dense real matrix numerics.

Thin, validated wrappers over numpy/scipy. Every function is pure and
accepts anything ``np.asarray`` understands.
"""
import numpy as np
import scipy.linalg

from .errors import BranchError, DimensionError, SymmetryError

# Symmetry tolerance for eig_sym, relative to max(1, |S|_max).
SYM_TOL = 1e-12
# Eigenvalues of mat_log input closer than this to the negative real axis
# are treated as lying on it.
BRANCH_TOL = 1e-12


def as_matrix(M, square=False):
    """Return ``M`` as a finite 2-d float array, optionally checking squareness."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DimensionError("matrix has non-finite entries")
    return A


def mat_exp(M):
    """Matrix exponential (scaling and squaring with a degree-13 Pade core)."""
    return scipy.linalg.expm(as_matrix(M, square=True))


def mat_log(M):
    """Principal matrix logarithm.

    Raises BranchError if ``M`` has an eigenvalue on the closed negative
    real axis, where the principal branch is undefined.
    """
    A = as_matrix(M, square=True)
    ev = np.linalg.eigvals(A)
    scale = max(1.0, np.abs(ev).max(initial=0.0))
    on_axis = (np.abs(ev.imag) <= BRANCH_TOL * scale) & (ev.real <= BRANCH_TOL * scale)
    if np.any(on_axis):
        raise BranchError("eigenvalue on the closed negative real axis; no principal log")
    L = scipy.linalg.logm(A)
    return np.real(L)


def eig_sym(S):
    """Eigen-decomposition of a symmetric matrix.

    Returns ``(w, V)`` with ``w`` ascending and ``V`` orthonormal,
    so that ``S @ V == V @ diag(w)``.
    """
    A = as_matrix(S, square=True)
    scale = max(1.0, np.abs(A).max(initial=0.0))
    if np.abs(A - A.T).max(initial=0.0) > SYM_TOL * scale:
        raise SymmetryError("matrix is not symmetric")
    return np.linalg.eigh(0.5 * (A + A.T))


def solve(A, b):
    return np.linalg.solve(as_matrix(A, square=True), np.asarray(b, dtype=float))


def fd_derivative(curve, t, h=1e-4):
    """Central difference ``(curve(t+h) - curve(t-h)) / 2h``.

    Truncation error is O(h**2) for smooth curves; roundoff grows like
    eps/h, so h around 1e-4 to 1e-5 is the useful range in double precision.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    return (np.asarray(curve(t + h)) - np.asarray(curve(t - h))) / (2.0 * h)

