"""Matrix Lie algebras: bases, brackets, adjoint representations, invariant forms.

Algebra elements are plain coefficient vectors (1-d float arrays of length
``dim``) over the fixed matrix basis of a :class:`LieAlgebra`. Group
elements are plain square matrices.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import numkernel
from .errors import AlgebraError, ClosureError, DimensionError, UnsupportedError

CLOSURE_TOL = 1e-12
AD_CLOSURE_TOL = 1e-11
FORM_TOL = 1e-12


class LieAlgebra:
    """A real matrix Lie algebra given by a basis of square matrices.

    Structure constants ``c[i, j, k]`` satisfy ``[E_i, E_j] = sum_k c[i, j, k] E_k``.
    """

    def __init__(self, name, basis):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise DimensionError("basis must be a stack of square matrices")
        self.name = name
        self.basis = basis
        self.basis.setflags(write=False)
        self.dim = basis.shape[0]
        self.size = basis.shape[1]
        flat = basis.reshape(self.dim, -1)
        if np.linalg.matrix_rank(flat) < self.dim:
            raise AlgebraError(f"{name}: basis matrices are linearly dependent")
        self._flat = flat
        self._pinv = np.linalg.pinv(flat)  # (n*n, dim)

        c = np.zeros((self.dim, self.dim, self.dim))
        for i in range(self.dim):
            for j in range(self.dim):
                B = basis[i] @ basis[j] - basis[j] @ basis[i]
                coeffs, resid = self._expand(B)
                if resid > CLOSURE_TOL:
                    raise ClosureError(f"{name}: [E_{i}, E_{j}] leaves the span (residual {resid:.2e})")
                c[i, j] = coeffs
        c = 0.5 * (c - c.transpose(1, 0, 2))
        # pinv leaves ~1e-16 noise on exact (typically integer) constants
        near = np.abs(c - np.round(c)) <= 64 * np.finfo(float).eps
        c[near] = np.round(c[near])
        self.structure_constants = c
        self.structure_constants.setflags(write=False)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def _expand(self, M):
        coeffs = M.reshape(-1) @ self._pinv
        resid = np.abs(M.reshape(-1) - coeffs @ self._flat).max(initial=0.0)
        return coeffs, resid

    def _check(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise AlgebraError(f"vector of shape {x.shape} is not an element of {self.name} (dim {self.dim})")
        if not np.all(np.isfinite(x)):
            raise AlgebraError("non-finite coefficients")
        return x

    def matrix(self, x):
        """Matrix of the algebra element with coefficients ``x``."""
        return np.tensordot(self._check(x), self.basis, axes=1)

    def coords(self, M, tol=AD_CLOSURE_TOL):
        """Coefficients of matrix ``M`` in the basis; ClosureError if ``M`` is outside the span."""
        M = numkernel.as_matrix(M, square=True)
        if M.shape[0] != self.size:
            raise DimensionError(f"{self.name} acts on {self.size}x{self.size} matrices")
        coeffs, resid = self._expand(M)
        if resid > tol * max(1.0, np.abs(M).max(initial=0.0)):
            raise ClosureError(f"matrix is not in {self.name} (residual {resid:.2e})")
        return coeffs

    def bracket(self, x, y):
        return np.einsum("i,j,ijk->k", self._check(x), self._check(y), self.structure_constants)

    def ad_matrix(self, x):
        """Matrix of ad(x) acting on coefficient vectors: ``ad_matrix(x) @ y == bracket(x, y)``."""
        return np.einsum("i,ijk->kj", self._check(x), self.structure_constants)

    def Ad(self, g, x):
        """Adjoint action ``g x g^-1`` of a group element on an algebra element."""
        g = numkernel.as_matrix(g, square=True)
        X = self.matrix(x)
        return self.coords(g @ X @ np.linalg.inv(g))

    def Ad_matrix(self, g):
        """dim x dim matrix of Ad(g) on coefficient vectors."""
        g = numkernel.as_matrix(g, square=True)
        ginv = np.linalg.inv(g)
        return np.column_stack([self.coords(g @ E @ ginv) for E in self.basis])

    def killing_form(self, x, y):
        return float(np.trace(self.ad_matrix(x) @ self.ad_matrix(y)))

    @cached_property
    def killing_gram(self):
        c = self.structure_constants
        # B(E_i, E_j) = sum_{k,l} c[i,l,k] c[j,k,l]
        return np.einsum("ilk,jkl->ij", c, c)

    def one_param(self, x, t):
        """The one-parameter subgroup element exp(t x)."""
        return numkernel.mat_exp(t * self.matrix(x))

    def jacobi_violation(self):
        """Largest Jacobi-identity defect over all basis triples."""
        c = self.structure_constants
        # [[E_i,E_j],E_k] = c_ijl c_lkm E_m
        J = (np.einsum("ijl,lkm->ijkm", c, c)
             + np.einsum("jkl,lim->ijkm", c, c)
             + np.einsum("kil,ljm->ijkm", c, c))
        return float(np.abs(J).max(initial=0.0))


def is_orthogonal_group_element(g, tol=1e-10):
    g = numkernel.as_matrix(g, square=True)
    n = g.shape[0]
    return bool(np.abs(g.T @ g - np.eye(n)).max() <= tol and abs(np.linalg.det(g) - 1.0) <= tol)


@dataclass(frozen=True, eq=False)
class InvariantForm:
    """Symmetric, nondegenerate, ad-invariant bilinear form on an algebra."""

    algebra: LieAlgebra
    gram: np.ndarray = field(repr=False)

    def __post_init__(self):
        G = np.array(self.gram, dtype=float)
        d = self.algebra.dim
        if G.shape != (d, d):
            raise DimensionError(f"gram must be {d}x{d}")
        if np.abs(G - G.T).max(initial=0.0) > FORM_TOL:
            raise AlgebraError("gram matrix is not symmetric")
        if d and np.abs(np.linalg.eigvalsh(G)).min() <= FORM_TOL:
            raise AlgebraError("form is degenerate")
        G.setflags(write=False)
        object.__setattr__(self, "gram", G)

    def __call__(self, x, y):
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def ad_invariance_violation(self):
        """max |Q([E_a,E_i],E_j) + Q(E_i,[E_a,E_j])| over basis triples."""
        worst = 0.0
        for a in np.eye(self.algebra.dim):
            ad = self.algebra.ad_matrix(a)
            worst = max(worst, np.abs(ad.T @ self.gram + self.gram @ ad).max(initial=0.0))
        return float(worst)

    def with_entry(self, i, j, delta):
        """Copy with Q(E_i,E_j) and Q(E_j,E_i) shifted by ``delta`` (used for negative controls)."""
        G = self.gram.copy()
        G[i, j] += delta
        if i != j:
            G[j, i] += delta
        return InvariantForm(self.algebra, G)


def trace_form(algebra):
    """Q(X, Y) = -tr(XY); a positive multiple of minus the Killing form on so(n)."""
    B = algebra.basis
    G = -np.einsum("iab,jba->ij", B, B)
    if algebra.dim and np.abs(np.linalg.eigvalsh(G)).min() <= FORM_TOL:
        raise UnsupportedError(f"-tr(XY) is degenerate on {algebra.name}")
    Q = InvariantForm(algebra, G)
    if Q.ad_invariance_violation() > FORM_TOL:
        raise UnsupportedError(f"-tr(XY) is not ad-invariant on {algebra.name}")
    return Q


def so_pairs(n):
    """Index pairs (i, j), i < j, of the so(n) basis in lexicographic order (0-based)."""
    return list(combinations(range(n), 2))


_SO_CACHE = {}


def catalog_so(n):
    """so(n) with basis E_ij - E_ji, i < j, in lexicographic order."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise DimensionError("so(n) requires integer n >= 2")
    n = int(n)
    if n not in _SO_CACHE:
        pairs = so_pairs(n)
        basis = np.zeros((len(pairs), n, n))
        for a, (i, j) in enumerate(pairs):
            basis[a, i, j] = 1.0
            basis[a, j, i] = -1.0
        _SO_CACHE[n] = LieAlgebra(f"so({n})", basis)
    return _SO_CACHE[n]


def catalog_so_block(n, k):
    """Indices into the so(n) basis spanning so(k) in the lower-right k x k block."""
    if not (2 <= k <= n):
        raise DimensionError(f"so({k}) block needs 2 <= k <= n (n={n})")
    lo = n - k
    return [a for a, (i, j) in enumerate(so_pairs(n)) if i >= lo]


def catalog_trivial(n):
    return []


def so3_generators():
    """Coefficient vectors of L1, L2, L3 in so(3) with [L1, L2] = L3 (cyclic)."""
    # lexicographic basis: e0 = E_01 - E_10, e1 = E_02 - E_20, e2 = E_12 - E_21
    L1 = np.array([0.0, 0.0, -1.0])
    L2 = np.array([0.0, 1.0, 0.0])
    L3 = np.array([-1.0, 0.0, 0.0])
    return L1, L2, L3
