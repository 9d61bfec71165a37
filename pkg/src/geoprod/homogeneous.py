"""Reductive splits, subgroup-chain metrics and their algebraic checks.

All vectors are coefficient vectors of the ambient algebra g. Subspaces are
stored as matrices whose columns are Q-orthonormal coefficient vectors, and
projectors act on g-coordinates (they vanish on the complement).
"""
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from .errors import (ChainError, DegenerateMetricError, DomainError,
                     ReductivityError, SignatureError)
from .liealgebra import InvariantForm, LieAlgebra

CHECK_TOL = 1e-11
ORTHO_TOL = 1e-12
DOMAIN_TOL = 1e-11
N_RANDOM = 100


class CheckResult(NamedTuple):
    max_violation: float
    worst_pair: Optional[tuple] = None


def q_orthonormalize(V, G, tol=1e-10):
    """Gram-Schmidt (two passes) of the columns of V under the positive form G.

    Raises SignatureError if G is not positive definite on span(V).
    """
    V = np.asarray(V, dtype=float)
    out = []
    for col in V.T:
        w = col.copy()
        for _ in range(2):
            for u in out:
                w = w - (u @ G @ w) * u
        nrm2 = w @ G @ w
        if nrm2 <= tol * max(1.0, col @ col):
            raise SignatureError("form is not positive definite on the subspace")
        out.append(w / np.sqrt(nrm2))
    return np.column_stack(out) if out else np.zeros((V.shape[0], 0))


def _q_frame(V, G):
    """Q-pseudo-orthonormal frame of span(V) for a form that may be indefinite there."""
    if V.shape[1] == 0:
        return V
    w, U = np.linalg.eigh(V.T @ G @ V)
    if np.abs(w).min() <= ORTHO_TOL:
        raise SignatureError("form is degenerate on the subspace")
    return V @ U / np.sqrt(np.abs(w))


def _is_subalgebra(algebra, indices, tol=CHECK_TOL):
    idx = list(indices)
    if not idx:
        return True
    outside = np.setdiff1d(np.arange(algebra.dim), idx)
    c = algebra.structure_constants[np.ix_(idx, idx, outside)]
    return np.abs(c).max(initial=0.0) <= tol


@dataclass(frozen=True, eq=False)
class SubalgebraChain:
    """h_0 < h_1 < ... < h_N = g, each level a set of basis indices of g."""

    algebra: LieAlgebra
    levels: tuple

    def __post_init__(self):
        levels = tuple(tuple(sorted(int(a) for a in lv)) for lv in self.levels)
        if len(levels) < 2:
            raise ChainError("a chain needs at least h_0 and h_N = g")
        if set(levels[-1]) != set(range(self.algebra.dim)):
            raise ChainError("the last level of a chain must be the whole algebra")
        for lo, hi in zip(levels, levels[1:]):
            if not set(lo) < set(hi):
                raise ChainError(f"levels are not strictly increasing: {lo} -> {hi}")
        for lv in levels:
            if not _is_subalgebra(self.algebra, lv):
                raise ChainError(f"level {lv} is not closed under the bracket")
        object.__setattr__(self, "levels", levels)

    @property
    def N(self):
        return len(self.levels) - 1


@dataclass(frozen=True, eq=False)
class ReductiveSplit:
    """g = h + m with m the Q-orthogonal complement of h."""

    Q: InvariantForm
    h_basis: np.ndarray = field(repr=False)
    m_basis: np.ndarray = field(repr=False)

    @property
    def algebra(self):
        return self.Q.algebra

    @cached_property
    def proj_m(self):
        M = self.m_basis
        return M @ M.T @ self.Q.gram

    @cached_property
    def proj_h(self):
        return np.eye(self.algebra.dim) - self.proj_m

    @cached_property
    def abs_gram(self):
        # positive definite companion of Q, used for norms
        w, U = np.linalg.eigh(self.Q.gram)
        return (U * np.abs(w)) @ U.T

    def norm(self, x):
        x = np.asarray(x, dtype=float)
        return float(np.sqrt(max(x @ self.abs_gram @ x, 0.0)))

    def to_m(self, x):
        """Project ``x`` to m."""
        return self.proj_m @ x

    def h_component(self, x):
        return self.proj_h @ x

    def reductivity_violation(self):
        """max over basis pairs a in h, x in m of |[a, x]_h|."""
        worst = 0.0
        alg = self.algebra
        for a in self.h_basis.T:
            Z = self.proj_h @ alg.ad_matrix(a) @ self.m_basis
            if Z.size:
                worst = max(worst, max(self.norm(z) for z in Z.T))
        return worst

    def orthogonality_violation(self):
        if self.h_basis.size == 0 or self.m_basis.size == 0:
            return 0.0
        return float(np.abs(self.h_basis.T @ self.Q.gram @ self.m_basis).max())


def _complement_in(Q, sub, ambient):
    """Q-orthonormal basis of the Q-orthogonal complement of span(sub) inside span(ambient)."""
    if sub.shape[1] == 0:
        C = ambient
    else:
        K = scipy.linalg.null_space(sub.T @ Q.gram @ ambient)
        C = ambient @ K
    return q_orthonormalize(C, Q.gram)


def _span_of_indices(dim, indices):
    return np.eye(dim)[:, list(indices)]


def reductive_split(algebra, h_indices, Q):
    """Split g into h (spanned by basis elements ``h_indices``) and its Q-complement m."""
    if Q.algebra is not algebra:
        raise ValueError("form and algebra differ")
    d = algebra.dim
    if not _is_subalgebra(algebra, h_indices):
        raise ChainError("h is not a subalgebra")
    H = _span_of_indices(d, sorted(h_indices))
    h_basis = _q_frame(H, Q.gram)
    m_basis = _complement_in(Q, h_basis, np.eye(d))
    split = ReductiveSplit(Q, h_basis, m_basis)
    if split.orthogonality_violation() > ORTHO_TOL:
        raise SignatureError("Q(h, m) != 0")
    viol = split.reductivity_violation()
    if viol > CHECK_TOL:
        raise ReductivityError(f"[h, m] is not contained in m (violation {viol:.2e})")
    return split


@dataclass(frozen=True, eq=False)
class ChainMetric:
    """Metric endomorphism A = sum_i lambda_i Id|m_i on m = m_1 + ... + m_N.

    ``eigenspaces[0]`` is m_1, the complement of h_{N-1} in g; the last entry
    is m_N, the complement of h_0 in h_1.
    """

    split: ReductiveSplit
    eigenspaces: tuple
    lambdas: tuple
    hand_assembled: bool = False

    def __post_init__(self):
        lams = tuple(float(x) for x in self.lambdas)
        spaces = tuple(np.asarray(E, dtype=float) for E in self.eigenspaces)
        if len(lams) != len(spaces):
            raise ChainError(f"{len(spaces)} eigenspaces but {len(lams)} lambdas")
        if not lams:
            raise ChainError("need at least one eigenspace")
        if any(x == 0.0 or not np.isfinite(x) for x in lams):
            raise DegenerateMetricError("degenerate metric: every lambda must be finite and nonzero")
        for a, b in zip(lams, lams[1:]):
            if a == b:
                warnings.warn("equal adjacent lambdas; the decomposition is coarser than the eigenspaces",
                              stacklevel=3)
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "eigenspaces", spaces)
        G = self.split.Q.gram
        for i, E in enumerate(spaces):
            if np.abs(E.T @ G @ E - np.eye(E.shape[1])).max(initial=0.0) > 1e-10:
                raise ChainError(f"eigenspace {i + 1} basis is not Q-orthonormal")
        if self.m_basis.shape[1] != self.split.m_basis.shape[1]:
            raise ChainError("eigenspace dimensions do not add up to dim m")
        if np.abs(self.split.proj_h @ self.m_basis).max(initial=0.0) > DOMAIN_TOL:
            raise ChainError("eigenspaces are not contained in m")
        if self.orthogonality_violation() > 1e-10:
            raise ChainError("eigenspaces are not pairwise Q-orthogonal")

    @property
    def N(self):
        return len(self.lambdas)

    @property
    def algebra(self):
        return self.split.algebra

    @cached_property
    def m_basis(self):
        """Canonical ordered basis of m: eigenspace bases m_1, ..., m_N concatenated."""
        return np.hstack(self.eigenspaces)

    @property
    def dims(self):
        return tuple(E.shape[1] for E in self.eigenspaces)

    @cached_property
    def projectors(self):
        G = self.split.Q.gram
        return tuple(E @ E.T @ G for E in self.eigenspaces)

    @cached_property
    def A(self):
        """A as a dim(g) x dim(g) matrix (zero on h)."""
        return sum(lam * P for lam, P in zip(self.lambdas, self.projectors))

    @cached_property
    def A_inv(self):
        return sum(P / lam for lam, P in zip(self.lambdas, self.projectors))

    def from_m_coords(self, c):
        """g-coordinates of the m-vector with coefficients ``c`` in the canonical m basis."""
        c = np.asarray(c, dtype=float)
        if c.shape != (self.m_basis.shape[1],):
            raise DomainError(f"expected {self.m_basis.shape[1]} m-coefficients, got {c.shape}")
        return self.m_basis @ c

    def to_m_coords(self, v):
        return self.m_basis.T @ self.split.Q.gram @ np.asarray(v, dtype=float)

    def orthogonality_violation(self):
        G = self.split.Q.gram
        worst = 0.0
        for i, Ei in enumerate(self.eigenspaces):
            for Ej in self.eigenspaces[i + 1:]:
                if Ei.size and Ej.size:
                    worst = max(worst, float(np.abs(Ei.T @ G @ Ej).max()))
        return worst

    @classmethod
    def from_eigenspaces(cls, split, spans, lambdas):
        """Hand-assemble a decomposition from spanning vectors of each m_i (not checked for the bracket condition)."""
        G = split.Q.gram
        spaces = []
        for S in spans:
            S = np.asarray(S, dtype=float)
            spaces.append(q_orthonormalize(S[:, None] if S.ndim == 1 else S, G))
        return cls(split, tuple(spaces), tuple(lambdas), hand_assembled=True)


def _require_m(cm, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (cm.algebra.dim,):
        raise DomainError(f"expected a vector of length {cm.algebra.dim}")
    if cm.split.norm(cm.split.h_component(v)) > DOMAIN_TOL * max(1.0, cm.split.norm(v)):
        raise DomainError("vector has a nontrivial h-component")
    return v


def apply_A(cm, v):
    return cm.A @ _require_m(cm, v)


def apply_A_inv(cm, v):
    return cm.A_inv @ _require_m(cm, v)


def project_i(cm, i, v):
    """pi_i(v), with ``i`` the 0-based eigenspace index."""
    return cm.projectors[i] @ _require_m(cm, v)


def base_inner(split, v, w):
    return split.Q(v, w)


def metric_inner(cm, v, w):
    return cm.split.Q(apply_A(cm, v), _require_m(cm, w))


def build_chain_metric(chain, Q, lambdas):
    """N-parameter metric of the chain h_0 < ... < h_N = g.

    The complement of h_{i-1} in h_i becomes m_{N-i+1}; A scales it by
    lambda_{N-i+1}.
    """
    lambdas = tuple(lambdas)
    if len(lambdas) != chain.N:
        raise ChainError(f"chain has {chain.N} steps but {len(lambdas)} lambdas were given")
    if any(float(x) == 0.0 for x in lambdas):
        raise DegenerateMetricError("degenerate metric: lambda = 0")
    alg = chain.algebra
    d = alg.dim
    split = reductive_split(alg, chain.levels[0], Q)
    N = chain.N
    spaces = [None] * N
    prev = split.h_basis
    for i in range(1, N + 1):
        ambient = _span_of_indices(d, chain.levels[i])
        spaces[N - i] = _complement_in(Q, prev, ambient)
        prev = _q_frame(ambient, Q.gram)
    cm = ChainMetric(split, tuple(spaces), lambdas)
    res = check_bracket_condition(cm)
    if res.max_violation > CHECK_TOL:
        raise ChainError(f"bracket condition fails on chain metric (violation {res.max_violation:.2e})")
    if check_h_invariance(cm).max_violation > CHECK_TOL:
        raise ChainError("eigenspaces are not ad(h)-invariant")
    return cm


def check_natural_reductivity(split):
    """Sweep <[X,Y]_m, Z>_0 + <Y, [X,Z]_m>_0 over basis triples of m."""
    alg = split.algebra
    G = split.Q.gram
    M = split.m_basis
    worst = 0.0
    for x in M.T:
        B = split.proj_m @ alg.ad_matrix(x) @ M  # columns [x, y_j]_m
        S = M.T @ G @ B  # S[k, j] = <z_k, [x, y_j]_m>
        worst = max(worst, float(np.abs(S + S.T).max(initial=0.0)))
    return CheckResult(worst)


def check_bracket_condition(cm):
    """Largest component of [m_i, m_j] (i < j) outside m_i, with the worst (i, j) 1-based."""
    alg = cm.algebra
    worst, pair = 0.0, None
    for i, Ei in enumerate(cm.eigenspaces):
        out_i = np.eye(alg.dim) - cm.projectors[i]
        for j in range(i + 1, cm.N):
            for x in Ei.T:
                R = out_i @ alg.ad_matrix(x) @ cm.eigenspaces[j]
                for r in R.T:
                    nr = cm.split.norm(r)
                    if pair is None or nr > worst:
                        worst, pair = nr, (i + 1, j + 1)
    return CheckResult(worst, pair)


def check_h_invariance(cm):
    """max |[a, x] outside m_i| for a in h, x in m_i."""
    alg = cm.algebra
    worst = 0.0
    for i, Ei in enumerate(cm.eigenspaces):
        out_i = np.eye(alg.dim) - cm.projectors[i]
        for a in cm.split.h_basis.T:
            R = out_i @ alg.ad_matrix(a) @ Ei
            for r in R.T:
                worst = max(worst, cm.split.norm(r))
    return CheckResult(worst)


def check_ad_h_skew(split):
    """<[a,X],Y>_0 + <X,[a,Y]>_0 for a in h and X, Y in m."""
    G = split.Q.gram
    M = split.m_basis
    worst = 0.0
    for a in split.h_basis.T:
        S = M.T @ G @ split.algebra.ad_matrix(a) @ M
        worst = max(worst, float(np.abs(S + S.T).max(initial=0.0)))
    return CheckResult(worst)


def check_A_equivariance(cm):
    """|A ad(a) - ad(a) A| on m for a in h."""
    worst = 0.0
    M = cm.m_basis
    for a in cm.split.h_basis.T:
        ad = cm.split.proj_m @ cm.algebra.ad_matrix(a)
        D = (cm.A @ ad - ad @ cm.A) @ M
        worst = max(worst, float(np.abs(D).max(initial=0.0)))
    return CheckResult(worst)


def check_A_symmetry(cm):
    G = cm.split.Q.gram
    M = cm.m_basis
    S = M.T @ G @ cm.A @ M
    return CheckResult(float(np.abs(S - S.T).max(initial=0.0)))


def check_decomposition(cm):
    """m = m_1 + ... + m_N as a Q-orthogonal direct sum: max |M^T Q M - I| over the union of bases."""
    M = cm.m_basis
    if M.shape[1] != cm.split.m_basis.shape[1]:
        return CheckResult(float("inf"))
    D = M.T @ cm.split.Q.gram @ M - np.eye(M.shape[1])
    return CheckResult(float(np.abs(D).max(initial=0.0)))


def check_lem2(cm, X, W):
    """|<X_m, [W, X]_m> - <X_m, [W_m, X]_m>| in the metric of ``cm``."""
    alg = cm.algebra
    P = cm.split.proj_m
    Xm = P @ X
    lhs = metric_inner(cm, Xm, P @ alg.bracket(W, X))
    rhs = metric_inner(cm, Xm, P @ alg.bracket(P @ W, X))
    return abs(lhs - rhs)


def random_m_vectors(cm_or_split, count=N_RANDOM, seed=42):
    """Seeded random vectors in m (g-coordinates)."""
    M = cm_or_split.m_basis
    rng = np.random.default_rng(seed)
    return rng.standard_normal((count, M.shape[1])) @ M.T
