"""Geodesics through the origin as products of one-parameter subgroups.

Indices of generators and transports are 0-based here: ``X[0]`` is the
first factor of the product exp(t X_1) ... exp(t X_N).
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import numkernel
from .errors import DegenerateMetricError, DomainError, TransportIndexError
from .homogeneous import ChainMetric, DOMAIN_TOL

DEFAULT_TIMES = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0)


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    cm: ChainMetric
    v: np.ndarray = field(repr=False)
    Y: tuple = field(repr=False)
    X: tuple = field(repr=False)


def generators_from_velocity(cm, v):
    """Generators X_1..X_N of the geodesic with initial velocity ``v`` in m.

    X_1 = (1/l_1) sum_k l_k Y_k and, for i >= 2,
    X_i = (l_{i-1} - l_i) / (l_{i-1} l_i) * sum_{k>=i} l_k Y_k, where Y_k = pi_k(v).
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (cm.algebra.dim,):
        raise DomainError(f"velocity must have length {cm.algebra.dim}")
    if cm.split.norm(cm.split.h_component(v)) > DOMAIN_TOL * max(1.0, cm.split.norm(v)):
        raise DomainError("initial velocity must lie in m")
    lam = cm.lambdas
    if any(x == 0.0 for x in lam):
        raise DegenerateMetricError("lambda = 0")
    Y = tuple(P @ v for P in cm.projectors)
    # tails[i] = sum_{k>=i} l_k Y_k
    weighted = [l * y for l, y in zip(lam, Y)]
    tails = list(np.cumsum(weighted[::-1], axis=0)[::-1])
    X = [tails[0] / lam[0]]
    for i in range(1, cm.N):
        coef = (lam[i - 1] - lam[i]) / (lam[i - 1] * lam[i])
        X.append(coef * tails[i])
    return GeneratorSet(cm, v, Y, tuple(X))


class ProductCurve:
    """t -> exp(t X_1) ... exp(t X_N), a lift of the geodesic to the group."""

    def __init__(self, gen):
        self.gen = gen
        self.algebra = gen.cm.algebra
        self._mats = [self.algebra.matrix(x) for x in gen.X]
        self._ads = [self.algebra.ad_matrix(x) for x in gen.X]

    @property
    def N(self):
        return len(self.gen.X)

    def eval(self, t):
        """Coset representative of the geodesic at time ``t``."""
        g = np.eye(self.algebra.size)
        for M in self._mats:
            g = g @ numkernel.mat_exp(t * M)
        return g

    __call__ = eval

    def _Ad_inv_factor(self, k, t):
        # Ad(exp(-t X_k)) = exp(-t ad X_k)
        return numkernel.mat_exp(-t * self._ads[k])

    def transport_matrix(self, i, j, t):
        """T_i^j(t) = Ad((exp(t X_{i+1}) ... exp(t X_j))^-1) as a dim x dim matrix."""
        if not (0 <= i <= j < self.N):
            raise TransportIndexError(f"need 0 <= i <= j < N, got i={i}, j={j}, N={self.N}")
        T = np.eye(self.algebra.dim)
        for k in range(i + 1, j + 1):
            T = self._Ad_inv_factor(k, t) @ T
        return T

    def transport_family(self, t):
        """[T_0^{N-1}(t), ..., T_{N-1}^{N-1}(t)], sharing partial products."""
        N = self.N
        fam = [None] * N
        fam[N - 1] = np.eye(self.algebra.dim)
        for i in range(N - 2, -1, -1):
            fam[i] = fam[i + 1] @ self._Ad_inv_factor(i + 1, t)
        return fam


def transport(pc, i, j, t, X):
    return pc.transport_matrix(i, j, t) @ np.asarray(X, dtype=float)


@dataclass(frozen=True)
class LiftSample:
    t: float
    omega: np.ndarray
    omega_dot: np.ndarray
    F: np.ndarray
    F_dot: np.ndarray


def _transported(pc, t):
    TX = [T @ x for T, x in zip(pc.transport_family(t), pc.gen.X)]
    tails = list(np.cumsum(TX[::-1], axis=0)[::-1])
    return TX, tails


def maurer_cartan(pc, t):
    """omega = alpha^-1 alpha' and its derivative, from the transported generators."""
    alg = pc.algebra
    cm = pc.gen.cm
    TX, tails = _transported(pc, t)
    omega = tails[0]
    omega_dot = sum(alg.bracket(a, s) for a, s in zip(TX, tails))
    P = cm.split.proj_m
    return LiftSample(t, omega, omega_dot, cm.A @ (P @ omega), cm.A @ (P @ omega_dot))


class LaxResidual(NamedTuple):
    full: float
    mod_h: float


def lax_residual(cm, pc, t):
    """Norms of F' - [F, omega] and of its m-component."""
    s = maurer_cartan(pc, t)
    r = s.F_dot - cm.algebra.bracket(s.F, s.omega)
    return LaxResidual(cm.split.norm(r), cm.split.norm(cm.split.proj_m @ r))


def gelan_residual(cm, pc, t):
    """m-part of sum_i A[T_i X_i, sum_{k>=i} T_k X_k]_m - [A sum_i (T_i X_i)_m, sum_k T_k X_k]."""
    alg = cm.algebra
    P = cm.split.proj_m
    TX, tails = _transported(pc, t)
    left = sum(cm.A @ (P @ alg.bracket(a, s)) for a, s in zip(TX, tails))
    right = alg.bracket(cm.A @ (P @ sum(TX)), tails[0])
    return cm.split.norm(P @ (left - right))


def energy(cm, pc, t):
    s = maurer_cartan(pc, t)
    wm = cm.split.proj_m @ s.omega
    return cm.split.Q(cm.A @ wm, wm)


def geodesic(cm, v):
    """Shorthand: product curve for initial velocity ``v`` (g-coordinates)."""
    return ProductCurve(generators_from_velocity(cm, v))
