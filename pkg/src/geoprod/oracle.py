"""Independent check of closed-form geodesics by integrating the geodesic ODE.

The lift is fixed in the horizontal gauge (omega has no h-part), so the
geodesic equation becomes the first-order system

    omega' = A^-1 [A omega, omega]_m,    alpha' = alpha * omega,

integrated with classical fixed-step RK4 in ambient matrix space.
"""
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ComparisonError, ConfigError

STABILITY = 0.1


@dataclass(frozen=True)
class OdeConfig:
    step: float = 1e-3
    t_max: float = 2.0
    record_every: int = 1
    reortho_every: int = 100

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError("step must be positive")
        if self.t_max < 0:
            raise ConfigError("t_max must be non-negative")
        if self.record_every < 1 or self.reortho_every < 1:
            raise ConfigError("record_every and reortho_every must be >= 1")


@dataclass(frozen=True, eq=False)
class OdePath:
    ts: np.ndarray
    alphas: np.ndarray = field(repr=False)
    omegas: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class OrbitMap:
    """g -> g[:, anchored] realizes gH when H is the stabilizer of those columns."""

    size: int
    anchored: tuple

    @classmethod
    def from_split(cls, split, tol=1e-11):
        # columns killed by every h-basis matrix are fixed by exp(h)
        alg = split.algebra
        mats = [alg.matrix(a) for a in split.h_basis.T]
        cols = tuple(c for c in range(alg.size)
                     if all(np.abs(M[:, c]).max() <= tol for M in mats))
        return cls(alg.size, cols)

    def __call__(self, g):
        return np.asarray(g)[:, list(self.anchored)]


def integrate_horizontal(cm, v, cfg=OdeConfig()):
    alg = cm.algebra
    v = np.asarray(v, dtype=float)
    speed = cm.split.norm(v)
    if cfg.step * speed > STABILITY:
        raise ConfigError(f"step * |v| = {cfg.step * speed:.3g} exceeds {STABILITY}")
    A, A_inv, P = cm.A, cm.A_inv, cm.split.proj_m
    C = alg.structure_constants.reshape(alg.dim * alg.dim, alg.dim)
    basis = alg.basis

    def br(x, y):
        return np.outer(x, y).reshape(-1) @ C

    def rhs(w, a):
        return A_inv @ (P @ br(A @ w, w)), a @ np.tensordot(w, basis, axes=1)

    n_steps = int(round(cfg.t_max / cfg.step))
    h = cfg.t_max / n_steps if n_steps else 0.0
    w = P @ v
    eye = np.eye(alg.size)
    a = eye.copy()
    cw, ca = np.zeros_like(w), np.zeros_like(a)
    ts, alphas, omegas = [0.0], [a.copy()], [w.copy()]
    for n in range(1, n_steps + 1):
        k1w, k1a = rhs(w, a)
        k2w, k2a = rhs(w + 0.5 * h * k1w, a + 0.5 * h * k1a)
        k3w, k3a = rhs(w + 0.5 * h * k2w, a + 0.5 * h * k2a)
        k4w, k4a = rhs(w + h * k3w, a + h * k3a)
        # compensated (Kahan) accumulation keeps roundoff below the O(h^4) truncation error
        dw = (h / 6.0) * (k1w + 2 * k2w + 2 * k3w + k4w) - cw
        da = (h / 6.0) * (k1a + 2 * k2a + 2 * k3a + k4a) - ca
        w_new, a_new = w + dw, a + da
        cw, ca = (w_new - w) - dw, (a_new - a) - da
        w, a = w_new, a_new
        if n % cfg.reortho_every == 0:
            # one Newton-Schulz step toward the polar factor; a is already orthogonal to O(h^4)
            a = a @ (1.5 * eye - 0.5 * (a.T @ a))
            ca = np.zeros_like(a)
        if n % cfg.record_every == 0 or n == n_steps:
            ts.append(n * h)
            alphas.append(a.copy())
            omegas.append(w.copy())
    return OdePath(np.array(ts), np.array(alphas), np.array(omegas))


def compare_paths(pc, path, om):
    """Per-sample coset deviation: largest column-norm difference over the anchored columns."""
    if pc.algebra.size != om.size or path.alphas.shape[1] != om.size:
        raise ComparisonError("curve, path and orbit map live in different groups")
    per = []
    for t, a in zip(path.ts, path.alphas):
        D = om(pc.eval(t)) - om(a)
        per.append(float(np.linalg.norm(D, axis=0).max(initial=0.0)))
    return {"max_deviation": max(per, default=0.0), "per_sample": per, "ts": list(path.ts)}


def bench(cm, v, t_samples, cfg=OdeConfig()):
    """Wall-clock of closed-form evaluation vs ODE integration to the same horizon."""
    from .geodesic import geodesic

    t_samples = np.asarray(t_samples, dtype=float)
    cfg = OdeConfig(step=cfg.step, t_max=float(t_samples.max(initial=0.0)),
                    record_every=cfg.record_every, reortho_every=cfg.reortho_every)
    t0 = time.perf_counter()
    pc = geodesic(cm, v)
    cf = [pc.eval(t) for t in t_samples]
    closed_form_time = time.perf_counter() - t0

    t0 = time.perf_counter()
    path = integrate_horizontal(cm, v, cfg)
    ode_time = time.perf_counter() - t0

    om = OrbitMap.from_split(cm.split)
    # compare at the requested samples via the nearest recorded step
    idx = np.searchsorted(path.ts, t_samples - 1e-12)
    idx = np.clip(idx, 0, len(path.ts) - 1)
    dev = max((float(np.linalg.norm(om(g) - om(path.alphas[k]), axis=0).max(initial=0.0))
               for g, k in zip(cf, idx)), default=0.0)
    return {"closed_form_time": closed_form_time, "ode_time": ode_time, "deviation": dev}
