"""
Geodesics of a left-invariant metric on SO(4)
=============================================

Build the three-parameter metric from the chain
{e} < SO(2) < SO(3) < SO(4), pick a unit initial velocity and evaluate the
geodesic as a product of three one-parameter subgroups.
"""
import numpy as np

from geoprod import geodesic, lax_residual, energy
from geoprod.spaces import EXAMPLES, build_space

# --- the space
spec = EXAMPLES["so4_e"]
chain, Q, cm = build_space(spec)
print(spec.label, "lambdas", cm.lambdas, "eigenspace dims", cm.dims)

# --- a velocity in m, given by coefficients in the eigenspace basis
c = np.random.default_rng(0).standard_normal(sum(cm.dims))
c /= np.linalg.norm(c)
v = cm.from_m_coords(c)

curve = geodesic(cm, v)
for i, x in enumerate(curve.gen.X, 1):
    print(f"X_{i} =", np.round(x, 4) + 0.0)
print("X_1 + X_2 + X_3 - v =", np.abs(sum(curve.gen.X) - v).max())

# --- evaluate and check the geodesic equation along the way
for t in (0.0, 1.0, 5.0, 25.0):
    g = curve(t)
    r = lax_residual(cm, curve, t)
    print(f"t={t:5.1f}  |g^T g - I|={np.abs(g.T @ g - np.eye(4)).max():.1e}  "
          f"residual={r.full:.1e}  energy={energy(cm, curve, t):.15f}")
