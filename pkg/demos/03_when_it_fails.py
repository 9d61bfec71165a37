"""
A decomposition that is not a chain
===================================

Split so(3) into the three coordinate lines m_i = span(L_i) and give them
different weights. The metric is fine, but [m_1, m_2] leaves m_1, so the
product formula no longer yields geodesics.
"""
import numpy as np

from geoprod import ChainMetric, check_bracket_condition, geodesic, lax_residual, reductive_split
from geoprod.liealgebra import catalog_so, so3_generators, trace_form
from geoprod.spaces import EXAMPLES, build_space

g = catalog_so(3)
L = so3_generators()
split = reductive_split(g, [], trace_form(g))
bad = ChainMetric.from_eigenspaces(split, list(L), (1, 2, 3))

res = check_bracket_condition(bad)
print("bracket condition violation", round(res.max_violation, 4), "at", res.worst_pair)

v = sum(L)
v /= split.norm(v)
curve = geodesic(bad, v)
for t in (0.5, 1.0, 2.0):
    print(f"t={t}: residual {lax_residual(bad, curve, t).full:.3f}")

# the chain {e} < SO(2) < SO(3) passes with the same machinery
_, _, good = build_space(EXAMPLES["so3_e"])
c = np.array([0.6, 0.0, 0.8])
curve = geodesic(good, good.from_m_coords(c))
print("chain metric residual at t=1:", f"{lax_residual(good, curve, 1.0).full:.1e}")
