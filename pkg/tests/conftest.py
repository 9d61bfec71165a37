import numpy as np
import pytest

from geoprod.homogeneous import SubalgebraChain, build_chain_metric
from geoprod.liealgebra import catalog_so, catalog_so_block, trace_form

# (n, block sizes of h_0..h_{N-1}; 0 = trivial)
SO3_E = (3, (0, 2))
SO4_SO2 = (4, (2, 3))
SO4_E = (4, (0, 2, 3))


def make_chain(n, ks):
    g = catalog_so(n)
    levels = [[] if k == 0 else catalog_so_block(n, k) for k in ks] + [list(range(g.dim))]
    return SubalgebraChain(g, levels)


def make_metric(space, lambdas):
    chain = make_chain(*space)
    return build_chain_metric(chain, trace_form(chain.algebra), lambdas)


def unit_velocities(cm, count=10, seed=42):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        v = cm.from_m_coords(rng.standard_normal(cm.m_basis.shape[1]))
        out.append(v / cm.split.norm(v))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=[(SO3_E, (1, 2)), (SO3_E, (1, -1)), (SO4_SO2, (1, 2)), (SO4_SO2, (1, -1)),
                        (SO4_E, (0.5, 2, 3))],
                ids=["so3_e-1,2", "so3_e-1,-1", "so4_so2-1,2", "so4_so2-1,-1", "so4_e-.5,2,3"])
def chain_metric(request):
    space, lams = request.param
    return make_metric(space, lams)
