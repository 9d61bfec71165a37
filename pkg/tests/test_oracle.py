import numpy as np
import pytest

from conftest import SO3_E, SO4_E, make_metric, unit_velocities
from geoprod import homogeneous as hg
from geoprod.errors import ComparisonError, ConfigError
from geoprod.geodesic import geodesic, maurer_cartan
from geoprod.liealgebra import catalog_so, catalog_so_block, trace_form
from geoprod.numkernel import mat_exp
from geoprod.oracle import OdeConfig, OrbitMap, bench, compare_paths, integrate_horizontal


def n1_metric():
    g = catalog_so(4)
    chain = hg.SubalgebraChain(g, [catalog_so_block(4, 2), list(range(6))])
    return hg.build_chain_metric(chain, trace_form(g), [1.0])


def ode_energy(cm, w):
    return cm.split.Q(cm.A @ w, w)


def test_config_validation():
    with pytest.raises(ConfigError):
        OdeConfig(step=0.0)
    with pytest.raises(ConfigError):
        OdeConfig(t_max=-1.0)
    with pytest.raises(ConfigError):
        OdeConfig(record_every=0)


def test_stability_guard():
    cm = make_metric(SO3_E, (1, 2))
    v = 1000 * unit_velocities(cm, 1)[0]
    with pytest.raises(ConfigError):
        integrate_horizontal(cm, v, OdeConfig(step=1e-3))


def test_identity_metric_is_one_param_orbit():
    cm = n1_metric()
    v = unit_velocities(cm, 1)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-2, t_max=1.0))
    # the right side [Av, v]_m = [v, v]_m vanishes; only A and the projection round
    assert np.abs(path.omegas - v).max() <= 1e-14
    np.testing.assert_allclose(path.alphas[-1], mat_exp(cm.algebra.matrix(v)), atol=1e-10)


def test_zero_velocity():
    cm = make_metric(SO3_E, (1, 2))
    path = integrate_horizontal(cm, np.zeros(3), OdeConfig(step=1e-2, t_max=1.0))
    assert np.array_equal(path.alphas[-1], np.eye(3))


def test_orbit_map_columns():
    assert make_orbit(SO3_E).anchored == (0, 1, 2)
    cm = make_metric((4, (2, 3)), (1, 2))
    # SO(2) in the lower-right block fixes e0 and e1
    assert OrbitMap.from_split(cm.split).anchored == (0, 1)


def make_orbit(space):
    return OrbitMap.from_split(make_metric(space, (1, 2)).split)


def test_compare_at_zero():
    cm = make_metric(SO3_E, (1, 2))
    v = unit_velocities(cm, 1)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-3, t_max=0.0))
    res = compare_paths(geodesic(cm, v), path, OrbitMap.from_split(cm.split))
    assert res["per_sample"] == [0.0]


def test_n1_deviation():
    cm = n1_metric()
    v = unit_velocities(cm, 1)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-3, t_max=2.0, record_every=50))
    res = compare_paths(geodesic(cm, v), path, OrbitMap.from_split(cm.split))
    assert res["max_deviation"] <= 1e-8


def test_headline_so4_chain():
    cm = make_metric(SO4_E, (1, 2, 0.5))
    v = unit_velocities(cm, 1, seed=7)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-3, t_max=2.0, record_every=20))
    res = compare_paths(geodesic(cm, v), path, OrbitMap.from_split(cm.split))
    assert res["max_deviation"] <= 1e-6


def test_horizontal_consistency():
    cm = make_metric(SO4_E, (0.5, 2, 3))
    v = unit_velocities(cm, 1, seed=3)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-3, t_max=2.0, record_every=100))
    pc = geodesic(cm, v)
    for t, w in zip(path.ts, path.omegas):
        wm = cm.split.proj_m @ maurer_cartan(pc, t).omega
        assert np.abs(wm - w).max() <= 1e-6


def test_ode_energy_drift():
    cm = make_metric(SO3_E, (1, 2))
    v = unit_velocities(cm, 1)[0]
    path = integrate_horizontal(cm, v, OdeConfig(step=1e-3, t_max=2.0, record_every=10))
    e = np.array([ode_energy(cm, w) for w in path.omegas])
    assert np.abs(e - e[0]).max() <= 1e-8 * abs(e[0])
    assert np.abs(np.linalg.norm(path.omegas, axis=1)).max() <= 10


def test_compare_mismatch():
    cm3 = make_metric(SO3_E, (1, 2))
    cm4 = make_metric(SO4_E, (0.5, 2, 3))
    path = integrate_horizontal(cm4, unit_velocities(cm4, 1)[0], OdeConfig(step=1e-2, t_max=0.1))
    with pytest.raises(ComparisonError):
        compare_paths(geodesic(cm3, unit_velocities(cm3, 1)[0]), path, OrbitMap.from_split(cm3.split))


def test_bench_fields():
    cm = make_metric(SO3_E, (1, 2))
    r = bench(cm, unit_velocities(cm, 1)[0], np.linspace(0, 0.5, 6), OdeConfig(step=1e-3))
    assert set(r) == {"closed_form_time", "ode_time", "deviation"}
    assert r["deviation"] <= 1e-6


@pytest.mark.parametrize("space,lams", [((3, (2,)), (1,)), ((4, (2, 3)), (1, 2)), ((4, (3,)), (1,))])
def test_orbit_map_soundness(space, lams):
    cm = make_metric(space, lams)
    om = OrbitMap.from_split(cm.split)
    H = cm.split.h_basis
    rng = np.random.default_rng(11)
    for _ in range(20):
        h = mat_exp(cm.algebra.matrix(H @ rng.standard_normal(H.shape[1])))
        assert np.abs(om(h) - om(np.eye(cm.algebra.size))).max() <= 1e-11


def test_ode_stays_on_group():
    cm = make_metric(SO4_E, (0.5, 2, 3))
    path = integrate_horizontal(cm, unit_velocities(cm, 1)[0], OdeConfig(step=1e-3, t_max=5.0, record_every=50))
    eye = np.eye(4)
    assert max(np.abs(a.T @ a - eye).max() for a in path.alphas) <= 1e-8
