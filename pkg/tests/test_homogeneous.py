import warnings

import numpy as np
import pytest

from conftest import SO3_E, SO4_E, SO4_SO2, make_chain, make_metric
from geoprod import homogeneous as hg
from geoprod.errors import (ChainError, DegenerateMetricError, DomainError, ReductivityError, SignatureError)
from geoprod.liealgebra import catalog_so, catalog_so_block, so3_generators, trace_form

L1, L2, L3 = so3_generators()


def in_span(x, B, tol=1e-12):
    coef = np.linalg.lstsq(B, x, rcond=None)[0]
    return np.abs(B @ coef - x).max() <= tol


def test_trivial_h_gives_whole_algebra():
    g = catalog_so(3)
    s = hg.reductive_split(g, [], trace_form(g))
    assert s.m_basis.shape == (3, 3)
    np.testing.assert_allclose(s.proj_m, np.eye(3), atol=1e-15)


def test_so3_over_so2():
    g = catalog_so(3)
    Q = trace_form(g)
    s = hg.reductive_split(g, catalog_so_block(3, 2), Q)
    assert s.m_basis.shape[1] == 2
    # h = span(E_23 - E_32) is basis index 2; its complement is spanned by indices 0, 1
    expected = np.eye(3)[:, :2]
    for col in s.m_basis.T:
        assert in_span(col, expected)
    assert s.orthogonality_violation() <= 1e-15
    assert s.reductivity_violation() <= 1e-12


def test_so4_over_so2_dim():
    g = catalog_so(4)
    s = hg.reductive_split(g, catalog_so_block(4, 2), trace_form(g))
    assert s.m_basis.shape[1] == 5


def test_projectors_complementary():
    g = catalog_so(4)
    s = hg.reductive_split(g, catalog_so_block(4, 3), trace_form(g))
    P = s.proj_m
    np.testing.assert_allclose(P @ P, P, atol=1e-14)
    np.testing.assert_allclose(P + s.proj_h, np.eye(6), atol=1e-15)


def test_non_subalgebra_rejected():
    g = catalog_so(3)
    with pytest.raises(ChainError):
        hg.reductive_split(g, [0, 1], trace_form(g))


def test_non_reductive_split_rejected():
    # under a form in which h is not orthogonal to an ad(h)-invariant complement
    g = catalog_so(3)
    Q = trace_form(g).with_entry(0, 2, 0.5)
    with pytest.raises(ReductivityError):
        hg.reductive_split(g, [2], Q)


def test_q_orthonormalize_signature():
    with pytest.raises(SignatureError):
        hg.q_orthonormalize(np.eye(2), np.diag([1.0, -1.0]))


def test_chain_rejects_bad_levels():
    g = catalog_so(3)
    with pytest.raises(ChainError):
        hg.SubalgebraChain(g, [[2], [2], [0, 1, 2]])
    with pytest.raises(ChainError):
        hg.SubalgebraChain(g, [[], [2]])
    with pytest.raises(ChainError):
        hg.SubalgebraChain(g, [[0, 1], [0, 1, 2]])


def test_n1_chain_identity_metric():
    g = catalog_so(4)
    chain = hg.SubalgebraChain(g, [catalog_so_block(4, 3), list(range(6))])
    cm = hg.build_chain_metric(chain, trace_form(g), [1.0])
    M = cm.m_basis
    np.testing.assert_allclose(cm.A @ M, M, atol=1e-14)


def test_so3_chain_dims_and_bracket():
    cm = make_metric(SO3_E, (1, 2))
    assert cm.dims == (2, 1)
    m1, m2 = cm.eigenspaces
    assert in_span(m2[:, 0], np.eye(3)[:, [2]])
    assert in_span(m1[:, 0], np.eye(3)[:, :2]) and in_span(m1[:, 1], np.eye(3)[:, :2])
    # explicit table: [e0, e2] and [e1, e2] stay in span(e0, e1)
    g = cm.algebra
    for a in (0, 1):
        b = g.bracket(np.eye(3)[a], np.eye(3)[2])
        assert b[2] == 0.0
    # exact in the raw table; normalized bases add one rounding
    assert hg.check_bracket_condition(cm).max_violation <= 1e-15


def test_so4_full_chain_dims():
    assert make_metric(SO4_E, (0.5, 2, 3)).dims == (3, 2, 1)
    assert make_metric(SO4_SO2, (1, 2)).dims == (3, 2)


def test_lambda_count_and_zero():
    chain = make_chain(*SO3_E)
    Q = trace_form(chain.algebra)
    with pytest.raises(ChainError):
        hg.build_chain_metric(chain, Q, [1.0])
    with pytest.raises(DegenerateMetricError):
        hg.build_chain_metric(chain, Q, [1.0, 0.0])


def test_equal_lambdas_warn():
    with pytest.warns(UserWarning):
        make_metric(SO3_E, (2, 2))


@pytest.mark.parametrize("space,lams", [(SO3_E, (1, 2)), (SO4_SO2, (1, -1)), (SO4_E, (0.5, 2, 3))])
def test_chain_metric_invariants(space, lams):
    cm = make_metric(space, lams)
    assert hg.check_decomposition(cm).max_violation <= 1e-12
    assert cm.orthogonality_violation() <= 1e-12
    assert hg.check_h_invariance(cm).max_violation <= 1e-11
    assert hg.check_bracket_condition(cm).max_violation <= 1e-11
    assert hg.check_A_symmetry(cm).max_violation <= 1e-12
    assert hg.check_A_equivariance(cm).max_violation <= 1e-11
    assert hg.check_ad_h_skew(cm.split).max_violation <= 1e-11
    assert hg.check_natural_reductivity(cm.split).max_violation <= 1e-11
    assert sum(cm.dims) == cm.split.m_basis.shape[1]


def test_natural_reductivity_zero_entries():
    g = catalog_so(3)
    s = hg.reductive_split(g, [], trace_form(g))
    P = s.proj_m
    z = np.zeros(3)
    y, w = np.array([1.0, 2, 3]), np.array([-1.0, 0.5, 2])
    assert s.Q(P @ g.bracket(z, y), w) + s.Q(y, P @ g.bracket(z, w)) == 0.0


def test_natural_reductivity_corrupted_form():
    g = catalog_so(3)
    Q = trace_form(g).with_entry(0, 1, 0.1)
    s = hg.reductive_split(g, [], Q)
    assert hg.check_natural_reductivity(s).max_violation >= 1e-3


def test_natural_reductivity_many_splits():
    for n in (3, 4, 5):
        g = catalog_so(n)
        Q = trace_form(g)
        for k in [0] + list(range(2, n)):
            h = [] if k == 0 else catalog_so_block(n, k)
            assert hg.check_natural_reductivity(hg.reductive_split(g, h, Q)).max_violation <= 1e-11


def test_A_eigen_cases():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ones = make_metric(SO4_E, (1, 1, 1))
    v = hg.random_m_vectors(ones, 1)[0]
    np.testing.assert_allclose(hg.apply_A(ones, v), v, atol=1e-14)
    cm = make_metric(SO4_E, (0.5, 2, 3))
    v2 = cm.eigenspaces[1] @ np.array([0.3, -1.2])
    np.testing.assert_allclose(hg.apply_A(cm, v2), 2 * v2, atol=1e-14)
    np.testing.assert_allclose(hg.apply_A_inv(cm, hg.apply_A(cm, v2)), v2, atol=1e-14)
    np.testing.assert_allclose(hg.project_i(cm, 1, v2), v2, atol=1e-14)
    np.testing.assert_allclose(hg.project_i(cm, 0, v2), 0, atol=1e-14)


def test_A_symmetric_on_random_pairs():
    cm = make_metric(SO4_E, (0.5, 2, 3))
    V = hg.random_m_vectors(cm, 50, seed=1)
    W = hg.random_m_vectors(cm, 50, seed=2)
    for v, w in zip(V, W):
        assert abs(hg.base_inner(cm.split, hg.apply_A(cm, v), w) - hg.base_inner(cm.split, v, hg.apply_A(cm, w))) <= 1e-12


def test_A_rejects_h_vectors():
    cm = make_metric(SO4_SO2, (1, 2))
    with pytest.raises(DomainError):
        hg.apply_A(cm, cm.split.h_basis[:, 0])


def test_metric_inner_positive_for_positive_lambdas():
    cm = make_metric(SO4_E, (0.5, 2, 3))
    for v in hg.random_m_vectors(cm, 20):
        assert hg.metric_inner(cm, v, v) > 0


@pytest.mark.parametrize("space,lams", [(SO3_E, (1, 2)), (SO4_SO2, (1, 2)), (SO4_E, (0.5, 2, 3))])
def test_projection_inner_identity(space, lams):
    cm = make_metric(space, lams)
    rng = np.random.default_rng(9)
    worst = max(hg.check_lem2(cm, rng.standard_normal(cm.algebra.dim), rng.standard_normal(cm.algebra.dim))
                for _ in range(100))
    assert worst <= 1e-11


def test_hand_assembled_negative_control():
    g = catalog_so(3)
    split = hg.reductive_split(g, [], trace_form(g))
    cm = hg.ChainMetric.from_eigenspaces(split, [L1, L2, L3], (1, 2, 3))
    assert cm.hand_assembled
    res = hg.check_bracket_condition(cm)
    assert res.max_violation >= 0.5
    assert res.worst_pair == (1, 2)


def test_from_eigenspaces_checks_orthogonality():
    g = catalog_so(3)
    split = hg.reductive_split(g, [], trace_form(g))
    with pytest.raises(ChainError):
        hg.ChainMetric.from_eigenspaces(split, [L1, L1 + L2, L3], (1, 2, 3))
