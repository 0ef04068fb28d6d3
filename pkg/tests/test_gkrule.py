"""The Gauss-Kronrod pair is verified through its defining properties:
polynomial exactness pins the rule uniquely, so no external node tables are
needed."""

import mpmath
import pytest

from hkbose.gkrule import gauss_kronrod_15


@pytest.fixture(scope="module")
def rule():
    return gauss_kronrod_15(30)


def test_node_count_and_symmetry(rule):
    assert len(rule.nodes) == 15
    # x + y is exact regardless of the ambient precision; -y would round
    for x, y in zip(rule.nodes, reversed(rule.nodes)):
        assert x + y == 0
    assert rule.nodes[7] == 0


def test_weights_positive_and_normalized(rule):
    with mpmath.workdps(40):
        assert all(w > 0 for w in rule.weights_k)
        assert abs(sum(rule.weights_k) - 2) < mpmath.mpf(10) ** -38
        gsum = sum(w for w in rule.weights_g if w != 0)
        assert abs(gsum - 2) < mpmath.mpf(10) ** -38


def test_gauss_nodes_embedded(rule):
    gauss_positions = [i for i, w in enumerate(rule.weights_g) if w != 0]
    assert gauss_positions == [1, 3, 5, 7, 9, 11, 13]


def test_kronrod_exact_through_degree_22(rule):
    with mpmath.workdps(40):
        for k in range(23):
            exact = mpmath.mpf(2) / (k + 1) if k % 2 == 0 else mpmath.mpf(0)
            got = sum(w * x ** k for x, w in zip(rule.nodes, rule.weights_k))
            assert abs(got - exact) < mpmath.mpf(10) ** -35, k


def test_gauss_exact_through_degree_13_not_14(rule):
    with mpmath.workdps(40):
        for k in range(14):
            exact = mpmath.mpf(2) / (k + 1) if k % 2 == 0 else mpmath.mpf(0)
            got = sum(w * x ** k for x, w in zip(rule.nodes, rule.weights_g))
            assert abs(got - exact) < mpmath.mpf(10) ** -35, k
        got = sum(w * x ** 14 for x, w in zip(rule.nodes, rule.weights_g))
        assert abs(got - mpmath.mpf(2) / 15) > mpmath.mpf(1) / 10 ** 5


def test_high_precision_construction_consistent(rule):
    deep = gauss_kronrod_15(60)
    with mpmath.workdps(70):
        for a, b in zip(rule.nodes, deep.nodes):
            assert abs(a - b) < mpmath.mpf(10) ** -28


def test_float64_view_matches_quadpack_reference(rule):
    # spot values widely tabulated for QUADPACK's K15
    x, wk, _ = rule.as_float64()
    assert abs(x[0] + 0.9914553711208126) < 1e-15
    assert abs(x[1] + 0.9491079123427585) < 1e-15
    assert abs(wk[7] - 0.2094821410847278) < 1e-15
