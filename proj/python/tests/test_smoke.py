import math

import numpy as np
import pytest

import chordwalk as cw


def test_graph_and_laplacian():
    g = cw.Graph(6, 3)
    assert (g.n, g.m) == (6, 3)
    h = g.laplacian()
    assert h.shape == (6, 6)
    assert np.allclose(h, h.T)
    assert np.allclose(h.sum(axis=1), 0.0)
    assert cw.Graph(9).m is None


def test_invalid_graph_raises():
    with pytest.raises(ValueError):
        cw.Graph(4, 2)


def test_solvers_agree_with_numpy():
    g = cw.Graph(31, 10)
    ref = np.linalg.eigvalsh(g.laplacian())
    assert np.max(np.abs(cw.eigenvalues(g) - ref)) < 1e-9
    assert np.max(np.abs(cw.eigenvalues(g, solver="chebyshev") - ref)) < 1e-9


def test_largest_eigenstate():
    energy, v = cw.largest_eigenstate(cw.Graph(200, 100))
    assert abs(energy - cw.largest_eigenvalue_asymptotic()) < 1e-3
    assert abs(abs(v[0]) - 2 ** -0.75) < 2e-3


def test_chebyshev_values():
    x = 0.3
    assert math.isclose(cw.cheb_t(5, x), math.cos(5 * math.acos(x)), abs_tol=1e-12)
    residual, magnitude = cw.verify_identity("a9", 1.7, 12, 5)
    assert residual <= 1e-8 * max(magnitude, 1.0)


def test_limiting_distribution_sums_to_one():
    chi = cw.limiting_distribution(cw.Graph(100, 21), 11)
    assert abs(chi.sum() - 1.0) < 1e-10
    assert abs(chi[10] - 0.0198) < 1e-9


def test_return_probability_at_zero():
    p = cw.return_probability(cw.Graph(20, 5), 3, [0.0, 1.0])
    assert p[0] == pytest.approx(1.0)
    assert 0.0 <= p[1] <= 1.0


def test_survival_small():
    r = cw.survival(cw.Graph(12, 5), gamma=0.5, t_max=40.0)
    assert r["survival"][0] == pytest.approx(1.0)
    assert np.all(np.diff(r["survival"]) <= 1e-12)
    assert r["sign_convention"] == "H_eff = H0 - i*Gamma*P_trap"
    assert cw.dark_state_count(cw.Graph(100, 26)) == 24
