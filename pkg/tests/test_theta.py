import numpy as np
import pytest

from rsurf.theta import (
    ThetaDivisorError,
    bergman_theta,
    char_point,
    degenerate_szego,
    fay_check,
    hirota_check,
    kappa_klein,
    kappa_schiffer,
    odd_characteristics,
    prime_form_g1,
    szego_g1,
    theta,
    theta_grad,
    theta_hessian,
    theta_quasi_residual,
    third_kind_form_g1,
)


def _siegel(rng, g):
    a = rng.normal(size=(g, g))
    b = rng.normal(size=(g, g)) * 0.4
    return 0.15 * (a + a.T) + 1j * (b @ b.T + np.eye(g))


def test_genus_one_matches_series():
    # direct q-series sum as an independent oracle
    tau = 0.1 + 1.2j
    u = 0.31 - 0.12j
    direct = sum(
        np.exp(1j * np.pi * n * n * tau + 2j * np.pi * n * u) for n in range(-40, 41)
    )
    assert theta(np.array([u]), np.array([[tau]])) == pytest.approx(direct, rel=1e-13)


def test_quasi_periodicity_random():
    rng = np.random.default_rng(0)
    for g in (1, 2, 3):
        tau = _siegel(rng, g)
        u = rng.normal(size=g) + 1j * rng.normal(size=g) * 0.2
        m = rng.integers(-2, 3, size=g).astype(float)
        mp = rng.integers(-2, 3, size=g).astype(float)
        assert theta_quasi_residual(u, tau, m, mp) < 1e-11


def test_parity():
    rng = np.random.default_rng(1)
    tau = _siegel(rng, 2)
    u = rng.normal(size=2) + 1j * rng.normal(size=2) * 0.3
    assert theta(u, tau) == pytest.approx(theta(-u, tau), rel=1e-13)


def test_odd_characteristic_count_and_vanishing():
    for g in (1, 2, 3):
        chars = odd_characteristics(g)
        assert len(chars) == 2 ** (g - 1) * (2**g - 1)
        rng = np.random.default_rng(g)
        tau = _siegel(rng, g)
        for char in chars:
            assert abs(theta(char_point(char, tau), tau)) < 1e-10


def test_gradient_and_hessian_match_finite_differences():
    rng = np.random.default_rng(2)
    tau = _siegel(rng, 2)
    u = np.array([0.21 - 0.05j, -0.13 + 0.11j])
    h = 1e-6
    grad = theta_grad(u, tau)
    hess = theta_hessian(u, tau)
    for k in range(2):
        e = np.zeros(2)
        e[k] = h
        fd = (theta(u + e, tau) - theta(u - e, tau)) / (2 * h)
        assert grad[k] == pytest.approx(fd, rel=1e-8)
        fd2 = (theta_grad(u + e, tau) - theta_grad(u - e, tau)) / (2 * h)
        assert hess[:, k] == pytest.approx(fd2, rel=1e-7)


def test_validate_rejects_bad_tau():
    with pytest.raises(ValueError):
        theta(np.zeros(2), np.array([[1j, 0.2], [0.3, 1j]]))  # not symmetric
    with pytest.raises(ValueError):
        theta(np.zeros(1), np.array([[1.0 - 1j]]))  # Im tau not positive


def test_prime_form_vanishes_only_on_diagonal():
    tau = 1.3j
    z, w = 0.31 + 0.12j, -0.17 + 0.08j
    assert abs(prime_form_g1(z, z + 1e-12, tau)) < 1e-10
    assert abs(prime_form_g1(z, w, tau)) > 1e-3
    # antisymmetry up to the quasi-periodicity phase of the odd theta shift
    phase = -np.exp(2j * np.pi * (z - w))
    assert prime_form_g1(w, z, tau) == pytest.approx(phase * prime_form_g1(z, w, tau), rel=1e-10)


def test_third_kind_a_period_and_residues():
    tau = 1.7j
    q1, q2 = 0.28 + 0.13j, -0.31 + 0.06j
    n = 256
    ts = (np.arange(n) + 0.5) / n
    # A period along a horizontal loop avoiding both poles
    z0 = 0.45 * tau
    total = np.sum([third_kind_form_g1(z0 + t, q1, q2, tau) for t in ts]) / n
    assert abs(total) < 1e-8
    # residues by small circles
    for q, want in ((q1, 1.0), (q2, -1.0)):
        r = 0.04
        ang = 2 * np.pi * ts
        vals = np.array([third_kind_form_g1(q + r * np.exp(1j * a), q1, q2, tau) for a in ang])
        res = np.sum(vals * r * np.exp(1j * ang)) / n
        assert res == pytest.approx(want, abs=1e-6)


def test_bergman_cycle_normalization():
    tau = 1.4j
    w = 0.11 + 0.07j
    n = 128
    ts = (np.arange(n) + 0.5) / n
    a_int = np.sum([bergman_theta(tau, 0.4 * tau + t, w, 1.0, 1.0) for t in ts]) / n
    assert abs(a_int) < 1e-8
    b_int = np.sum([bergman_theta(tau, 0.3 + t * tau, w, 1.0, 1.0) for t in ts]) * tau / n
    assert b_int == pytest.approx(2j * np.pi, abs=1e-7)


def test_kappa_schiffer_and_klein():
    tau = np.array([[1j]])
    assert kappa_schiffer(tau)[0, 0] == pytest.approx(0.5j)
    val = kappa_klein(tau, np.array([0.21 + 0.13j]))
    assert np.isfinite(val).all()


def test_szego_simple_pole():
    tau = 1.2j
    zeta = 0.17 + 0.23j
    w = 0.05 - 0.11j
    for eps in (1e-4, 1e-5):
        z = w + eps
        assert szego_g1(z, w, zeta, tau) * (z - w) == pytest.approx(1.0, rel=1e-3)


def test_fay_residual_small():
    tau = 1.1j
    zeta = 0.21 + 0.09j
    pairs = [(0.4 + 0.1j, -0.3 + 0.05j), (0.1 - 0.2j, 0.6 + 0.15j)]
    assert fay_check(tau, zeta, pairs) < 1e-11


def test_hirota_first_order_decay():
    tau = 1.3j
    rs = [
        hirota_check(tau, 0.13 + 0.07j, 0.5 + 0.1j, -0.4 + 0.2j, 0.1 - 0.3j, h)
        for h in (0.1, 0.05, 0.025)
    ]
    assert rs[1] < 0.75 * rs[0] and rs[2] < 0.75 * rs[1]


def test_degenerate_szego_pole_and_nodes():
    z, w = 0.9 + 0.4j, -0.8 + 0.1j
    nodes = [(0.3 + 0.2j, -0.3 - 0.2j)]
    val = degenerate_szego(z, w, nodes)
    assert np.isfinite(val)
    # simple pole at z = w
    for eps in (1e-4, 1e-5):
        assert degenerate_szego(w + eps, w, nodes) * eps == pytest.approx(1.0, rel=1e-3)


def test_theta_error_bound_certifies_value():
    tau = np.array([[1.1j, 0.2 + 0.1j], [0.2 + 0.1j, 1.4j]])
    u = np.array([0.3 + 0.05j, -0.2 + 0.1j])
    val, err = theta(u, tau, with_error=True)
    assert err < 1e-12 * abs(val)
    assert ThetaDivisorError.__mro__[1] is ArithmeticError
