import numpy as np
import pytest

from rsurf.periods import (
    abel_map,
    agm,
    bilinear_check,
    build_curve,
    elliptic_K,
    period_matrix,
    reduce_lattice,
    riemann_constant,
)
from rsurf.theta import theta
from rsurf.torus import reduce_modular


def test_build_curve_validation():
    with pytest.raises(ValueError):
        build_curve([1, 0, 1])  # degree 2
    with pytest.raises(ValueError):
        build_curve([0, 0, 0, 0, 1, 1])  # odd degree 5
    with pytest.raises(ValueError):
        build_curve([0, 0, 1, 0, 0, 0, 1])  # double root at 0
    c = build_curve([-1, 0, 0, 0, 1])
    assert c.genus == 1 and len(c.branch_points) == 4


def test_lemniscatic_tau():
    curve = build_curve([-1, 0, 0, 0, 1])  # y^2 = x^4 - 1
    tau, _, _ = period_matrix(curve)
    assert tau[0, 0] == pytest.approx(1j, abs=5e-12)


def test_legendre_curve_against_agm():
    # y^2 = x (x - 1) (x + 1) (x - 2) (x + 2) would be degree 5; use the
    # even-degree model (x^2 - 1)(x^2 - 4) scaled: branch points +-1, +-2
    curve = build_curve([4, 0, -5, 0, 1])
    tau, ma, mb = period_matrix(curve)
    res, pos = bilinear_check(ma, mb)
    assert res < 1e-9 and pos > 0
    # cross modulus k^2 = ((b-a)(d-c)) / ((c-a)(d-b)) for -2,-1,1,2
    k2 = (1.0 * 1.0) / (3.0 * 3.0)
    k = np.sqrt(k2)
    kp = np.sqrt(1 - k2)
    want = 1j * elliptic_K(kp) / elliptic_K(k)
    t0, _ = reduce_modular(complex(tau[0, 0]))
    w0, _ = reduce_modular(want)
    assert t0 == pytest.approx(w0, abs=1e-9)


def test_genus_two_symmetry_and_positivity():
    curve = build_curve([-1, 0, 0, 0, 0, 0, 1])  # y^2 = x^6 - 1
    tau, ma, mb = period_matrix(curve)
    assert tau.shape == (2, 2)
    assert np.max(np.abs(tau - tau.T)) < 1e-9
    assert np.linalg.eigvalsh(tau.imag)[0] > 0
    res, pos = bilinear_check(ma, mb)
    assert res < 1e-8 and pos > 0


def test_abel_map_branch_point_differences_are_half_periods():
    curve = build_curve([-1, 0, 0, 0, 1])
    tau, ma, _ = period_matrix(curve)
    us = [abel_map(curve, (bp, 0.0), ma=ma, n=8000) for bp in curve.branch_points]
    for u in us[1:]:
        assert np.max(np.abs(reduce_lattice(2 * (u - us[0]), tau))) < 1e-4


def test_riemann_constant_genus_one_is_basepoint_zero():
    # at genus one the theta divisor is the single point u = 0, so
    # theta(K + u(p)) vanishes exactly at the Abel basepoint
    curve = build_curve([-1, 0, 0, 0, 1])
    tau, ma, _ = period_matrix(curve)
    k = riemann_constant(curve, tau=tau, ma=ma)
    assert abs(theta(reduce_lattice(k, tau), tau)) < 1e-10


def test_riemann_constant_puts_curve_on_theta_divisor():
    curve = build_curve([-1, 0, 0, 0, 0, 0, 1])
    tau, ma, _ = period_matrix(curve)
    k = riemann_constant(curve, tau=tau, ma=ma)
    for x in (1.7 + 0.4j, -1.9 + 0.6j):
        y = np.sqrt(curve.q(x))
        u = abel_map(curve, (x, y), ma=ma)
        v = reduce_lattice(k + u, tau)
        scale = abs(theta(reduce_lattice(u, tau) + 0.1, tau))
        assert abs(theta(v, tau)) < 1e-3 * max(scale, 1.0)


def test_reduce_lattice_idempotent_and_small():
    rng = np.random.default_rng(3)
    tau = np.array([[0.2 + 1.1j, 0.1 + 0.3j], [0.1 + 0.3j, -0.1 + 1.4j]])
    for _ in range(20):
        v = rng.normal(size=2) * 5 + 1j * rng.normal(size=2) * 5
        r = reduce_lattice(v, tau)
        assert np.max(np.abs(reduce_lattice(r, tau) - r)) < 1e-12
        # difference is a lattice vector
        m = np.linalg.solve(tau.imag, (v - r).imag)
        n = (v - r - tau @ np.round(m)).real
        assert np.max(np.abs(m - np.round(m))) < 1e-9
        assert np.max(np.abs(n - np.round(n))) < 1e-9


def test_agm_and_elliptic_K():
    # K(0) = pi/2 and the classical lemniscatic value K(1/sqrt 2)
    assert elliptic_K(0.0) == pytest.approx(np.pi / 2)
    assert elliptic_K(1 / np.sqrt(2)) == pytest.approx(1.8540746773013719, rel=1e-12)
    assert agm(1.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        elliptic_K(1.0)
