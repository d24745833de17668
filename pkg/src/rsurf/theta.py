"""Riemann theta functions with certified truncation and the kernels
built from them.

The series Theta(u | tau) = sum_n exp(i pi n^T tau n + 2 pi i n^T u) is
summed over an integer box after translating u by the lattice so that the
Gaussian center is near the origin; the discarded tail is bounded by a
shell-by-shell Gaussian estimate, and every evaluation carries its bound.
Genus up to 8 is accepted.

On top of the bare series the module provides the theta gradient and
Hessian, quasi-periodicity residuals, odd half characteristics, the
fundamental bidifferential d_p d_q log Theta, its kappa-shifted variants
(Klein and Schiffer), and the genus-one zoo: prime form, third kind
differentials, Szego kernel, Fay's identity in determinant form, the
Hirota limit, and the genus-zero degeneration of the Szego kernel.
"""

from __future__ import annotations

from itertools import product

import numpy as np

__all__ = [
    "ThetaDivisorError",
    "theta",
    "theta_grad",
    "theta_hessian",
    "theta_quasi_residual",
    "odd_characteristics",
    "char_point",
    "bergman_theta",
    "kappa_klein",
    "kappa_schiffer",
    "kernel_shift",
    "prime_form_g1",
    "third_kind_form_g1",
    "szego_g1",
    "fay_check",
    "hirota_check",
    "degenerate_szego",
]

_MAX_GENUS = 8


class ThetaDivisorError(ArithmeticError):
    """Theta value vanishes to working precision; the kernel is singular."""


def _validate(u, tau):
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    g = u.shape[0]
    if g > _MAX_GENUS:
        raise ValueError("genus %d exceeds the supported maximum %d" % (g, _MAX_GENUS))
    if tau.shape != (g, g):
        raise ValueError("tau must be %d x %d" % (g, g))
    if not np.allclose(tau, tau.T, atol=1e-12):
        raise ValueError("tau must be symmetric")
    y = tau.imag
    if np.linalg.eigvalsh(y)[0] <= 0:
        raise ValueError("Im tau must be positive definite")
    return u, tau


def _recenter(u, tau):
    """Translate u by the lattice so Im u is small; return (v, prefactor).

    Theta(u) = prefactor * Theta(v) by quasi-periodicity.
    """
    y = tau.imag
    mprime = np.round(np.linalg.solve(y, u.imag)).astype(int)
    v = u - tau @ mprime
    m = np.round(v.real).astype(int)
    v = v - m
    # Theta(v + tau m') = exp(-i pi m' tau m' - 2 pi i m' v) Theta(v)
    prefactor = np.exp(-1j * np.pi * (mprime @ tau @ mprime) - 2j * np.pi * (mprime @ v))
    return v, prefactor, mprime


def _theta_sum(v, tau, derivs, eps=5e-16):
    """Theta and derivatives at a recentered argument with a tail bound."""
    g = v.shape[0]
    y = tau.imag
    lam = np.linalg.eigvalsh(y)[0]
    c = np.linalg.solve(y, v.imag)
    peak = float(np.exp(np.pi * (c @ y @ c)))
    order = len(derivs)

    def tail(box):
        total = 0.0
        for k in range(box, box + 400):
            # lattice points with sup-norm k sit at Y-distance >= sqrt(lam)(k - |c|)
            dist = max(0.0, k - float(np.max(np.abs(c))) )
            shell = 2 * g * (2 * k + 1) ** (g - 1)
            term = shell * np.exp(-np.pi * lam * dist * dist)
            if order:
                term *= (2 * np.pi * (k + 1.0)) ** order
            total += term
            if term < 1e-300:
                break
        return peak * total

    box = 3
    while tail(box) > eps * peak and box < 80:
        box += 1

    rng = np.arange(-box, box + 1)
    grids = np.meshgrid(*([rng] * g), indexing="ij")
    n = np.stack([gr.ravel() for gr in grids], axis=-1).astype(float)
    quad = np.einsum("ki,ij,kj->k", n, tau, n)
    expo = 1j * np.pi * quad + 2j * np.pi * (n @ v)
    terms = np.exp(expo)
    for idx in derivs:
        terms = terms * (2j * np.pi * n[:, idx])
    return complex(np.sum(terms)), float(tail(box))


def theta(u, tau, derivs=(), with_error=False):
    """Riemann theta function, optionally differentiated.

    ``derivs`` lists the u-indices of applied partial derivatives, e.g.
    ``(0, 0)`` for the second derivative in u_1 at genus one.  When
    ``with_error`` is set, returns ``(value, bound)`` where ``bound`` is a
    certified absolute bound on the truncation error.
    """
    u, tau = _validate(u, tau)
    v, prefactor, mprime = _recenter(u, tau)
    if not derivs:
        val, err = _theta_sum(v, tau, ())
        out = prefactor * val
        if with_error:
            return out, abs(prefactor) * err
        return out
    # derivatives of the prefactor relation:
    # Theta(u) = P(v) Theta(v) with dv/du = Id and P carrying -2 pi i m'
    # per differentiation
    if len(derivs) == 1:
        val, e0 = _theta_sum(v, tau, ())
        d1, e1 = _theta_sum(v, tau, derivs)
        k = -2j * np.pi * mprime[derivs[0]]
        out = prefactor * (d1 + k * val)
        err = abs(prefactor) * (e1 + abs(k) * e0)
    elif len(derivs) == 2:
        i, j = derivs
        val, e0 = _theta_sum(v, tau, ())
        di, ei = _theta_sum(v, tau, (i,))
        dj, ej = _theta_sum(v, tau, (j,))
        dij, eij = _theta_sum(v, tau, (i, j))
        ki = -2j * np.pi * mprime[i]
        kj = -2j * np.pi * mprime[j]
        out = prefactor * (dij + ki * dj + kj * di + ki * kj * val)
        err = abs(prefactor) * (eij + abs(ki) * ej + abs(kj) * ei + abs(ki * kj) * e0)
    else:
        raise NotImplementedError("derivatives up to order two are supported")
    if with_error:
        return out, err
    return out


def theta_grad(u, tau):
    u_arr, tau_arr = _validate(u, tau)
    g = u_arr.shape[0]
    return np.array([theta(u_arr, tau_arr, derivs=(i,)) for i in range(g)])


def theta_hessian(u, tau):
    u_arr, tau_arr = _validate(u, tau)
    g = u_arr.shape[0]
    h = np.empty((g, g), dtype=complex)
    for i in range(g):
        for j in range(i, g):
            h[i, j] = h[j, i] = theta(u_arr, tau_arr, derivs=(i, j))
    return h


def theta_quasi_residual(u, tau, m, mprime):
    """Residual of the quasi-periodicity law for integer vectors m, m'.

    Returns |Theta(u + m + tau m') - phase * Theta(u)| / max(|Theta(u)|, 1)
    with phase = exp(-i pi m' tau m' - 2 pi i m' u).
    """
    u, tau = _validate(u, tau)
    m = np.asarray(m, dtype=int)
    mp = np.asarray(mprime, dtype=int)
    lhs = theta(u + m + tau @ mp, tau)
    phase = np.exp(-1j * np.pi * (mp @ tau @ mp) - 2j * np.pi * (mp @ u))
    rhs = phase * theta(u, tau)
    return abs(lhs - rhs) / max(abs(rhs), 1.0)


def odd_characteristics(g):
    """All odd half characteristics (a, b), each a vector in {0, 1/2}^g.

    A characteristic is odd when 4 a.b is odd; there are
    2^(g-1) (2^g - 1) of them.
    """
    out = []
    for abits in product((0, 1), repeat=g):
        for bbits in product((0, 1), repeat=g):
            if sum(x * y for x, y in zip(abits, bbits)) % 2 == 1:
                out.append(
                    (tuple(x / 2 for x in abits), tuple(x / 2 for x in bbits))
                )
    return out


def char_point(char, tau):
    """The point b + tau a of the characteristic (a, b) in the Jacobian."""
    a, b = char
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    return np.asarray(b, dtype=complex) + tau @ np.asarray(a, dtype=complex)


def _default_odd_point(tau):
    g = np.atleast_2d(np.asarray(tau, dtype=complex)).shape[0]
    return char_point(odd_characteristics(g)[0], tau)


def _log_theta_hessian(v, tau):
    val, err = theta(v, tau, with_error=True)
    if abs(val) < 1e3 * max(err, 1e-300):
        raise ThetaDivisorError(
            "theta value %.3e is below the certified threshold" % abs(val)
        )
    grad = theta_grad(v, tau)
    hess = theta_hessian(v, tau)
    return hess / val - np.outer(grad, grad) / val**2


def bergman_theta(tau, up, uq, dup, duq, shift=None):
    """Fundamental bidifferential d_p d_q log Theta(u(p) - u(q) + c).

    ``up`` and ``uq`` are Abel images of the two points, ``dup`` and
    ``duq`` the vectors of holomorphic-differential values pulled back to
    the local coordinates (for a torus coordinate at genus one these are
    just 1).  ``shift`` defaults to an odd characteristic point.
    """
    up = np.atleast_1d(np.asarray(up, dtype=complex))
    uq = np.atleast_1d(np.asarray(uq, dtype=complex))
    dup = np.atleast_1d(np.asarray(dup, dtype=complex))
    duq = np.atleast_1d(np.asarray(duq, dtype=complex))
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    c = _default_odd_point(tau) if shift is None else np.asarray(shift, dtype=complex)
    h = _log_theta_hessian(up - uq + c, tau)
    return -complex(dup @ h @ duq)


def kappa_klein(tau, zeta):
    """Klein kernel shift: (1 / (pi i)) times the log-theta Hessian."""
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    return _log_theta_hessian(zeta, tau) / (1j * np.pi)

def kappa_schiffer(tau):
    """Schiffer kernel shift: (i/2) (Im tau)^(-1)."""
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    return 0.5j * np.linalg.inv(tau.imag)


def kernel_shift(tau, kappa, up, uq, dup, duq, shift=None):
    """B_kappa = B + 2 pi i sum_ij kappa_ij omega_i(p) omega_j(q)."""
    dup = np.atleast_1d(np.asarray(dup, dtype=complex))
    duq = np.atleast_1d(np.asarray(duq, dtype=complex))
    kappa = np.atleast_2d(np.asarray(kappa, dtype=complex))
    base = bergman_theta(tau, up, uq, dup, duq, shift=shift)
    return base + 2j * np.pi * complex(dup @ kappa @ duq)


# -- genus one kernels -------------------------------------------------------


def _theta1(v, tau):
    """Theta(v + c) at genus one with c = (1 + tau)/2, scalar in, scalar out."""
    c = (1.0 + tau) / 2.0
    return theta(np.array([v + c]), np.array([[tau]]))


def _theta1_checked(v, tau):
    c = (1.0 + tau) / 2.0
    val, err = theta(np.array([v + c]), np.array([[tau]]), with_error=True)
    if abs(val) < 1e3 * max(err, 1e-300):
        raise ThetaDivisorError("prime form argument sits on the theta divisor")
    return val


def _theta1_prime(v, tau):
    c = (1.0 + tau) / 2.0
    return theta(np.array([v + c]), np.array([[tau]]), derivs=(0,))


def prime_form_g1(z, w, tau):
    """Prime form E(z, w) on the torus C / (Z + tau Z).

    Vanishes simply at z = w and nowhere else on the fundamental cell.
    """
    return _theta1(z - w, tau) / _theta1_prime(0.0, tau)


def third_kind_form_g1(z, q1, q2, tau):
    """Normalized third kind differential with residues +1 at q1, -1 at q2,
    evaluated at z (coefficient against dz)."""
    t1 = _theta1_checked(z - q1, tau)
    t2 = _theta1_checked(z - q2, tau)
    return _theta1_prime(z - q1, tau) / t1 - _theta1_prime(z - q2, tau) / t2


def szego_g1(z, w, zeta, tau, omega_integral=0.0):
    """Szego kernel psi(z, w) with Jacobian shift zeta at genus one.

    ``omega_integral`` is int_w^z of the extra generalized shift, zero for
    the bare kernel.  The result has a simple pole 1/(z - w).
    """
    tau_m = np.array([[tau]])
    c = (1.0 + tau) / 2.0
    e = np.array([zeta + c])
    num, nerr = theta(np.array([z - w]) + e, tau_m, with_error=True)
    den, derr = theta(e, tau_m, with_error=True)
    if abs(den) < 1e3 * max(derr, 1e-300):
        raise ThetaDivisorError("zeta + c sits on the theta divisor")
    ef = prime_form_g1(z, w, tau)
    return np.exp(omega_integral) * num / (ef * den)


def _psi_plain(a, b, e, tau):
    """theta_e(a - b) / (E(a, b) theta_e(0)) with theta_e(v) = Theta(v + e)."""
    tau_m = np.array([[tau]])
    num = theta(np.array([a - b + e]), tau_m)
    den, derr = theta(np.array([e]), tau_m, with_error=True)
    if abs(den) < 1e3 * max(derr, 1e-300):
        raise ThetaDivisorError("shift sits on the theta divisor")
    return num / (prime_form_g1(a, b, tau) * den)


def fay_check(tau, zeta, pairs):
    """Residual of the determinantal Fay identity at genus one.

    ``pairs`` is a list of (a_k, b_k) pole pairs; the left side is the
    tau-quotient for the sum of the third kind shifts, evaluated by chaining
    one shift at a time, and the right side is det psi(a_i, b_j).  Returns
    the absolute difference, normalized by the larger magnitude.
    """
    c = (1.0 + tau) / 2.0
    e0 = zeta + c

    lhs = 1.0 + 0j
    acc = 0.0 + 0j  # accumulated Abel shift from previous pairs
    prev = []
    for a, b in pairs:
        tau_m = np.array([[tau]])
        num = theta(np.array([a - b + e0 + acc]), tau_m)
        den, derr = theta(np.array([e0 + acc]), tau_m, with_error=True)
        if abs(den) < 1e3 * max(derr, 1e-300):
            raise ThetaDivisorError("chained shift sits on the theta divisor")
        factor = num / (prime_form_g1(a, b, tau) * den)
        # exp of int_b^a of the previously accumulated third kind forms
        for ap, bp in prev:
            factor *= _theta1(a - ap, tau) * _theta1(b - bp, tau)
            factor /= _theta1(a - bp, tau) * _theta1(b - ap, tau)
        lhs *= factor
        acc += a - b
        prev.append((a, b))

    n = len(pairs)
    mat = np.empty((n, n), dtype=complex)
    for i, (a, _) in enumerate(pairs):
        for j, (_, b) in enumerate(pairs):
            mat[i, j] = _psi_plain(a, b, np.array([e0])[0], tau)
    rhs = np.linalg.det(mat)
    scale = max(abs(lhs), abs(rhs), 1.0)
    return abs(lhs - rhs) / scale


def hirota_check(tau, zeta, z1, z2, z, h):
    """First order Hirota residual from the collapsing Fay identity.

    The Fay quotient with pairs (z1, z2), (z + h, z) is normalized by
    psi(z1, z2) psi(z + h, z); its finite difference slope at h = 0 is
    compared with the analytic limit -psi(z1, z) psi(z, z2) / psi(z1, z2),
    the normalized form of the bilinear relation with its minus sign.
    The return value decays like O(h).
    """
    c = (1.0 + tau) / 2.0
    e = zeta + c
    tau_m = np.array([[tau]])

    def te(v):
        return theta(np.array([v + e]), tau_m)

    u12 = z1 - z2
    lhs_norm = (
        te(u12 + h)
        * te(0.0)
        / (te(u12) * te(h))
        * _theta1(z1 - z - h, tau)
        * _theta1(z2 - z, tau)
        / (_theta1(z1 - z, tau) * _theta1(z2 - z - h, tau))
    )
    fd = (lhs_norm - 1.0) / h
    limit = -(
        _psi_plain(z1, z, e, tau)
        * _psi_plain(z, z2, e, tau)
        / _psi_plain(z1, z2, e, tau)
    )
    return abs(fd - limit)


def degenerate_szego(z, w, nodes, omega_integrals=None):
    """Genus-zero degeneration of the Szego kernel.

    ``nodes`` is a list of pairs (p_plus, p_minus) of identified points and
    ``omega_integrals`` an optional (N+1) x (N+1) matrix of int_{p_j,-}^{p_i,+}
    of the shift, indices 0 reserved for (z, w); zeros when omitted.  With no
    nodes this is exp(int) / (z - w).
    """
    pts_plus = [z] + [p for p, _ in nodes]
    pts_minus = [w] + [q for _, q in nodes]
    n1 = len(pts_plus)
    if omega_integrals is None:
        omega_integrals = np.zeros((n1, n1))
    omega_integrals = np.asarray(omega_integrals, dtype=complex)
    big = np.empty((n1, n1), dtype=complex)
    for i in range(n1):
        for j in range(n1):
            dd = pts_plus[i] - pts_minus[j]
            if dd == 0:
                raise ZeroDivisionError("coincident node projections")
            big[i, j] = np.exp(omega_integrals[i, j]) / dd
    if n1 == 1:
        return big[0, 0]
    small = big[1:, 1:]
    return np.linalg.det(big) / np.linalg.det(small)
