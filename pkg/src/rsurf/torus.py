"""Genus-one building blocks: the Weierstrass function and modular moves.

The lattice is always normalized to Z + tau Z with Im tau > 0.  The
Weierstrass function is summed over a disc of lattice points at two radii
and Richardson-extrapolated (the leading tail after symmetric cancellation
decays like 1/R^2), which buys several digits for free.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "weierstrass_p",
    "weierstrass_p_prime",
    "reduce_modular",
    "apply_modular_g1",
]


def _lattice(tau, radius):
    """Lattice points m + n tau with 0 < |point| <= radius, as an array."""
    span = int(radius / min(1.0, abs(tau.imag))) + 2
    m, n = np.meshgrid(np.arange(-span, span + 1), np.arange(-span, span + 1))
    pts = m + n * tau
    mask = (np.abs(pts) <= radius) & ((m != 0) | (n != 0))
    return pts[mask]


def _reduce_cell(z, tau):
    """Translate z by the lattice into the cell centered at the origin."""
    beta = z.imag / tau.imag
    alpha = z.real - beta * tau.real
    alpha -= round(alpha)
    beta -= round(beta)
    return alpha + beta * tau


def _p_sum(z, tau, radius):
    omega = _lattice(tau, radius)
    return 1.0 / z**2 + np.sum(1.0 / (z + omega) ** 2 - 1.0 / omega**2)


def weierstrass_p(z, tau, radius=40.0, with_error=False):
    """Weierstrass p-function on C / (Z + tau Z).

    Lattice sums at ``radius`` and ``2 * radius`` are extrapolated against
    the 1/R^2 tail; the difference of the two partial sums is reported as
    the error estimate when ``with_error`` is set.
    """
    z = complex(z)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    z = _reduce_cell(z, tau)
    if z == 0:
        raise ZeroDivisionError("pole of the p-function")
    s1 = _p_sum(z, tau, radius)
    s2 = _p_sum(z, tau, 2 * radius)
    value = s2 + (s2 - s1) / 3.0
    if with_error:
        return value, abs(s2 - s1)
    return value


def weierstrass_p_prime(z, tau, radius=40.0):
    """Derivative of the p-function: -2 sum over the full lattice."""
    z = complex(z)
    tau = complex(tau)
    z = _reduce_cell(z, tau)

    def partial(r):
        omega = _lattice(tau, r)
        return -2.0 / z**3 + np.sum(-2.0 / (z + omega) ** 3)

    s1 = partial(radius)
    s2 = partial(2 * radius)
    # tail here decays like 1/R^3 after symmetric cancellation
    return s2 + (s2 - s1) / 7.0


def reduce_modular(tau, max_steps=1000):
    """Representative of tau in the fundamental domain of PSL(2, Z).

    The domain is -1/2 <= Re tau < 1/2, |tau| >= 1, with the boundary tie
    broken so that |tau| = 1 keeps Re tau <= 0.  Returns ``(tau0, M)`` with
    M an integer matrix [[a, b], [c, d]] of determinant one such that
    tau0 = (a tau + b) / (c tau + d).
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    a, b, c, d = 1, 0, 0, 1
    for _ in range(max_steps):
        shift = -int(np.floor(tau.real + 0.5))
        if tau.real + shift >= 0.5 - 1e-15:
            shift -= 1
        if shift:
            tau = tau + shift
            a, b = a + shift * c, b + shift * d
        r = abs(tau)
        if r < 1.0 - 1e-15:
            tau = -1.0 / tau
            a, b, c, d = -c, -d, a, b
            continue
        if r < 1.0 + 1e-15 and tau.real > 1e-15:
            tau = -1.0 / tau
            a, b, c, d = -c, -d, a, b
            shift = -int(np.floor(tau.real + 0.5))
            if shift:
                tau = tau + shift
                a, b = a + shift * c, b + shift * d
            break
        break
    else:
        raise RuntimeError("modular reduction did not terminate")
    return tau, ((a, b), (c, d))


def apply_modular_g1(tau, matrix):
    """Moebius action tau -> (a tau + b) / (c tau + d) of SL(2, Z).

    Accepts exact rational tau components when given as a pair
    ``(re, im)`` of Fractions, otherwise works in complex floats.  The
    composition law apply(apply(tau, M1), M2) == apply(tau, M2 @ M1) holds
    exactly in the rational mode.
    """
    (a, b), (c, d) = matrix
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant one")
    if isinstance(tau, tuple):
        re, im = Fraction(tau[0]), Fraction(tau[1])
        # (a tau + b) / (c tau + d) with tau = re + i im, exactly
        nr, ni = a * re + b, a * im
        dr, di = c * re + d, c * im
        den = dr * dr + di * di
        if den == 0:
            raise ZeroDivisionError("tau is a pole of the transformation")
        return ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    tau = complex(tau)
    den = c * tau + d
    if den == 0:
        raise ZeroDivisionError("tau is a pole of the transformation")
    return (a * tau + b) / den
