from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsurf.divisors import (
    INFINITY,
    Divisor,
    LatticeTestInconclusiveError,
    canonical_check,
    degree,
    dim_l_genus0_bruteforce,
    is_principal,
    riemann_inequality_check,
    rr_genus0,
    rr_genus1,
)


def test_divisor_construction():
    d = Divisor([(Fraction(1), 2), (INFINITY, -1), (Fraction(2), 0)])
    assert degree(d) == 1
    assert len(d) == 2  # zero weights dropped
    with pytest.raises(ValueError):
        Divisor([(Fraction(1), 1), (Fraction(1), 2)])
    assert not d.is_positive()
    assert Divisor([(Fraction(3), 1)]).is_positive()


def test_rr_genus0_identity():
    for entries, want_r, want_i in [
        ([], 1, 0),
        ([(Fraction(0), 3)], 4, 0),
        ([(Fraction(0), -2)], 0, 1),
        ([(Fraction(0), 2), (Fraction(1), -3)], 0, 0),
    ]:
        res = rr_genus0(Divisor(entries))
        assert (res.r_minus_D, res.i_D) == (want_r, want_i)
        assert res.r_minus_D == res.deg + 1 - 0 + res.i_D


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-5, max_value=5),
            st.integers(min_value=-3, max_value=3),
        ),
        max_size=5,
        unique_by=lambda t: t[0],
    )
)
def test_rr_genus0_against_bruteforce(entries):
    div = Divisor(entries)
    assert rr_genus0(div).r_minus_D == dim_l_genus0_bruteforce(div)


def test_bruteforce_handles_infinity_and_complex_points():
    # 1/(x - i) has a pole at i and a zero at infinity
    p = (Fraction(0), Fraction(1))
    div = Divisor([(p, 1), (INFINITY, -1)])
    assert dim_l_genus0_bruteforce(div) == rr_genus0(div).r_minus_D == 1


def test_rr_genus1_cases():
    tau = 1.3j
    a, b = 0.21 + 0.17j, -0.34 + 0.52j
    abel = {"a": a, "b": b, "s": a + b, "off": a + b + 0.3}
    # positive degree
    res = rr_genus1(Divisor([("a", 2)]), tau, abel)
    assert (res.r_minus_D, res.i_D) == (2, 0)
    # negative degree
    res = rr_genus1(Divisor([("a", -1)]), tau, abel)
    assert (res.r_minus_D, res.i_D) == (0, 1)
    # degree zero, generic Abel image: no non-constant function
    assert rr_genus1(Divisor([("a", 1), ("b", -1)]), tau, abel).r_minus_D == 0
    # explicit lattice hit: u(D) = tau + 1
    abel2 = {"p": 0.4 + 0.1j, "q": 0.4 + 0.1j - (1 + tau)}
    res = rr_genus1(Divisor([("p", 1), ("q", -1)]), tau, abel2)
    assert res.r_minus_D == 1 and res.i_D == 1


def test_is_principal():
    tau = 1.1j
    abel = {"p": 0.3 + 0.2j, "q": 0.3 + 0.2j + tau, "r": 0.1}
    assert is_principal(Divisor([("p", 1), ("q", -1)]), tau, abel)
    assert not is_principal(Divisor([("p", 1), ("r", -1)]), tau, abel)
    assert not is_principal(Divisor([("p", 1)]), tau, abel)  # wrong degree


def test_lattice_band_raises():
    tau = 1.2j
    eps = 3e-7  # between the decision tolerance and the ambiguity band
    abel = {"p": 0.25 + 0.3j, "q": 0.25 + 0.3j + eps}
    with pytest.raises(LatticeTestInconclusiveError):
        is_principal(Divisor([("p", 1), ("q", -1)]), tau, abel)


def test_canonical_check_genus1():
    # canonical divisor has degree 0 at genus one and u(K_div) = 2K mod lattice
    tau = 1.4j
    k = (1 + tau) / 2.0
    abel = {"p": 0.2 + 0.1j, "q": 0.2 + 0.1j + 2 * k - (1 + tau)}
    assert canonical_check(Divisor([("p", 1), ("q", -1)]), 1, tau, abel, k)
    assert not canonical_check(Divisor([("p", 1)]), 1, tau, abel, k)


def test_riemann_inequality():
    assert riemann_inequality_check(Divisor([(Fraction(2), 3)]), 0)
    tau = 1.3j
    abel = {"p": 0.2 + 0.4j}
    assert riemann_inequality_check(Divisor([("p", 2)]), 1, tau, abel)
    with pytest.raises(ValueError):
        riemann_inequality_check(Divisor([(Fraction(0), -1)]), 0)
    with pytest.raises(ValueError):
        riemann_inequality_check(Divisor([(Fraction(0), 1)]), 2)


def test_rr_genus1_vector_lattice():
    tau = np.array([[1.1j, 0.3], [0.3, 1.6j]])
    u0 = np.array([0.2 + 0.1j, -0.1 + 0.3j])
    abel = {"p": u0, "q": u0 - tau @ np.array([1.0, -1.0]) - np.array([2.0, 0.0])}
    res = rr_genus1(Divisor([("p", 1), ("q", -1)]), tau, abel)
    assert res.r_minus_D == 1
