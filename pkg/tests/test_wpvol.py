from fractions import Fraction
from math import factorial, pi

import pytest

from rsurf.wpvol import (
    PiPoly,
    VolumePoly,
    WPLaurent,
    check_symmetry,
    dim_complexity,
    inverse_laplace,
    kernel_series,
    symmetrized_orbits,
    volume,
    w_laurent,
)


def test_pipoly_arithmetic_and_value():
    a = PiPoly({0: Fraction(1, 2), 1: 2})
    b = PiPoly(3)
    assert (a + b).coeffs == {0: Fraction(7, 2), 1: Fraction(2)}
    assert (a * b).coeffs == {0: Fraction(3, 2), 1: Fraction(6)}
    assert (a - a).is_zero()
    assert a.value() == pytest.approx(0.5 + 2 * pi**2)
    assert str(PiPoly({1: 1, 0: -2})) == "-2 + pi^2"


def test_kernel_series_matches_taylor():
    # w / sin(w) = 1 + w^2/6 + 7 w^4/360 + 31 w^6/15120 + ...
    c = kernel_series(3)
    assert c == (1, Fraction(1, 6), Fraction(7, 360), Fraction(31, 15120))


def test_volume_base_cases():
    v03 = volume(0, 3)
    assert v03.terms == {(0, 0, 0): PiPoly(1)}
    v11 = volume(1, 1)
    assert v11.terms == {
        (0,): PiPoly({1: Fraction(1, 12)}),
        (1,): PiPoly(Fraction(1, 48)),
    }
    v04 = volume(0, 4)
    assert v04.terms[(0, 0, 0, 0)] == PiPoly({1: 2})
    assert v04.terms[(1, 0, 0, 0)] == PiPoly(Fraction(1, 2))


def test_volume_one_two_against_literature():
    # V_{1,2} = (L1^2 + L2^2)^2/192 + pi^2 (L1^2 + L2^2)/12 + pi^4/4
    v = volume(1, 2)
    assert v.terms[(2, 0)] == PiPoly(Fraction(1, 192))
    assert v.terms[(1, 1)] == PiPoly(Fraction(1, 96))
    assert v.terms[(1, 0)] == PiPoly({1: Fraction(1, 12)})
    assert v.terms[(0, 0)] == PiPoly({2: Fraction(1, 4)})


def test_volume_two_one_constant_term():
    # V_{2,1}(0) = 29 pi^8 / 192 / 7! ... use known value pi^8 * 29/409600? ;
    # instead check homogeneity and positivity which pin the structure
    v = volume(2, 1)
    d = dim_complexity(2, 1)
    for (m,), c in v.terms.items():
        assert m + max(c.coeffs) == d
        assert all(x > 0 for x in c.coeffs.values())


def test_symmetry_and_homogeneity_random_signatures():
    for g, n in ((0, 5), (1, 3), (2, 2), (0, 6)):
        v = volume(g, n)
        assert check_symmetry(v)
        d = dim_complexity(g, n)
        for ms, c in v.terms.items():
            for k in c.coeffs:
                assert sum(ms) + k == d


def test_w_laurent_inverse_laplace_consistency():
    w = w_laurent(1, 1)
    v = inverse_laplace(w)
    assert v == volume(1, 1)
    # z^-2k maps to L^(2k-2)/(2k-1)!
    hand = {}
    for (k,), c in w.terms.items():
        hand[(k - 1,)] = c * Fraction(1, factorial(2 * k - 1))
    assert VolumePoly(1, hand) == v


def test_unstable_pairs_rejected():
    for g, n in ((0, 1), (0, 2), (1, 0), (0, 0)):
        with pytest.raises(ValueError):
            w_laurent(g, n)


def test_complexity_cap_enforced():
    with pytest.raises(ValueError):
        w_laurent(30, 1)


def test_symmetrized_orbits_partition():
    v = volume(0, 4)
    orbits = symmetrized_orbits(v)
    total = sum(len(members) for members in orbits.values())
    assert total == len(v.terms)
    for key, members in orbits.items():
        assert all(tuple(sorted(ms)) == key for ms, _ in members)
        cs = {c for _, c in members}
        assert len(cs) == 1  # symmetry forces equal coefficients on an orbit


def test_check_symmetry_detects_asymmetry():
    bad = VolumePoly(2, {(1, 0): PiPoly(1)})
    assert not check_symmetry(bad)


def test_wplaurent_validation():
    with pytest.raises(ValueError):
        WPLaurent(2, {(1,): PiPoly(1)})
    with pytest.raises(ValueError):
        WPLaurent(1, {(0,): PiPoly(1)})
    assert WPLaurent(1, {(2,): PiPoly(0)}).terms == {}


def test_eval_numeric():
    v = volume(1, 1)
    L = 1.7
    want = (L * L + 4 * pi * pi) / 48.0
    assert v.eval([L]) == pytest.approx(want, rel=1e-12)
