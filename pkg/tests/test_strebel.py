from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsurf.strebel import classify_pants, dim_quad_space, quad_diff


def test_classify_pants_known_cases():
    g = classify_pants(2, 3, 4)
    assert g.graph == 1
    assert g.lengths == (Fraction(3, 2), Fraction(1, 2), Fraction(5, 2))
    assert classify_pants(1, 1, 5).graph == 2
    assert classify_pants(1, 5, 1).graph == 3
    assert classify_pants(5, 1, 1).graph == 4


def test_classify_pants_rejects_nonpositive():
    with pytest.raises(ValueError):
        classify_pants(0, 1, 1)
    with pytest.raises(ValueError):
        classify_pants(1, -2, 1)


@settings(max_examples=200, deadline=None)
@given(
    st.fractions(min_value="1/100", max_value=20),
    st.fractions(min_value="1/100", max_value=20),
    st.fractions(min_value="1/100", max_value=20),
)
def test_classify_pants_properties(L0, L1, Linf):
    g = classify_pants(L0, L1, Linf)
    assert g.graph in (1, 2, 3, 4)
    assert all(x >= 0 for x in g.lengths)
    a, b, c = g.lengths
    # total edge length reconstructs the boundary lengths
    if g.graph == 1:
        assert (a + b, b + c, a + c) == (L0, L1, Linf)
    elif g.graph == 2:
        assert (a, b) == (L0, L1) and L0 + L1 + 2 * c == Linf
    elif g.graph == 3:
        assert (a, c) == (L0, Linf) and L0 + Linf + 2 * b == L1
    else:
        assert (b, c) == (L1, Linf) and L1 + Linf + 2 * a == L0


def test_dim_quad_space():
    assert dim_quad_space(0, 3) == 0
    assert dim_quad_space(1, 1) == 1
    assert dim_quad_space(0, 5) == 2
    with pytest.raises(ValueError):
        dim_quad_space(0, 2)


def test_three_point_differential_leading_coefficients():
    q = quad_diff(0, 3, (2, 3, 4))
    assert q.params == ()
    assert q.leading_at(Fraction(0)) == -4
    assert q.leading_at(Fraction(1)) == -9
    assert q.leading_at("inf") == -16


def test_three_point_differential_rejects_simple_pole_query():
    q = quad_diff(0, 3, (2, 3, 4))
    with pytest.raises(ValueError):
        q.leading_at(Fraction(1, 2))  # not a pole at all


def test_four_point_family():
    pts = [Fraction(0), Fraction(1), Fraction(2), Fraction(3)]
    q = quad_diff(0, 4, (1, 2, 3, 4), points=pts, params=[Fraction(5)])
    assert q.params == (Fraction(5),)
    for p, L in zip(pts, (1, 2, 3, 4)):
        assert q.leading_at(p) == -L * L
    # numerator degree stays within the bound for a quadratic differential
    assert q.numerator.degree_x() <= 2 * 4 - 4
    with pytest.raises(ValueError):
        quad_diff(0, 4, (1, 2, 3, 4), points=pts, params=[1, 2])
    with pytest.raises(ValueError):
        quad_diff(0, 4, (1, 2, 3, 4), points=[0, 0, 1, 2], params=[0])


def test_param_independence_of_double_poles():
    pts = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2)]
    qa = quad_diff(0, 4, (1, 1, 1, 1), points=pts, params=[Fraction(0)])
    qb = quad_diff(0, 4, (1, 1, 1, 1), points=pts, params=[Fraction(7, 3)])
    for p in pts:
        assert qa.leading_at(p) == qb.leading_at(p) == -1


def test_torus_family_is_callable():
    tau = 1.3j
    phi = quad_diff(1, 1, (2.0,), points=tau, params=[0.5])
    v = phi(0.3 + 0.2j)
    # -L^2 p(z) + c with c = 0.5
    from rsurf.torus import weierstrass_p

    assert v == pytest.approx(-4.0 * weierstrass_p(0.3 + 0.2j, tau) + 0.5)
    with pytest.raises(ValueError):
        quad_diff(1, 1, (2.0,))


def test_unsupported_signature():
    with pytest.raises(NotImplementedError):
        quad_diff(2, 1, (1.0,))
