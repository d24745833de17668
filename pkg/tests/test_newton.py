from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsurf.algebra import parse_poly
from rsurf.newton import (
    DegeneratePolygonError,
    LatticePolygon,
    classify_form,
    genus,
    tangent_directions,
)

point = st.tuples(
    st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7)
)


@given(st.sets(point, min_size=3, max_size=9))
@settings(max_examples=80)
def test_picks_theorem(support):
    try:
        pg = LatticePolygon(support)
    except DegeneratePolygonError:
        return
    # 2 * area = 2 * interior + boundary - 2
    assert pg.area2() == 2 * len(pg.interior) + pg.boundary_lattice_count() - 2


@given(st.sets(point, min_size=3, max_size=9))
@settings(max_examples=60)
def test_edges_support_halfplanes(support):
    try:
        pg = LatticePolygon(support)
    except DegeneratePolygonError:
        return
    for (i, j) in support:
        assert pg.contains(i, j)
    for (i, j) in pg.interior:
        assert all(e.violation(i, j) < 0 for e in pg.edges)


def test_hyperelliptic_genus_family():
    for deg in (4, 6, 8, 10):
        text = "y^2 - x^%d - x - 2" % deg
        assert genus(parse_poly(text)) == deg // 2 - 1
    assert genus(parse_poly("y^2 - x^2 + 4")) == 0


def test_nodal_count_lowers_genus():
    p = parse_poly("y^2 - x^6 + 1")
    assert genus(p) == 2
    assert genus(p, nodal_count=1) == 1


def test_degenerate_support_raises():
    with pytest.raises(DegeneratePolygonError):
        LatticePolygon([(0, 0), (1, 1), (2, 2)])


def test_classification_on_sextic():
    p = parse_poly("y^2 - x^6 + 1")
    assert classify_form(p, 1, 1).kind == "first"
    assert classify_form(p, 2, 1).kind == "first"
    third = classify_form(p, 3, 1)
    assert third.kind == "third"
    assert third.pole_orders == (1,)
    second = classify_form(p, 4, 1)
    assert second.kind == "second"
    assert second.pole_orders == (2,)


def test_genus_counts_interior_points():
    # elliptic curve in Weierstrass form
    assert genus(parse_poly("y^2 - x^3 + x - 1")) == 1


def test_tangent_directions_cover_all_edges():
    p = parse_poly("y^2 - x^6 + 1")
    dirs = tangent_directions(p)
    pg = LatticePolygon.of_poly(p)
    assert len(dirs) == len(pg.edges)
    # multiplicity equals the lattice length of each edge
    assert sum(m for _, m in dirs) == pg.boundary_lattice_count()
