"""Newton polygons of plane curves and what they see of the surface.

The lattice polygon of a polynomial P(x, y) carries the genus of the generic
curve P = 0 (the count of interior lattice points), a classification of the
monomial differentials x^(k-1) y^(l-1) dx / P_y into first, second and third
kind by the position of (k, l), and the tangency data of the curve's
asymptotic directions, one per primitive boundary edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "DegeneratePolygonError",
    "LatticePolygon",
    "FormKind",
    "classify_form",
    "genus",
    "tangent_directions",
]


class DegeneratePolygonError(ValueError):
    """Support spans a polygon of dimension < 2 (point or segment)."""


def _hull(points):
    """Convex hull, counterclockwise, via the monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Edge:
    """Supporting line alpha*i + beta*j <= m with primitive inward data.

    ``(alpha, beta)`` is the primitive outward normal of one hull edge and
    ``m`` the maximal value of alpha*i + beta*j over the support, attained
    exactly on that edge.
    """

    alpha: int
    beta: int
    m: int

    def violation(self, i, j):
        return self.alpha * i + self.beta * j - self.m


class LatticePolygon:
    """Convex hull of the support of a bivariate polynomial."""

    def __init__(self, support):
        pts = [(int(i), int(j)) for i, j in support]
        if not pts:
            raise DegeneratePolygonError("empty support")
        hull = _hull(pts)
        if len(hull) < 3:
            raise DegeneratePolygonError(
                "support lies on a line; the polygon has no interior"
            )
        self.support = sorted(set(pts))
        self.vertices = hull
        self.edges = self._edges()
        self.interior = self._interior()

    @classmethod
    def of_poly(cls, poly):
        return cls(poly.support())

    def _edges(self):
        out = []
        verts = self.vertices
        n = len(verts)
        for k in range(n):
            (x1, y1), (x2, y2) = verts[k], verts[(k + 1) % n]
            dx, dy = x2 - x1, y2 - y1
            # counterclockwise boundary: rotate the direction by -90 degrees
            # to point outward
            alpha, beta = dy, -dx
            g = gcd(abs(alpha), abs(beta))
            alpha //= g
            beta //= g
            m = alpha * x1 + beta * y1
            out.append(Edge(alpha, beta, m))
        return out

    def _interior(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        pts = set()
        for i in range(min(xs), max(xs) + 1):
            for j in range(min(ys), max(ys) + 1):
                if all(e.violation(i, j) < 0 for e in self.edges):
                    pts.add((i, j))
        return sorted(pts)

    def contains(self, i, j):
        return all(e.violation(i, j) <= 0 for e in self.edges)

    def boundary_lattice_count(self):
        count = 0
        verts = self.vertices
        for k in range(len(verts)):
            (x1, y1), (x2, y2) = verts[k], verts[(k + 1) % len(verts)]
            count += gcd(abs(x2 - x1), abs(y2 - y1))
        return count

    def area2(self):
        """Twice the Euclidean area (an integer, by the shoelace formula)."""
        total = 0
        verts = self.vertices
        for k in range(len(verts)):
            (x1, y1), (x2, y2) = verts[k], verts[(k + 1) % len(verts)]
            total += x1 * y2 - x2 * y1
        return total


def genus(support_or_poly, nodal_count=0):
    """Genus of the generic curve with the given support.

    Equals the number of interior lattice points of the Newton polygon,
    minus a correction for prescribed nodes.
    """
    polygon = _as_polygon(support_or_poly)
    g = len(polygon.interior) - int(nodal_count)
    if g < 0:
        raise ValueError("more nodes than interior points")
    return g


@dataclass(frozen=True)
class FormKind:
    """Classification of the differential x^(k-1) y^(l-1) dx / P_y."""

    kind: str  # "first", "second" or "third"
    pole_orders: tuple  # per violated edge, empty for the first kind
    edges: tuple  # the violated (third: incident) edges


def classify_form(support_or_poly, k, l):
    """Kind of the monomial differential attached to lattice point (k, l).

    Interior points give holomorphic (first kind) differentials; boundary
    points lying on the polygon give third kind (the two incident edges carry
    the simple poles when the point is a vertex, one edge otherwise); points
    outside give second kind with pole order alpha*k + beta*l - m + 1 on each
    violated edge.
    """
    polygon = _as_polygon(support_or_poly)
    k, l = int(k), int(l)
    violations = [(e, e.violation(k, l)) for e in polygon.edges]
    if all(v < 0 for _, v in violations):
        return FormKind("first", (), ())
    on_edges = tuple(e for e, v in violations if v == 0)
    if on_edges and all(v <= 0 for _, v in violations):
        return FormKind("third", (1,) * len(on_edges), on_edges)
    bad = tuple((e, v) for e, v in violations if v > 0)
    return FormKind(
        "second",
        tuple(v + 1 for _, v in bad),
        tuple(e for e, _ in bad),
    )


def tangent_directions(support_or_poly):
    """Primitive tangent directions of the curve at infinity, one per edge.

    Each boundary edge with outward normal (alpha, beta) contributes the
    lattice direction (beta, -alpha) with multiplicity the edge's lattice
    length.
    """
    polygon = _as_polygon(support_or_poly)
    out = []
    verts = polygon.vertices
    for k, edge in enumerate(polygon.edges):
        (x1, y1), (x2, y2) = verts[k], verts[(k + 1) % len(verts)]
        mult = gcd(abs(x2 - x1), abs(y2 - y1))
        out.append(((edge.beta, -edge.alpha), mult))
    return out


def _as_polygon(support_or_poly):
    if isinstance(support_or_poly, LatticePolygon):
        return support_or_poly
    if hasattr(support_or_poly, "support"):
        sup = support_or_poly.support
        sup = sup() if callable(sup) else sup
        return LatticePolygon(sup)
    return LatticePolygon(support_or_poly)
