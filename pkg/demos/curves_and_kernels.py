"""Plane curves: Newton polygon genus and the second kind kernel.

Reads off the genus of several curves from lattice interior counts,
splits sqrt(Q) for a hyperelliptic curve, builds the correction
polynomial entering the rational kernel formula, and compares the two
kernel constructions on y^2 = x^6 - 1 at a random point pair.
"""

import numpy as np

from rsurf.algebra import parse_poly
from rsurf.fundform import (
    correction_polynomial,
    general_B0,
    hyperelliptic_B,
    hyperelliptic_split,
)
from rsurf.newton import genus

for text in ["y^2 - x^3 - 1", "y^2 - x^6 + 1", "x^3 + y^3 - 1", "y^2 - x^8 + 1"]:
    poly = parse_poly(text)
    print("%-18s genus %d" % (text, genus(poly)))

print()
split = hyperelliptic_split([-1, 0, 0, 0, 0, 0, 1])  # Q = x^6 - 1
print("sqrt(x^6 - 1) = U + O(1/x) with U coefficients", split.u_coeffs)
print("remainder V = Q - U^2 coefficients", split.v_coeffs)

poly = parse_poly("y^2 - x^6 + 1")
corr = correction_polynomial(poly)
print()
print("correction polynomial terms ((i, j, i', j') -> c):")
for key, c in sorted(corr.terms.items()):
    print("  %s -> %s" % (key, c))
print("swap symmetric:", corr.is_swap_symmetric())

x1, x2 = 1.7 + 0.4j, -0.9 + 1.2j
y1 = np.sqrt(x1**6 - 1)
y2 = np.sqrt(x2**6 - 1)
bh = hyperelliptic_B(split, (x1, y1), (x2, y2))
b0 = general_B0(poly, corr, (x1, y1), (x2, y2))
print()
print("hyperelliptic kernel %s" % bh)
print("rational kernel      %s" % b0)
print("difference           %.2e" % abs(bh - b0))
