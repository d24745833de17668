"""Moduli-space volumes and pants decompositions.

Computes the first few Weil-Petersson volume polynomials exactly in the
ring Q[pi^2][L_1^2, ..., L_n^2], then classifies the Strebel critical
graph of a pair of pants for a few boundary length triples.
"""

from rsurf.strebel import classify_pants, quad_diff
from rsurf.wpvol import volume

for g, n in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)]:
    v = volume(g, n)
    print("V_{%d,%d} = %s" % (g, n, v))
    print("  V_{%d,%d}(1, ..., 1) = %.10f" % (g, n, v.eval([1.0] * n)))

print()
for lengths in [(2, 3, 4), (1, 1, 5), (6, 2, 3)]:
    pants = classify_pants(*lengths)
    print("boundary %s -> graph %d edges %s" % (lengths, pants.graph, pants.lengths))

q = quad_diff(0, 3, (2, 3, 4))
print()
print("three-point quadratic differential:")
print("  numerator   %s" % q.numerator)
print("  denominator %s" % q.denominator)
for p in ("0", "1", "inf"):
    from fractions import Fraction

    pt = p if p == "inf" else Fraction(p)
    print("  coefficient of 1/(z - %s)^2: %s" % (p, q.leading_at(pt)))
