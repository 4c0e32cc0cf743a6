"""
Extactic curves of a projective vector field
============================================

Build a degree-2 field, compute its first two extactic curves and compare
their degrees with the closed formula.
"""

from extactica import VectorField, expected_degree, extactic, render

# (x - z) x d/dx + (y - z) y d/dy on the projective plane
X = VectorField.from_strings("xyz", ["(x - z)*x", "(y - z)*y", "0"])
print("field:", X)

# E_1 is the 3x3 determinant with rows (x, y, z), X(x, y, z), X^2(x, y, z)
E1 = extactic(X, 1)
print("E_1 =", render(E1.polynomial))
print("degree", E1.degree, "expected", expected_degree(X.degree, 1))

# E_2 uses the six conics x^2, xy, xz, y^2, yz, z^2 and vanishes here
E2 = extactic(X, 2)
print("E_2 vanishes:", E2.vanished, "(expected degree", E2.expected_degree, "if it did not)")

# the row degrees add up to the expected degree
print("row degrees:", E2.row_degrees, "sum", sum(E2.row_degrees))
