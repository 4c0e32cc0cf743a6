"""
Contact order of a curve with a field
=====================================

The contact order at p is the least k with X^k(s)(p) != 0.  Invariant
curves through p have flat contact.
"""

from extactica import (VectorField, contact_order, extactic, monomial_basis, osculating_elements,
                       parse_polynomial, render)

# d/dx meets x^2 = 0 at the origin with order 2
X = VectorField.from_strings("x", ["1"], kind="affine")
print("nu(x^2, d/dx, 0) =", contact_order(parse_polynomial("x^2", "x"), X, [0]).value)

# an invariant line of X_2 through [1:1:3]
X2 = VectorField.from_strings("xyz", ["(x - z)*x", "(y - z)*y", "0"])
nu = contact_order(parse_polynomial("x - y", "xyz"), X2, [1, 1, 3], cap=64)
print("x - y at [1:1:3]:", nu.to_dict())

# [1:1:1] is a singular point of Jouanolou's field, so it lies on E_1 = 0;
# the lines through it that osculate to order >= 3 in fact have flat contact
J = VectorField.from_strings("xyz", ["y^2", "z^2", "x^2"])
E = extactic(J, 1).polynomial
p = [1, 1, 1]
print("E_1(J) at [1:1:1]:", E.evaluate(dict(zip("xyz", p))))
for s in osculating_elements(J, monomial_basis(1), p):
    nu = contact_order(s, J, p)
    print("  osculating line", render(s), "flat" if nu.flat else nu.value)
