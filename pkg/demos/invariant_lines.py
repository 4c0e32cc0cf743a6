"""
Invariant lines and their certificates
======================================

Every invariant line divides E_1.  The rational linear factors of E_1 are
candidates; each is kept only if it comes with a cofactor.
"""

from extactica import (VectorField, extactic, invariant_lines, invariant_lines_through_point,
                       rational_linear_factors, render)


def X_d(d):
    k = d - 1
    return VectorField.from_strings("xyz", [f"(x^{k} - z^{k})*x", f"(y^{k} - z^{k})*y", "0"])


for d in (2, 3, 4):
    X = X_d(d)
    E = extactic(X, 1).polynomial
    factors = rational_linear_factors(E)
    lines = invariant_lines(X)
    print(f"d={d}: {len(factors)} rational factors of E_1, {len(lines)} invariant lines (bound {3 * d})")

# certificates: X(L) = K * L
for cert in invariant_lines(X_d(2)):
    print(f"  {render(cert.curve):8s} cofactor {render(cert.cofactor)}")

# lines through a point come from a 2x2 determinant of degree d + 1
print("through [0:0:1]:", [render(c.curve) for c in invariant_lines_through_point(X_d(2), [0, 0, 1])])
print("through [1:1:1]:", [render(c.curve) for c in invariant_lines_through_point(X_d(2), [1, 1, 1])])

# Jouanolou's field has no invariant curves at all
J = VectorField.from_strings("xyz", ["y^2", "z^2", "x^2"])
print("Jouanolou d=2:", invariant_lines(J))
