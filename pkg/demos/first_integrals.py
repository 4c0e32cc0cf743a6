"""
Detecting rational first integrals
==================================

A field has a rational first integral of degree d exactly when E_d
vanishes and E_(d-1) does not.
"""

from extactica import VectorField, extactic, first_integral_degree, render

for k in (1, 2, 3):
    # k x d/dx + y d/dy has the first integral y^k / (x z^(k-1))
    X = VectorField.from_strings("xyz", [f"{k}*x", "y", "0"])
    d = first_integral_degree(X, d_max=3)
    print(f"{k}*x d/dx + y d/dy: first integral of degree {d}")
    for n in range(1, d + 1):
        rep = extactic(X, n)
        print(f"  E_{n} =", render(rep.polynomial) if not rep.vanished else "0")

J = VectorField.from_strings("xyz", ["y^2", "z^2", "x^2"])
print("Jouanolou d=2, up to degree 2:", first_integral_degree(J, d_max=2))
