"""
Members of a pencil with a first integral
=========================================

Expand E_n(sX + tY) in x, y, z.  Members (s0 : t0) with a first integral of
degree <= n are the common zeros of the coefficient forms.
"""

from extactica import VectorField, family_analysis, render

X = VectorField.from_strings("xyz", ["x", "0", "0"])
Y = VectorField.from_strings("xyz", ["0", "y", "0"])
rep = family_analysis(X, Y, 1)
print("gcd of coefficient forms:", render(rep.gcd_form))
print("members with a degree-1 first integral:", [f"({s}:{t})" for s, t in rep.rational_roots])

# the Lins Neto pencil: no member has a degree-1 first integral
A = VectorField.from_strings("xyz", ["(x^3 - z^3)*x", "(y^3 - z^3)*y", "0"])
B = VectorField.from_strings("xyz", ["-y^2*z^2", "-x^2*z^2", "-x^2*y^2"])
rep = family_analysis(B, A, 1)
print("Lins Neto pencil, gcd:", render(rep.gcd_form), "| roots:", rep.rational_roots)
print("coefficient forms:", len(rep.coefficient_forms), "each of degree", rep.degree_bound, "in (s, t)")
