"""Extactic curves of polynomial vector fields on the projective plane.

Exact rational arithmetic throughout: sparse polynomials (:mod:`.poly`), a
text/JSON input language (:mod:`.parse`), derivations (:mod:`.derivation`),
extactic determinants (:mod:`.extactic`) and the invariant-curve and
first-integral tools built on them (:mod:`.invariants`).
"""

__version__ = "0.1.0"

from .poly import (MPoly, NotDivisibleError, VariableMismatchError, add, evaluate, exact_divide,
                   gcd, homogenize, mul, partial_derivative, squarefree_part)
from .parse import ParseError, ParsedField, parse_polynomial, parse_vector_field, render
from .derivation import (VectorField, dehomogenize, field_degree, iterate_lie, lie_derivative,
                         linear_combination, projectivize, radial_field, singular_minors)
from .extactic import (ContactOrder, ExtacticReport, LinearSystem, bareiss_determinant,
                       cofactor_determinant, contact_order, determinant, expected_degree, extactic,
                       extactic_ideal_generators, extactic_system, monomial_basis,
                       osculating_elements, wronskian_matrix)
from .invariants import (Cofactor, FamilyReport, FirstIntegralError, curve_count_bound,
                         factor_containment, family_analysis, field_extension_bound,
                         first_integral_degree, invariance_cofactor, invariant_lines,
                         invariant_lines_through_point, jouanolou_bound, rational_linear_factors,
                         solution_count_bound)

__all__ = [name for name in dir() if not name.startswith("_")]
