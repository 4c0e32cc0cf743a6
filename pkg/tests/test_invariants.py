from fractions import Fraction

import pytest

from extactica import (FirstIntegralError, MPoly, exact_divide, extactic, factor_containment,
                       family_analysis, field_extension_bound, first_integral_degree,
                       invariance_cofactor, invariant_lines, invariant_lines_through_point,
                       jouanolou_bound, radial_field, rational_linear_factors)
from extactica.invariants import (binary_linear_factors, bounds_report, curve_count_bound,
                                  curve_count_bound_exact, jouanolou_bound_exact, rational_roots,
                                  solution_count_bound)
from extactica.extactic import expected_degree, monomial_exponents
from extactica.poly import divides

from fields import F_d, LN_X, LN_Y, P, XYZ, X_d, field, jouanolou, random_projective_field


def lines_of(certs):
    return {c.curve for c in certs}


# -- cofactors


def test_cofactor_examples():
    c = invariance_cofactor(X_d(2), P("x - y"))
    assert c.invariant and c.cofactor == P("x + y - z")
    c = invariance_cofactor(X_d(2), P("x"))
    assert c.invariant and c.cofactor == P("x - z")
    c = invariance_cofactor(jouanolou(2), P("x"))
    assert not c.invariant and c.cofactor is None
    with pytest.raises(ValueError):
        invariance_cofactor(X_d(2), MPoly.zero(XYZ))


def test_cofactor_normalizes_the_curve():
    c = invariance_cofactor(X_d(2), P("-3*x + 3*y"))
    assert c.curve == P("x - y")
    assert c.to_dict() == {"curve": "x - y", "cofactor": "x + y - z", "invariant": True}


def test_cofactor_identity_and_degree():
    for d in (2, 3, 4):
        X = X_d(d)
        for L in (P("x"), P("y"), P("z"), P("x - z"), P("y - z"), P("x - y")):
            c = invariance_cofactor(X, L)
            assert c.invariant
            assert X(c.curve) == c.cofactor * c.curve
            assert c.cofactor.is_zero() or (c.cofactor.is_homogeneous() and c.cofactor.total_degree() == d - 1)


def test_invariant_conic_certificate():
    # x*y - z^2 is a first integral of x d/dx - y d/dy: invariant with cofactor 0
    X = field("x", "-y", "0")
    c = invariance_cofactor(X, P("x*y - z^2"))
    assert c.invariant and c.cofactor.is_zero()
    c = invariance_cofactor(X, P("x^2 + y^2 - z^2"))
    assert not c.invariant


# -- factor containment


def test_factor_containment_examples():
    for L in (P("x"), P("y"), P("z"), P("x - z"), P("y - z"), P("x - y")):
        assert factor_containment(X_d(2), L, 1)
    assert factor_containment(field("2*x", "y", "0"), P("x"), 1)
    assert factor_containment(field("x", "y", "0"), P("x + 2*y - 3*z"), 1)


def test_factor_containment_errors():
    with pytest.raises(ValueError):
        factor_containment(X_d(2), P("x^2"), 1)
    with pytest.raises(ValueError):
        factor_containment(X_d(2), P("x^2 + y"), 2)


def test_factor_containment_may_hold_for_non_invariant_curves():
    # a non-invariant factor of E_1 is allowed: the implication is one-directional
    X = jouanolou(2)
    E = extactic(X, 1).polynomial
    assert not E.is_zero()
    assert not invariance_cofactor(X, P("x")).invariant


def test_F_d_divides_E1():
    for d in (2, 3, 4):
        q = exact_divide(extactic(X_d(d), 1).polynomial, F_d(d))
        assert q.is_constant() and q.constant_value() != 0


# -- first integrals


def test_first_integral_degree_examples():
    assert first_integral_degree(field("x", "y", "0")) == 1
    assert first_integral_degree(field("2*x", "y", "0")) == 2
    assert first_integral_degree(jouanolou(2), 2) is None
    with pytest.raises(ValueError):
        first_integral_degree(X_d(2), 0)


def test_first_integral_minimality():
    for X in (field("2*x", "y", "0"), X_d(2)):
        d = first_integral_degree(X)
        assert d == 2
        assert extactic(X, d).vanished and not extactic(X, d - 1).vanished


def test_first_integral_of_X2_is_a_ratio_of_invariant_conics():
    # (x - z)*y / (x*(y - z)) is constant along X_2
    X = X_d(2)
    f, g = P("(x - z)*y"), P("x*(y - z)")
    assert X(f) * g == f * X(g)


# -- rational roots and linear factors


def test_rational_roots():
    assert rational_roots([-1, 0, 1]) == [-1, 1]
    assert rational_roots([0, 0, 3]) == [0]
    assert rational_roots([1, 0, 1]) == []
    assert rational_roots([-2, 3]) == [Fraction(2, 3)]
    assert rational_roots([Fraction(1, 2), Fraction(-3, 2), 1]) == [Fraction(1, 2), 1]
    assert rational_roots([5]) == []


def test_binary_linear_factors():
    ring = ("s", "t")
    got = binary_linear_factors(P("s^2*t - s*t^2", ring), "s", "t")
    assert len(got) == 3
    for a, b in got:
        L = P("s", ring).scale(a) + P("t", ring).scale(b)
        assert divides(L, P("s^2*t - s*t^2", ring))


def test_rational_linear_factors_examples():
    got = rational_linear_factors(F_d(2))
    assert {L for L, _ in got} == {P(t) for t in ("x", "y", "z", "x - z", "y - z", "x - y")}
    assert all(k == 1 for _, k in got)
    assert rational_linear_factors(P("-z^3")) == [(P("z"), 3)]
    assert rational_linear_factors(P("x^2 + y^2 + z^2")) == []


def test_rational_linear_factors_multiplicities_and_rational_slopes():
    F = P("(2*x - 3*y + z)^2*(x + 5*z)*(y^2 + z^2)")
    got = dict(rational_linear_factors(F))
    assert got == {P("2*x - 3*y + z"): 2, P("x + 5*z"): 1}


def test_rational_linear_factors_errors():
    with pytest.raises(ValueError):
        rational_linear_factors(MPoly.zero(XYZ))
    with pytest.raises(ValueError):
        rational_linear_factors(P("x^2 + y"))


def test_rational_linear_factors_of_products_of_random_lines(rng):
    for _ in range(15):
        lines = []
        for _ in range(rng.randint(1, 4)):
            L = sum((P(v).scale(rng.randint(-3, 3)) for v in XYZ), MPoly.zero(XYZ))
            if not L.is_zero():
                lines.append(L.primitive())
        if not lines:
            continue
        F = MPoly.constant(1, XYZ)
        for L in lines:
            F = F * L
        F = F * P("x^2 + y^2 + 2*z^2")
        got = dict(rational_linear_factors(F))
        for L in lines:
            assert got.get(L, 0) == lines.count(L)
        assert sum(got.values()) == len(lines)


# -- invariant lines


def test_invariant_lines_X_d():
    assert lines_of(invariant_lines(X_d(2))) == {P(t) for t in ("x", "y", "z", "x - z", "y - z", "x - y")}
    expected3 = {P(t) for t in ("x", "y", "z", "x - z", "x + z", "y - z", "y + z", "x - y", "x + y")}
    assert lines_of(invariant_lines(X_d(3))) == expected3
    # d = 4: the remaining lines x - w z with w a primitive cube root of unity are irrational
    assert len(invariant_lines(X_d(4))) == 6


def test_invariant_lines_jouanolou_and_errors():
    assert invariant_lines(jouanolou(2)) == []
    with pytest.raises(FirstIntegralError):
        invariant_lines(field("x", "y", "0"))


def test_invariant_lines_respect_the_bound(rng):
    for _ in range(10):
        X = random_projective_field(rng, 2, terms=2)
        if extactic(X, 1).vanished:
            continue
        certs = invariant_lines(X)
        assert len(certs) <= 3 * X.degree
        for c in certs:
            assert c.invariant and X(c.curve) == c.cofactor * c.curve


def test_lines_through_point_examples():
    got = invariant_lines_through_point(X_d(2), [0, 0, 1])
    assert lines_of(got) == {P("x"), P("y"), P("x - y")}
    with pytest.raises(FirstIntegralError):
        invariant_lines_through_point(radial_field(), [1, 2, 3])


def test_lines_through_other_points():
    X = X_d(2)
    all_lines = lines_of(invariant_lines(X))
    for p in ([1, 1, 1], [1, 0, 0], [0, 1, 0], [1, 1, 0], [2, 3, 1]):
        pt = dict(zip(XYZ, p))
        expected = {L for L in all_lines if L.evaluate(pt) == 0}
        assert lines_of(invariant_lines_through_point(X, p)) == expected


def test_lines_through_point_errors():
    with pytest.raises(ValueError):
        invariant_lines_through_point(X_d(2), [0, 0, 0])
    with pytest.raises(ValueError):
        invariant_lines_through_point(X_d(2), [1, 2])


def test_lines_through_point_bound_on_random_fields(rng):
    checked = 0
    while checked < 15:
        X = random_projective_field(rng, 2, terms=3)
        p = [rng.randint(-2, 2) for _ in range(3)]
        if not any(p):
            continue
        try:
            certs = invariant_lines_through_point(X, p)
        except FirstIntegralError:
            continue
        assert len(certs) <= X.degree + 1
        pt = dict(zip(XYZ, p))
        assert all(c.curve.evaluate(pt) == 0 and c.invariant for c in certs)
        checked += 1


# -- bounds


def test_bound_examples():
    assert solution_count_bound(2, 1) == 6
    assert solution_count_bound(2, 2) == 27
    assert all(solution_count_bound(d, 1) == 3 * d for d in range(11))
    assert curve_count_bound(2, 1) == 6
    assert curve_count_bound(2, 2) == 13 and curve_count_bound_exact(2, 2) == Fraction(27, 2)
    assert curve_count_bound(1, 1) == 3
    assert [jouanolou_bound(d) for d in (0, 1, 2, 4)] == [0, 1, 4, 12]
    assert jouanolou_bound_exact(1) == Fraction(3, 2)
    assert field_extension_bound(2, 1) == 4
    assert field_extension_bound(1, 1) == 1
    assert field_extension_bound(3, 2) == min(expected_degree(3, 2), 7)


def test_curve_bound_is_solution_bound_over_n():
    for d in range(8):
        for n in range(1, 6):
            assert curve_count_bound_exact(d, n) == Fraction(solution_count_bound(d, n), n)


def test_bounds_report_and_errors():
    rep = bounds_report(2, 2)
    assert rep["curve_count_bound"] == 13 and rep["curve_count_bound_exact"] == "27/2"
    with pytest.raises(ValueError):
        curve_count_bound(-1, 1)
    with pytest.raises(ValueError):
        jouanolou_bound(-1)


# -- pencils


def test_family_example():
    rep = family_analysis(field("x", "0", "0"), field("0", "y", "0"), 1)
    ring = ("s", "t")
    assert not rep.family_wide
    assert rep.gcd_form == P("s^2*t - s*t^2", ring)
    assert rep.rational_roots == [(1, 0), (1, 1), (0, 1)]
    assert rep.coefficient_forms == {(1, 1, 1): P("s*t^2 - s^2*t", ring)}
    assert rep.degree_bound == 3 == rep.gcd_degree


def test_family_roots_are_first_integral_members():
    X, Y = field("x", "0", "0"), field("0", "y", "0")
    for s0, t0 in family_analysis(X, Y, 1).rational_roots:
        member = field(f"{s0}*x", f"{t0}*y", "0")
        assert extactic(member, 1).vanished


def test_family_coefficient_forms_are_homogeneous(rng):
    X = random_projective_field(rng, 1)
    Y = random_projective_field(rng, 1)
    for n in (1, 2):
        rep = family_analysis(X, Y, n)
        N = len(monomial_exponents(n))
        for form in rep.coefficient_forms.values():
            assert form.is_homogeneous() and form.total_degree() == N * (N - 1) // 2
        for s0, t0 in rep.rational_roots:
            assert all(f.evaluate({"s": s0, "t": t0}) == 0 for f in rep.coefficient_forms.values())


def test_family_specialization_consistency(rng):
    X = random_projective_field(rng, 2, terms=3)
    Y = random_projective_field(rng, 2, terms=3)
    E = family_analysis(X, Y, 1).extactic_polynomial
    for _ in range(5):
        s0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        t0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        member = type(X)(XYZ, [a.scale(s0) + b.scale(t0) for a, b in zip(X.coefficients, Y.coefficients)])
        direct = extactic(member, 1).polynomial if not member.is_zero() else MPoly.zero(XYZ)
        assert E.specialize({"s": s0, "t": t0}).with_vars(XYZ) == direct


def test_family_of_identical_fields_degenerates():
    X = X_d(2)
    rep = family_analysis(X, X, 1)
    ring = ("s", "t")
    E = extactic(X, 1).polynomial
    power = P("s + t", ring) ** 3
    for exps, form in rep.coefficient_forms.items():
        assert form == power.scale(E.terms[exps])
    assert rep.rational_roots == [(1, -1)]


def test_family_wide_vanishing():
    rep = family_analysis(field("x", "y", "0"), field("2*x", "2*y", "0"), 1)
    assert rep.family_wide and rep.gcd_degree is None and rep.rational_roots == []


def test_family_errors():
    with pytest.raises(ValueError):
        family_analysis(X_d(2), X_d(3), 1)
    with pytest.raises(ValueError):
        family_analysis(field("s*x", "y", "0", params=("s",)), X_d(2), 1)


def test_lins_neto_gcd_is_constant():
    rep = family_analysis(field(*LN_Y), field(*LN_X), 1)
    assert rep.gcd_form.is_constant() and rep.rational_roots == []


def test_lins_neto_sign_of_dz_term_matters():
    from fields import L9, LN_RING, LN_Y_PLUS, lins_neto_pencil
    # with -x^2*y^2 in the d/dz slot every member keeps the nine lines invariant
    E = extactic(lins_neto_pencil(), 1).polynomial
    assert divides(P(L9, LN_RING), E)
    for L in (P("x - y"), P("y - z"), P("x - z")):
        assert invariance_cofactor(field(*LN_Y), L).invariant
    # with +x^2*y^2 they are not
    E_plus = extactic(lins_neto_pencil(LN_Y_PLUS), 1).polynomial
    assert not divides(P(L9, LN_RING), E_plus)
    assert not invariance_cofactor(field(*LN_Y_PLUS), P("x - z")).invariant
