import itertools
import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from extactica import (LinearSystem, MPoly, VariableMismatchError, bareiss_determinant,
                       cofactor_determinant, contact_order, determinant, expected_degree, extactic,
                       extactic_ideal_generators, extactic_system, monomial_basis, osculating_elements,
                       radial_field, singular_minors, wronskian_matrix)
from extactica.extactic import default_cap, row_degree_sum

from fields import (P, XYZ, X_d, field, from_sympy, jouanolou, random_poly, random_projective_field,
                    to_sympy)


def leibniz_det(m):
    """Permutation-sum determinant, the textbook definition."""
    n = len(m)
    total = MPoly.zero(m[0][0].vars)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MPoly.constant(-1 if inversions % 2 else 1, total.vars)
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def random_matrix(rng, size, ring=XYZ):
    return [[random_poly(rng, ring, max_terms=3, max_deg=2) for _ in range(size)] for _ in range(size)]


# -- bases and matrices


def test_monomial_basis_examples():
    assert monomial_basis(1).basis == (P("x"), P("y"), P("z"))
    assert monomial_basis(2).basis == tuple(P(t) for t in ("x^2", "x*y", "x*z", "y^2", "y*z", "z^2"))
    for n in range(1, 7):
        V = monomial_basis(n)
        assert V.dim == n * (n + 3) // 2 + 1 == comb(n + 2, 2)
        assert V.degree == n
    with pytest.raises(ValueError):
        monomial_basis(0)


def test_linear_system_rejects_dependent_bases():
    with pytest.raises(ValueError, match="dependent"):
        LinearSystem.from_polys([P("x + y"), P("x"), P("y")])
    V = LinearSystem.from_polys([P("x^2"), P("y")])
    assert V.degree is None and V.dim == 2


def test_wronskian_matrix_examples():
    V = monomial_basis(1)
    X = jouanolou(2)
    assert wronskian_matrix(X, V, 1) == [list(V.basis)]
    m = wronskian_matrix(X, V, 3)
    assert m[1] == [X(P("x")), X(P("y")), X(P("z"))]
    assert m[2] == [X(e) for e in m[1]]
    assert wronskian_matrix(radial_field(), V, 3) == [list(V.basis)] * 3


def test_wronskian_matrix_errors():
    with pytest.raises(ValueError):
        wronskian_matrix(jouanolou(2), monomial_basis(1), 0)
    foreign = LinearSystem.from_polys([P("w", ("w",))])
    with pytest.raises(VariableMismatchError):
        wronskian_matrix(jouanolou(2), foreign, 1)


# -- determinants


def test_determinant_examples():
    x, y, z, o = P("x"), P("y"), P("z"), P("0")
    for det in (determinant, bareiss_determinant, cofactor_determinant):
        assert det([[x, o, o], [o, y, o], [o, o, z]]) == P("x*y*z")
        assert det([[x, y, z], [y, z, o], [z, o, o]]) == P("-z^3")
        assert det([[x, y, z], [y, x, z], [x, y, z]]).is_zero()


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        determinant([[P("x"), P("y")]])
    with pytest.raises(ValueError):
        determinant([])


def test_determinant_zero_row_and_column_short_circuit():
    o = P("0")
    m = [[P("x + 1"), o, P("y")], [P("z"), o, P("x*y")], [P("1"), o, P("3")]]
    assert bareiss_determinant(m).is_zero()
    assert bareiss_determinant([list(r) for r in zip(*m)]).is_zero()


def test_bareiss_matches_sympy_on_larger_matrices(rng):
    for size in (5, 6):
        m = random_matrix(rng, size)
        syms = sympy.symbols(XYZ)
        entries = sympy.Matrix([[to_sympy(e)[0] for e in row] for row in m])
        expected = from_sympy(sympy.Poly(entries.det(method="berkowitz"), *syms, domain="QQ"), XYZ)
        assert bareiss_determinant(m) == expected


def test_bareiss_handles_rational_entries():
    m = [[P("1/2*x"), P("1/3*y")], [P("2/5"), P("z")]]
    assert bareiss_determinant(m) == P("1/2*x*z - 2/15*y")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**9))
def test_determinant_agrees_with_leibniz(size, seed):
    m = random_matrix(random.Random(seed), size)
    expected = leibniz_det(m)
    assert bareiss_determinant(m) == expected
    assert cofactor_determinant(m) == expected


def test_determinant_sign_under_row_swap(rng):
    m = random_matrix(rng, 4)
    swapped = [m[1], m[0]] + m[2:]
    assert bareiss_determinant(swapped) == -bareiss_determinant(m)


# -- extactic curves


def test_extactic_examples():
    assert extactic(field("x", "y", "0"), 1).vanished
    rep = extactic(field("2*x", "y", "0"), 1)
    assert rep.polynomial == P("-2*x*y*z")
    assert rep.expected_degree == 3 and rep.degree == 3 and not rep.vanished


def test_extactic_of_nilpotent_field():
    assert extactic(field("y", "z", "0"), 1).polynomial == P("-z^3")


def test_extactic_report_fields():
    rep = extactic(X_d(2), 2)
    assert rep.system.dim == 6
    assert tuple(rep.row_degrees) == (2, 3, 4, 5, 6, 7)
    assert rep.expected_degree == 27 == sum(rep.row_degrees)
    d = rep.to_dict()
    assert d["vanished"] is True and d["polynomial"] == "0"


def test_extactic_errors():
    with pytest.raises(ValueError):
        extactic(field("0", "0", "0"), 1)
    with pytest.raises(ValueError):
        extactic(jouanolou(2), 0)
    with pytest.raises(ValueError):
        extactic(field("x", "1", kind="affine", variables=("x", "y")), 1)


def test_expected_degree_examples():
    assert [expected_degree(d, 1) for d in range(6)] == [0, 3, 6, 9, 12, 15]
    assert expected_degree(2, 2) == 27
    assert expected_degree(1, 1) == 3
    for d in range(11):
        for n in range(1, 7):
            assert expected_degree(d, n) == row_degree_sum(d, n)


@pytest.mark.parametrize("d, n", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_extactic_degree_on_random_fields(d, n, rng):
    X = random_projective_field(rng, d)
    rep = extactic(X, n)
    assert rep.vanished or (rep.polynomial.is_homogeneous() and rep.degree == expected_degree(d, n))


def test_radial_degeneracy():
    for n in (1, 2, 3):
        assert extactic(radial_field(), n).vanished


def test_extactic_system_examples():
    X = jouanolou(2)
    V = LinearSystem.from_polys([P("x"), P("y")])
    assert extactic_system(X, V).polynomial == P("x*z^2 - y^3")
    F = P("x*y - z^2")
    assert extactic_system(X, LinearSystem.from_polys([F])).polynomial == F
    for n in (1, 2):
        assert extactic_system(X_d(2), monomial_basis(n)).polynomial == extactic(X_d(2), n).polynomial


def test_basis_change_covariance(rng):
    X = random_projective_field(rng, 2)
    E = extactic(X, 1).polynomial
    base = monomial_basis(1).basis
    done = 0
    while done < 5:
        A = [[Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(3)] for _ in range(3)]
        detA = sympy.Matrix(A).det()
        if detA == 0:
            continue
        new = [sum((b.scale(a) for a, b in zip(row, base)), MPoly.zero(XYZ)) for row in A]
        E2 = extactic_system(X, LinearSystem.from_polys(new)).polynomial
        assert E2 == E.scale(Fraction(int(detA.p), int(detA.q)))
        done += 1


def test_homogeneity_with_parameters_is_per_member():
    X = field("s*x", "t*y", "0", params=("s", "t"))
    rep = extactic(X, 1)
    assert rep.polynomial == P("s*t^2*x*y*z - s^2*t*x*y*z", XYZ + ("s", "t"))
    assert X.params == ("s", "t")


# -- extactic ideal


def test_ideal_generator_counts_and_first_element():
    X = jouanolou(2)
    V = monomial_basis(1)
    gens = extactic_ideal_generators(X, V, 2)
    assert gens == [extactic(X, 1).polynomial]
    for K in (3, 4, 5):
        assert len(extactic_ideal_generators(X, V, K)) == comb(K + 1, 3)
    with pytest.raises(ValueError):
        extactic_ideal_generators(X, V, 1)


def test_ideal_generators_vanish_on_singular_points():
    X = jouanolou(2)
    gens = extactic_ideal_generators(X, monomial_basis(1), 3)
    sing = {"x": 1, "y": 1, "z": 1}
    assert all(m.evaluate(sing) == 0 for m in singular_minors(X))
    assert all(g.evaluate(sing) == 0 for g in gens)
    # at a nonsingular rational point some generator is nonzero
    for pt in ({"x": 1, "y": 0, "z": 0}, {"x": 1, "y": 2, "z": 3}, {"x": 0, "y": 1, "z": -1}):
        assert any(m.evaluate(pt) != 0 for m in singular_minors(X))
        assert any(g.evaluate(pt) != 0 for g in gens)


# -- contact order


def test_contact_order_examples():
    X = field("1", kind="affine", variables=("x",))
    nu = contact_order(P("x^2", ("x",)), X, [0])
    assert nu.value == 2 and not nu.flat
    assert contact_order(P("x + y"), jouanolou(2), [1, 0, 0]).value == 0


def test_contact_order_flat_for_invariant_curve():
    X = X_d(2)
    for cap in (8, 64):
        nu = contact_order(P("x - y"), X, [1, 1, 5], cap)
        assert nu.flat and nu.certified and nu.cap == cap
        assert nu.at_least(cap)


def test_contact_order_default_cap_and_errors():
    X = X_d(2)
    assert default_cap(X, P("x - y")) == 12
    assert default_cap(X, P("x^2 - y*z")) == 24
    assert contact_order(P("x - y"), X, [1, 1, 5]).cap == 12
    with pytest.raises(ValueError):
        contact_order(P("x"), X, [1, 1])
    with pytest.raises(ValueError):
        contact_order(P("x"), X, [1, 1, 1], cap=-1)


def test_contact_order_hits_the_cap_exactly():
    X = field("1", kind="affine", variables=("x",))
    s = P("x^5", ("x",))
    assert contact_order(s, X, [0], cap=5).value == 5
    nu = contact_order(s, X, [0], cap=4)
    assert nu.flat and not nu.certified


def _rational_point_on(E, rng):
    """Rational zero of a binary restriction of E, or None."""
    from extactica.invariants import rational_roots
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    # restrict to the line through [a:b:1] in the y-direction: points [a : b + u : 1]
    T = ("u",)
    u = P("u", T)
    g = E.substitute({"x": MPoly.constant(a, T), "y": u + b, "z": MPoly.constant(1, T)}, T)
    if g.is_zero():
        return [a, b, 1]
    coeffs = [g.terms.get((k,), 0) for k in range(g.total_degree() + 1)]
    roots = rational_roots(coeffs)
    if not roots:
        return None
    return [Fraction(a), b + roots[0], Fraction(1)]


def test_contact_extactic_consistency(rng):
    V = monomial_basis(1)
    checked = 0
    while checked < 8:
        X = random_projective_field(rng, 2, terms=2)
        E = extactic(X, 1).polynomial
        if E.is_zero():
            continue
        p = _rational_point_on(E, rng)
        if p is None:
            continue
        point = dict(zip(XYZ, p))
        assert E.evaluate(point) == 0
        elems = osculating_elements(X, V, p)
        assert elems
        for s in elems:
            assert contact_order(s, X, p).at_least(V.dim)
        # off the curve nothing osculates to that order
        q = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        if any(q) and E.evaluate(dict(zip(XYZ, q))) != 0:
            assert osculating_elements(X, V, q) == []
        checked += 1
