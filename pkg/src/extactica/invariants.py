"""Invariant curves, first integrals, counting bounds and pencils of fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import floor, gcd as igcd, lcm
from typing import Sequence

from sympy import divisors

from .derivation import VectorField, linear_combination, lie_derivative
from .extactic import expected_degree, extactic
from .parse import render
from .poly import MPoly, NotDivisibleError, divides, exact_divide, gcd, squarefree_part


class FirstIntegralError(ValueError):
    """The requested object is degenerate because a first integral exists."""


@dataclass(frozen=True)
class Cofactor:
    """Invariance certificate: ``X(curve) == cofactor * curve`` when ``invariant``."""

    curve: MPoly
    cofactor: MPoly | None
    invariant: bool

    def to_dict(self) -> dict:
        return {
            "curve": render(self.curve),
            "cofactor": render(self.cofactor) if self.cofactor is not None else None,
            "invariant": self.invariant,
        }


def invariance_cofactor(X: VectorField, F: MPoly) -> Cofactor:
    if F.is_zero():
        raise ValueError("the zero polynomial does not define a curve")
    F = F.primitive()
    XF = lie_derivative(X, F)
    F = F.with_vars(X.ring)
    try:
        return Cofactor(F, exact_divide(XF, F), True)
    except NotDivisibleError:
        return Cofactor(F, None, False)


def factor_containment(X: VectorField, F: MPoly, n: int) -> bool:
    """Whether ``F`` divides ``E_n(X)`` (vacuously true when ``E_n`` vanishes)."""
    F = F.with_vars(X.ring)
    if not F.is_homogeneous(X.variables):
        raise ValueError("curve must be homogeneous")
    if F.degree_wrt(X.variables) > n:
        raise ValueError(f"curve degree {F.degree_wrt(X.variables)} exceeds n = {n}")
    E = extactic(X, n).polynomial
    return E.is_zero() or divides(F, E)


def first_integral_degree(X: VectorField, d_max: int = 3) -> int | None:
    """Least ``d <= d_max`` with ``E_d(X) == 0``; then ``E_(d-1)(X) != 0`` by minimality."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    for d in range(1, d_max + 1):
        if extactic(X, d).vanished:
            return d
    return None


# rational linear factors


def _integer_coeffs(coeffs: Sequence) -> list:
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(igcd, ints, 0)
    return [c // g for c in ints] if g else ints


def _horner(coeffs: list, num: int, den: int) -> int:
    """``den^deg * f(num/den)`` for integer ``coeffs`` listed from the constant term up."""
    acc = 0
    deg = len(coeffs) - 1
    for k in range(deg, -1, -1):
        acc = acc * num + coeffs[k] * den ** (deg - k)
    return acc


def rational_roots(coeffs: Sequence) -> list:
    """Distinct rational roots of ``sum coeffs[k] * r^k``, in increasing order."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return []
    c = _integer_coeffs(c)
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        while c[0] == 0:
            c.pop(0)
    if len(c) == 1:
        return roots
    lead, trail = abs(c[-1]), abs(c[0])
    f1 = sum(c)
    fm1 = sum(v if k % 2 == 0 else -v for k, v in enumerate(c))
    for q in divisors(lead):
        for p in divisors(trail):
            if igcd(p, q) != 1:
                continue
            for num in (p, -p):
                # f(1) and f(-1) must be divisible by (q - num) and (q + num)
                if q - num and f1 % (q - num):
                    continue
                if q + num and fm1 % (q + num):
                    continue
                if _horner(c, num, q) == 0:
                    roots.append(Fraction(num, q))
    return sorted(set(roots))


def binary_linear_factors(B: MPoly, u: str, w: str) -> list:
    """Normalized ``(a, b)`` with ``a*u + b*w`` dividing the binary form ``B``."""
    if B.is_zero():
        raise ValueError("zero form")
    iu, iw = B.vars.index(u), B.vars.index(w)
    m = B.degree_wrt((u, w))
    coeffs = [0] * (m + 1)
    for exps, c in B.terms.items():
        if any(e for k, e in enumerate(exps) if k not in (iu, iw)):
            raise ValueError(f"form involves variables other than {u!r}, {w!r}")
        coeffs[exps[iu]] = c
    out = []
    if coeffs[m] == 0:
        out.append((0, 1))
    for r in rational_roots(coeffs):
        out.append((r.denominator, -r.numerator))
    return out


def _linear_form(coeffs: Sequence, ring: tuple) -> MPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[tuple(int(k == i) for k in range(len(ring)))] = c
    return MPoly(ring, terms).primitive()


def _line_key(L: MPoly) -> tuple:
    n = len(L.vars)
    return tuple(-Fraction(L.terms.get(tuple(int(k == i) for k in range(n)), 0)) for i in range(n))


def rational_linear_factors(P: MPoly) -> list:
    """All rational linear forms dividing a ternary form, with multiplicities.

    Candidates come from the binary forms cut out on the three coordinate
    lines and are each confirmed by exact division.
    """
    if P.is_zero():
        raise ValueError("the zero polynomial has no factorization")
    if len(P.vars) != 3:
        raise ValueError("rational_linear_factors needs a polynomial in exactly three variables")
    if not P.is_homogeneous():
        raise ValueError("polynomial must be homogeneous")
    ring = P.vars
    found = []
    Q = P
    for i, v in enumerate(ring):
        L = MPoly.variable(v, ring)
        k = 0
        while True:
            try:
                Q = exact_divide(Q, L)
            except NotDivisibleError:
                break
            k += 1
        if k:
            found.append((L, k))
    if Q.total_degree() > 0:
        Q = squarefree_part(Q)
        x, y, z = ring
        Bz = Q.specialize({z: 0})
        By = Q.specialize({y: 0})
        Bx = Q.specialize({x: 0})
        cands = set()
        xy = [Fraction(b, a) for a, b in binary_linear_factors(Bz, x, y) if a]
        xz = [Fraction(c, a) for a, c in binary_linear_factors(By, x, z) if a]
        for beta in xy:
            for gamma in xz:
                cands.add((1, beta, gamma))
        for b, c in binary_linear_factors(Bx, y, z):
            if b and c:
                cands.add((0, 1, Fraction(c, b)))
        for coeffs in cands:
            if sum(1 for c in coeffs if c) < 2:
                continue
            L = _linear_form(coeffs, ring)
            k = 0
            R = P
            while True:
                try:
                    R = exact_divide(R, L)
                except NotDivisibleError:
                    break
                k += 1
            if k:
                found.append((L, k))
    return sorted(found, key=lambda t: _line_key(t[0]))


def invariant_lines(X: VectorField) -> list:
    """Invariant lines defined over Q, as certificates.

    Every invariant line divides ``E_1(X)``; its rational linear factors are
    re-checked for invariance because the converse need not hold.
    """
    if X.params:
        raise ValueError("invariant_lines needs a field without parameters")
    E = extactic(X, 1)
    if E.vanished:
        raise FirstIntegralError("E_1 vanishes identically: the field has a degree-1 first integral "
                                 "and infinitely many invariant lines (see first_integral_degree)")
    lines = []
    for L, _ in rational_linear_factors(E.polynomial):
        cert = invariance_cofactor(X, L)
        if cert.invariant:
            lines.append(cert)
    return lines


def _transform_to_origin(p: Sequence) -> tuple:
    p = [Fraction(c) for c in p]
    if len(p) != 3 or not any(p):
        raise ValueError("point must have three rational coordinates, not all zero")
    k = max(i for i in range(3) if p[i])
    i, j = [m for m in range(3) if m != k]
    return i, j, k, p[i] / p[k], p[j] / p[k]


def invariant_lines_through_point(X: VectorField, p: Sequence) -> list:
    """Invariant rational lines through the projective point ``p``.

    Coordinates are changed so that ``p`` becomes ``[0:0:1]``:
    ``u = x_i - (p_i/p_k) x_k``, ``v = x_j - (p_j/p_k) x_k``, ``w = x_k`` with
    ``k`` the last nonzero coordinate.  Every invariant line through ``p``
    divides ``u X(v) - v X(u)``, a form of degree ``d + 1``.
    """
    if X.params or len(X.variables) != 3 or X.kind != "projective":
        raise ValueError("needs a parameter-free projective field in three variables")
    i, j, k, ci, cj = _transform_to_origin(p)
    ring = X.ring
    xs = [MPoly.variable(v, ring) for v in ring]
    u = xs[i] - xs[k].scale(ci)
    v = xs[j] - xs[k].scale(cj)
    D = u * lie_derivative(X, v) - v * lie_derivative(X, u)
    if D.is_zero():
        raise FirstIntegralError("every line through the point is invariant")
    new = ("u", "v", "w")
    U, V, W = (MPoly.variable(n, new) for n in new)
    Dn = D.substitute({ring[i]: U + W.scale(ci), ring[j]: V + W.scale(cj), ring[k]: W}, new)
    lines = []
    for L, _ in rational_linear_factors(Dn):
        a = L.terms.get((1, 0, 0), 0)
        b = L.terms.get((0, 1, 0), 0)
        if L.terms.get((0, 0, 1), 0):
            continue
        cert = invariance_cofactor(X, u.scale(a) + v.scale(b))
        if cert.invariant:
            lines.append(cert)
    return sorted(lines, key=lambda c: _line_key(c.curve))


# counting bounds


def solution_count_bound(d: int, n: int) -> int:
    """Bound on ``sum_{i<=n} i * n_i(X)`` without first integral of degree <= n."""
    return expected_degree(d, n)


def curve_count_bound_exact(d: int, n: int) -> Fraction:
    if d < 0 or n < 1:
        raise ValueError("need d >= 0 and n >= 1")
    return Fraction(d * (n**3 + 6 * n**2 + 11 * n + 6) - n**3 - 2 * n**2 + n + 2, 8)


def curve_count_bound(d: int, n: int) -> int:
    """Maximum number of invariant curves of degree ``n`` (floor of the closed form)."""
    return floor(curve_count_bound_exact(d, n))


def jouanolou_bound_exact(d: int) -> Fraction:
    if d < 0:
        raise ValueError("need d >= 0")
    return Fraction(d * (d + 2), 2)


def jouanolou_bound(d: int) -> int:
    return floor(jouanolou_bound_exact(d))


def field_extension_bound(d: int, n: int) -> int:
    """Degree of a field of definition above which a first integral is forced."""
    return min(solution_count_bound(d, n), jouanolou_bound(d))


def bounds_report(d: int, n: int) -> dict:
    return {
        "d": d,
        "n": n,
        "extactic_degree": expected_degree(d, n),
        "solution_count_bound": solution_count_bound(d, n),
        "curve_count_bound": curve_count_bound(d, n),
        "curve_count_bound_exact": str(curve_count_bound_exact(d, n)),
        "jouanolou_bound": jouanolou_bound(d),
        "jouanolou_bound_exact": str(jouanolou_bound_exact(d)),
        "field_extension_bound": field_extension_bound(d, n),
    }


# pencils


@dataclass(frozen=True)
class FamilyReport:
    """``E_n(sX + tY) = sum P_(a,b,c)(s, t) x^a y^b z^c`` and what it says about the pencil.

    ``rational_roots`` are the rational members ``(s0:t0)`` whose ``E_n``
    vanishes, i.e. which have a first integral of degree <= n.  When
    ``family_wide`` is set every member does.
    """

    pencil_degree: int
    n: int
    coefficient_forms: dict
    gcd_form: MPoly
    rational_roots: list
    degree_bound: int | None
    family_wide: bool = False
    params: tuple = ("s", "t")
    extactic_polynomial: MPoly | None = field(default=None, compare=False)

    @property
    def gcd_degree(self) -> int | None:
        """Upper bound on the number of members with first integral of degree <= n."""
        if self.family_wide:
            return None
        return self.gcd_form.total_degree()

    def to_dict(self) -> dict:
        forms = {",".join(map(str, k)): render(v) for k, v in self.coefficient_forms.items()}
        return {
            "pencil_degree": self.pencil_degree,
            "n": self.n,
            "params": list(self.params),
            "family_wide": self.family_wide,
            "gcd_form": render(self.gcd_form),
            "gcd_degree": self.gcd_degree,
            "rational_roots": [[str(a), str(b)] for a, b in self.rational_roots],
            "degree_bound": self.degree_bound,
            "coefficient_forms": forms,
        }


def family_analysis(X: VectorField, Y: VectorField, n: int, s: str = "s", t: str = "t") -> FamilyReport:
    if X.params or Y.params:
        raise ValueError("family_analysis needs parameter-free fields")
    Z = linear_combination(s, X, t, Y)
    E = extactic(Z, n).polynomial
    pring = (s, t)
    nx = len(X.variables)
    groups: dict = {}
    for exps, c in E.terms.items():
        groups.setdefault(exps[:nx], {})[exps[nx:]] = c
    keys = sorted(groups, key=lambda e: (sum(e), e), reverse=True)
    forms = {k: MPoly(pring, groups[k]) for k in keys}
    if not forms:
        return FamilyReport(X.degree, n, {}, MPoly.zero(pring), [], None, True, pring, E)
    g = MPoly.zero(pring)
    for P in forms.values():
        g = gcd(g, P)
        if g.is_constant():
            break
    roots = []
    if not g.is_constant():
        for a, b in binary_linear_factors(g, s, t):
            s0, t0 = Fraction(b), Fraction(-a)
            if s0 < 0 or (s0 == 0 and t0 < 0):
                s0, t0 = -s0, -t0
            roots.append((s0, t0))
        roots.sort(key=lambda r: (r[0] == 0, -r[0], r[1]))
    first = forms[keys[0]]
    return FamilyReport(X.degree, n, forms, g, roots, first.total_degree(), False, pring, E)
