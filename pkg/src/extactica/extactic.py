"""Extactic polynomials: Wronskian-type determinants of a linear system under a field.

For a field ``X`` and a linear system ``V = (v_1, ..., v_N)`` the extactic
polynomial is ``det [X^i(v_j)]`` with ``0 <= i < N``.  Taking ``V`` to be all
monomials of degree ``n`` in ``x, y, z`` gives the n-th extactic curve
``E_n(X)`` of a projective field; invariant curves of degree <= n divide it,
and it vanishes identically exactly when ``X`` has a rational first integral
of degree <= n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Mapping, Sequence

from . import linalg
from .derivation import VectorField, iterate_lie
from .parse import render
from .poly import MPoly, VariableMismatchError, exact_divide


@dataclass(frozen=True)
class LinearSystem:
    """Ordered basis of a finite-dimensional space of polynomials.

    ``degree`` is the common homogeneous degree of the basis (with respect to
    ``grading``), or None when the basis is not homogeneous of one degree.
    """

    basis: tuple
    degree: int | None
    grading: tuple = ()

    def __post_init__(self):
        if not self.basis:
            raise ValueError("a linear system needs at least one element")
        ring = self.basis[0].vars
        if any(b.vars != ring for b in self.basis):
            raise VariableMismatchError("basis elements live in different rings")
        monos = sorted({m for b in self.basis for m in b.terms}, reverse=True)
        rows = [[b.terms.get(m, 0) for m in monos] for b in self.basis]
        if linalg.rank(rows) != len(self.basis):
            raise ValueError("basis elements are linearly dependent")

    @classmethod
    def from_polys(cls, polys: Sequence[MPoly], grading: Sequence[str] | None = None) -> "LinearSystem":
        polys = tuple(polys)
        if not polys:
            raise ValueError("a linear system needs at least one element")
        grading = tuple(grading) if grading is not None else polys[0].vars
        degs = {p.degree_wrt(grading) for p in polys}
        homog = all(p.is_homogeneous(grading) for p in polys) and len(degs) == 1
        return cls(polys, degs.pop() if homog else None, grading)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> tuple:
        return self.basis[0].vars

    def with_ring(self, ring: Sequence[str]) -> "LinearSystem":
        return LinearSystem(tuple(b.with_vars(ring) for b in self.basis), self.degree, self.grading)


def monomial_exponents(n: int, nvars: int = 3) -> list:
    """Exponent vectors of degree ``n``, lexicographically descending."""
    if nvars == 1:
        return [(n,)]
    out = []
    for e in range(n, -1, -1):
        out.extend((e,) + rest for rest in monomial_exponents(n - e, nvars - 1))
    return out


def monomial_basis(n: int, variables: Sequence[str] = ("x", "y", "z"),
                   ring: Sequence[str] | None = None) -> LinearSystem:
    """All monomials of degree ``n`` in ``variables``: ``(x, y, z)`` for n=1,
    ``(x^2, xy, xz, y^2, yz, z^2)`` for n=2, and so on."""
    if n < 1:
        raise ValueError("monomial_basis needs n >= 1")
    variables = tuple(variables)
    ring = tuple(ring) if ring is not None else variables
    pos = [ring.index(v) for v in variables]
    basis = []
    for exps in monomial_exponents(n, len(variables)):
        full = [0] * len(ring)
        for i, e in zip(pos, exps):
            full[i] = e
        basis.append(MPoly.monomial(full, ring))
    return LinearSystem(tuple(basis), n, variables)


def wronskian_matrix(X: VectorField, V: LinearSystem, rows: int) -> list:
    """``rows x dim`` matrix whose row ``i`` is ``X^i`` applied to the basis."""
    if rows < 1:
        raise ValueError("rows must be >= 1")
    if V.ring != X.ring:
        try:
            V = V.with_ring(X.ring)
        except VariableMismatchError:
            raise VariableMismatchError(f"basis over {V.ring} does not live in {X.ring}") from None
    cols = [iterate_lie(X, b, rows - 1) for b in V.basis]
    return [[col[i] for col in cols] for i in range(rows)]


# determinants


def _check_square(m: list) -> tuple:
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise ValueError("determinant needs a non-empty square matrix")
    ring = m[0][0].vars
    if any(e.vars != ring for r in m for e in r):
        raise VariableMismatchError("matrix entries live in different rings")
    return n, ring


def cofactor_determinant(m: list) -> MPoly:
    """Laplace expansion along the sparsest row or column."""
    n, ring = _check_square(m)
    return _laplace(m, ring)


def _laplace(m: list, ring: tuple) -> MPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    best_row = max(range(n), key=lambda i: sum(1 for e in m[i] if not e))
    best_col = max(range(n), key=lambda j: sum(1 for i in range(n) if not m[i][j]))
    zr = sum(1 for e in m[best_row] if not e)
    zc = sum(1 for i in range(n) if not m[i][best_col])
    if zc > zr:
        m = [list(r) for r in zip(*m)]
        best_row = best_col
    i = best_row
    total = MPoly.zero(ring)
    for j in range(n):
        e = m[i][j]
        if not e:
            continue
        minor = [r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i]
        term = e * _laplace(minor, ring)
        total = total + term if (i + j) % 2 == 0 else total - term
    return total


def _clear_row(row: list) -> tuple:
    den = 1
    for e in row:
        for c in e.terms.values():
            if type(c) is Fraction:
                den = lcm(den, c.denominator)
    if den == 1:
        return row, 1
    return [e.scale(den) for e in row], den


def bareiss_determinant(m: list) -> MPoly:
    """Fraction-free Bareiss elimination.

    Rows are first scaled to integer coefficients so that every exact
    division stays in Z[vars].  Pivots are chosen with the fewest terms.
    """
    n, ring = _check_square(m)
    scale = 1
    work = []
    for row in m:
        row, den = _clear_row(list(row))
        scale *= den
        work.append(row)
    sign = 1
    prev = None
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if work[i][k]]
        if not candidates:
            return MPoly.zero(ring)
        p = min(candidates, key=lambda i: (len(work[i][k]), i))
        if p != k:
            work[k], work[p] = work[p], work[k]
            sign = -sign
        pivot = work[k][k]
        pivot_row = work[k]
        for i in range(k + 1, n):
            row = work[i]
            lead = row[k]
            for j in range(k + 1, n):
                num = pivot * row[j]
                if lead and pivot_row[j]:
                    num = num - lead * pivot_row[j]
                if prev is not None and num:
                    num = exact_divide(num, prev)
                row[j] = num
            row[k] = MPoly.zero(ring)
        prev = pivot
    result = work[n - 1][n - 1]
    if sign < 0:
        result = -result
    if scale != 1:
        result = result.scale(Fraction(1, scale))
    return result


def determinant(m: list) -> MPoly:
    """Exact determinant (Leibniz sign convention for the given order)."""
    n, ring = _check_square(m)
    if any(all(not e for e in row) for row in m):
        return MPoly.zero(ring)
    if any(all(not m[i][j] for i in range(n)) for j in range(n)):
        return MPoly.zero(ring)
    if n <= 4:
        return cofactor_determinant(m)
    return bareiss_determinant(m)


# extactic polynomials


@dataclass(frozen=True)
class ExtacticReport:
    """Extactic polynomial with bookkeeping.

    ``expected_degree`` and ``row_degrees`` are None unless the field is
    projective and the system homogeneous.
    """

    polynomial: MPoly
    system: LinearSystem
    expected_degree: int | None
    row_degrees: tuple | None
    field_variables: tuple = ("x", "y", "z")

    @property
    def vanished(self) -> bool:
        return self.polynomial.is_zero()

    @property
    def degree(self) -> int:
        """Actual degree in the field variables (-1 when vanished)."""
        return self.polynomial.degree_wrt(self.field_variables)

    def to_dict(self) -> dict:
        return {
            "polynomial": render(self.polynomial),
            "vanished": self.vanished,
            "expected_degree": self.expected_degree,
            "degree": self.degree,
            "row_degrees": list(self.row_degrees) if self.row_degrees is not None else None,
            "dim": self.system.dim,
            "system": [render(b) for b in self.system.basis],
            "ring": list(self.polynomial.vars),
        }


def expected_degree(d: int, n: int) -> int:
    """Degree of ``E_n`` for a projective field of degree ``d``.

    Closed form ``(d(n^4+6n^3+11n^2+6n) - n^4 - 2n^3 + n^2 + 2n) / 8``, which
    equals the sum of the row degrees ``n + i(d-1)`` over the
    ``(n+2 choose 2)`` rows.
    """
    if d < 0 or n < 1:
        raise ValueError("need d >= 0 and n >= 1")
    num = d * (n**4 + 6 * n**3 + 11 * n**2 + 6 * n) - n**4 - 2 * n**3 + n**2 + 2 * n
    q, r = divmod(num, 8)
    assert r == 0
    return q


def row_degree_sum(d: int, n: int) -> int:
    return sum(n + i * (d - 1) for i in range(comb(n + 2, 2)))


def _system_degrees(X: VectorField, V: LinearSystem, rows: int) -> tuple | None:
    if X.kind != "projective" or V.degree is None or set(V.grading) != set(X.variables):
        return None
    return tuple(V.degree + i * (X.degree - 1) for i in range(rows))


def extactic_system(X: VectorField, V: LinearSystem) -> ExtacticReport:
    """``det [X^i(v_j)]_{0 <= i, j < dim V}``."""
    if X.is_zero():
        raise ValueError("the zero vector field has no extactic polynomial")
    m = wronskian_matrix(X, V, V.dim)
    poly = determinant(m)
    degs = _system_degrees(X, V, V.dim)
    return ExtacticReport(poly, V, sum(degs) if degs is not None else None, degs, X.variables)


def extactic(X: VectorField, n: int) -> ExtacticReport:
    """The n-th extactic curve ``E_n(X)`` of a projective field in three variables."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if X.kind != "projective" or len(X.variables) != 3:
        raise ValueError("extactic curves are defined for projective fields in three variables")
    if X.is_zero():
        raise ValueError("the zero vector field has no extactic curve")
    report = extactic_system(X, monomial_basis(n, X.variables, X.ring))
    assert report.expected_degree == expected_degree(X.degree, n)
    return report


def extactic_ideal_generators(X: VectorField, V: LinearSystem, K: int) -> list:
    """Minors ``sigma_(k_1..k_l)`` over all ``0 <= k_1 < ... < k_l <= K``, ``l = dim V``.

    Returned in lexicographic order of the index tuples, so the first one is
    the extactic polynomial of ``V``.
    """
    l = V.dim
    if K < l - 1:
        raise ValueError(f"K must be at least dim V - 1 = {l - 1}")
    m = wronskian_matrix(X, V, K + 1)
    return [determinant([m[k] for k in ks]) for ks in combinations(range(K + 1), l)]


# contact order


@dataclass(frozen=True)
class ContactOrder:
    """Least ``k <= cap`` with ``X^k(s)(p) != 0``; ``value`` None means flat up to ``cap``.

    ``certified`` is set when flatness is provable, i.e. ``s`` divides ``X(s)``
    (all iterates then lie in the ideal of ``s``) or some iterate is
    identically zero.
    """

    value: int | None
    cap: int
    certified: bool = False

    @property
    def flat(self) -> bool:
        return self.value is None

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def to_dict(self) -> dict:
        return {"value": self.value, "flat": self.flat, "cap": self.cap, "certified": self.certified}


def _point_map(X: VectorField, p) -> dict:
    if isinstance(p, Mapping):
        point = dict(p)
    else:
        p = list(p)
        if len(p) != len(X.variables) and len(p) != len(X.ring):
            raise ValueError(f"point has {len(p)} coordinates, expected {len(X.variables)}")
        point = dict(zip(X.ring, p))
    missing = [v for v in X.ring if v not in point]
    if missing:
        raise ValueError(f"point does not assign {missing}")
    return point


def default_cap(X: VectorField, s: MPoly) -> int:
    """Four times the dimension of the space of degree-``deg s`` polynomials containing ``s``."""
    m = max(s.degree_wrt([v for v in X.variables if v in s.vars]), 0)
    nv = len(X.variables)
    dim = comb(m + nv - 1, nv - 1) if X.kind == "projective" else comb(m + nv, nv)
    return 4 * dim


def contact_order(s: MPoly, X: VectorField, p, cap: int | None = None) -> ContactOrder:
    point = _point_map(X, p)
    if cap is None:
        cap = default_cap(X, s)
    if cap < 0:
        raise ValueError("cap must be >= 0")
    g = s if s.vars == X.ring else s.with_vars(X.ring)
    s = g
    for k in range(cap + 1):
        if g.is_zero():
            return ContactOrder(None, cap, True)
        if g.evaluate(point) != 0:
            return ContactOrder(k, cap)
        if k < cap:
            g = X(g)
    certified = False
    if s.is_zero():
        certified = True
    else:
        from .poly import divides

        certified = divides(s, X(s))
    return ContactOrder(None, cap, certified)


def osculating_elements(X: VectorField, V: LinearSystem, p) -> list:
    """Basis of the combinations ``s = sum a_j v_j`` with ``X^i(s)(p) = 0`` for ``i < dim V``.

    Nonempty exactly when the extactic polynomial of ``V`` vanishes at ``p``.
    Each element is returned as an integer-primitive polynomial.
    """
    point = _point_map(X, p)
    m = wronskian_matrix(X, V, V.dim)
    rows = [[e.evaluate(point) for e in row] for row in m]
    out = []
    for vec in linalg.nullspace(rows, V.dim):
        den = lcm(*(Fraction(a).denominator for a in vec))
        s = MPoly.zero(X.ring)
        for a, b in zip(vec, V.with_ring(X.ring).basis):
            if a:
                s = s + b.scale(a * den)
        out.append(s.primitive())
    return out
