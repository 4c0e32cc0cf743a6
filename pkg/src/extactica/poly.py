"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is stored as a dict mapping exponent tuples (one entry per
declared variable) to nonzero coefficients.  Coefficients are ``int`` when
integral and :class:`fractions.Fraction` otherwise, so the common integer
case never pays for rational normalization.

Iteration, rendering and leading terms use graded lexicographic order with
respect to the declared variable order.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as igcd
from math import lcm as ilcm
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]
Exponents = tuple


class VariableMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_divide` when the remainder is nonzero."""


def _norm(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Rational, b: Rational) -> Rational:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


def grlex_key(exps: Exponents) -> tuple:
    """Sort key: larger key means larger monomial in graded lex order."""
    return (sum(exps), exps)


def _heap_key(exps: Exponents) -> tuple:
    return (-sum(exps), tuple(-e for e in exps), exps)


def _to_rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MPoly:
    """Immutable sparse polynomial over Q in an ordered list of variables."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean: dict = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for variables {variables}")
            c = _to_rational(c)
            if c:
                clean[exps] = _norm(clean.get(exps, 0) + c)
                if not clean[exps]:
                    del clean[exps]
        self._vars = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        c = _to_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"{name!r} is not one of {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exps: 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], variables: Sequence[str], coeff=1) -> "MPoly":
        return cls(variables, {tuple(exps): coeff})

    # basic accessors

    @property
    def vars(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def items(self) -> list:
        """Terms as ``(exponents, coefficient)`` pairs, largest monomial first."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def leading_term(self) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def leading_coefficient(self) -> Rational:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, v: str) -> int:
        i = self._index(v)
        return max((m[i] for m in self._terms), default=-1)

    def _index(self, v: str) -> int:
        try:
            return self._vars.index(v)
        except ValueError:
            raise VariableMismatchError(f"{v!r} is not one of {self._vars}") from None

    def _mask(self, subset: Iterable[str] | None) -> tuple:
        if subset is None:
            return tuple(range(len(self._vars)))
        return tuple(self._index(v) for v in subset)

    def degree_wrt(self, subset: Iterable[str]) -> int:
        idx = self._mask(subset)
        return max((sum(m[i] for i in idx) for m in self._terms), default=-1)

    def is_homogeneous(self, subset: Iterable[str] | None = None) -> bool:
        """Zero counts as homogeneous.  ``subset`` restricts the grading."""
        idx = self._mask(subset)
        degs = {sum(m[i] for i in idx) for m in self._terms}
        return len(degs) <= 1

    def variables_used(self) -> tuple:
        return tuple(v for i, v in enumerate(self._vars) if any(m[i] for m in self._terms))

    # arithmetic

    def _check(self, other: "MPoly") -> None:
        if self._vars != other._vars:
            raise VariableMismatchError(f"variable lists differ: {self._vars} vs {other._vars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MPoly.constant(other, self._vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return MPoly._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return MPoly._raw(self._vars, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c) -> "MPoly":
        c = _to_rational(c)
        if not c:
            return MPoly._raw(self._vars, {})
        if c == 1:
            return self
        return MPoly._raw(self._vars, {m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly._raw(self._vars, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        fractional = False
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        for m in [m for m, c in out.items() if not c]:
            del out[m]
        for c in out.values():
            if type(c) is Fraction:
                fractional = True
                break
        if fractional:
            out = {m: _norm(c) for m, c in out.items()}
        return MPoly._raw(self._vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return exact_divide(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MPoly({self._vars}, {str(self)!r})"

    def __str__(self) -> str:
        from .parse import render

        return render(self)

    # calculus and substitution

    def diff(self, v: str) -> "MPoly":
        i = self._index(v)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return MPoly._raw(self._vars, out)

    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        missing = [v for v in self._vars if v not in point]
        if missing:
            raise ValueError(f"no value assigned to {missing}")
        vals = [_to_rational(point[v]) for v in self._vars]
        total: Rational = 0
        for m, c in self._terms.items():
            t = c
            for x, e in zip(vals, m):
                if e:
                    t = t * x ** e
            total += t
        return _norm(total) if isinstance(total, Fraction) else total

    def specialize(self, assignment: Mapping[str, Rational]) -> "MPoly":
        """Substitute rational values for some variables; the ring is unchanged."""
        idx = [(self._index(v), _to_rational(x)) for v, x in assignment.items()]
        out: dict = {}
        for m, c in self._terms.items():
            m = list(m)
            for i, x in idx:
                if m[i]:
                    c = c * x ** m[i]
                    m[i] = 0
            key = tuple(m)
            out[key] = out.get(key, 0) + c
        return MPoly._raw(self._vars, {m: _norm(c) for m, c in out.items() if c})

    def substitute(self, mapping: Mapping[str, "MPoly"], variables: Sequence[str] | None = None) -> "MPoly":
        """Compose: replace each variable by a polynomial over ``variables``.

        Variables absent from ``mapping`` must also appear in the target ring
        and are carried over unchanged.
        """
        target = tuple(variables) if variables is not None else self._vars
        images = []
        for v in self._vars:
            if v in mapping:
                img = mapping[v]
                if img.vars != target:
                    raise VariableMismatchError(f"image of {v!r} is not over {target}")
            else:
                img = MPoly.variable(v, target)
            images.append(img)
        result = MPoly.zero(target)
        cache: list[dict] = [{} for _ in images]

        def power(i: int, e: int) -> MPoly:
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        for m, c in self._terms.items():
            t = MPoly.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def with_vars(self, variables: Sequence[str]) -> "MPoly":
        """Re-embed into another ring; dropped variables must not occur."""
        variables = tuple(variables)
        if variables == self._vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        if len(pos) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for i, v in enumerate(self._vars):
            if v not in pos and any(m[i] for m in self._terms):
                raise VariableMismatchError(f"{v!r} occurs but is not in {variables}")
        moves = [(i, pos[v]) for i, v in enumerate(self._vars) if v in pos]
        out = {}
        for m, c in self._terms.items():
            new = [0] * len(variables)
            for i, j in moves:
                new[j] = m[i]
            out[tuple(new)] = c
        return MPoly._raw(variables, out)

    def homogenize(self, v: str, m: int, grading: Iterable[str] | None = None) -> "MPoly":
        return homogenize(self, v, m, grading)

    # content and normalization

    def rational_content(self) -> Fraction:
        """Positive rational c with ``self / c`` integer-primitive."""
        if not self._terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        return Fraction(abs(reduce(igcd, nums)), reduce(ilcm, dens))

    def primitive(self) -> "MPoly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.rational_content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(Fraction(1) / c)

    def coefficients_in(self, v: str) -> dict:
        """Map exponent of ``v`` to coefficient polynomial (``v`` removed)."""
        i = self._index(v)
        groups: dict = {}
        for m, c in self._terms.items():
            groups.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1:]] = c
        return {e: MPoly._raw(self._vars, t) for e, t in groups.items()}

    def homogeneous_components(self, subset: Iterable[str] | None = None) -> dict:
        idx = self._mask(subset)
        groups: dict = {}
        for m, c in self._terms.items():
            groups.setdefault(sum(m[i] for i in idx), {})[m] = c
        return {d: MPoly._raw(self._vars, t) for d, t in groups.items()}


def _check_same(p: MPoly, q: MPoly) -> None:
    if p.vars != q.vars:
        raise VariableMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")


def add(p: MPoly, q: MPoly) -> MPoly:
    _check_same(p, q)
    return p + q


def mul(p: MPoly, q: MPoly) -> MPoly:
    _check_same(p, q)
    return p * q


def partial_derivative(p: MPoly, v: str) -> MPoly:
    return p.diff(v)


def evaluate(p: MPoly, point: Mapping[str, Rational]) -> Rational:
    return p.evaluate(point)


def homogenize(p: MPoly, v: str, m: int, grading: Iterable[str] | None = None) -> MPoly:
    """``v**m * p(x/v)``; ``p`` must not involve ``v`` and have degree <= m.

    ``grading`` lists the variables that count towards the degree (default:
    all of them); the remaining ones behave as constants.
    """
    i = p._index(v)
    if any(e[i] for e in p._terms):
        raise ValueError(f"{v!r} already occurs in the polynomial")
    idx = p._mask(grading)
    if p.degree_wrt([p.vars[j] for j in idx]) > m:
        raise ValueError(f"degree {p.degree_wrt([p.vars[j] for j in idx])} exceeds homogenization degree {m}")
    out = {}
    for e, c in p._terms.items():
        e = list(e)
        e[i] = m - sum(e[j] for j in idx)
        out[tuple(e)] = c
    return MPoly._raw(p.vars, out)


def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """Return ``h`` with ``p == q * h``; raise :class:`NotDivisibleError` otherwise."""
    _check_same(p, q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    qt = q._terms
    lm, lc = q.leading_term()
    if len(qt) == 1:
        out = {}
        for m, c in p._terms.items():
            d = tuple([a - b for a, b in zip(m, lm)])
            if min(d) < 0:
                raise NotDivisibleError("monomial divisor does not divide")
            out[d] = _div(c, lc)
        return MPoly._raw(p.vars, out)
    rest = [(m, c) for m, c in qt.items() if m != lm]
    rem = dict(p._terms)
    heap = [_heap_key(m) for m in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        m = heapq.heappop(heap)[2]
        c = rem.pop(m, None)
        if c is None:
            continue
        d = tuple([a - b for a, b in zip(m, lm)])
        if min(d) < 0:
            raise NotDivisibleError("nonzero remainder")
        qc = _div(c, lc)
        quot[d] = qc
        for tm, tc in rest:
            k = tuple([a + b for a, b in zip(d, tm)])
            old = rem.get(k)
            if old is None:
                rem[k] = _norm(-qc * tc)
                heapq.heappush(heap, _heap_key(k))
            else:
                v = old - qc * tc
                if v:
                    rem[k] = _norm(v)
                else:
                    del rem[k]
    return MPoly._raw(p.vars, quot)


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisibleError:
        return False
    return True


# gcd is delegated to sympy's sparse integer polynomial rings, whose
# heuristic gcd avoids the coefficient swell of remainder sequences.


@lru_cache(maxsize=None)
def _zz_ring(nvars: int):
    from sympy import ZZ
    from sympy.polys.rings import ring

    return ring(",".join(f"_v{i}" for i in range(nvars)), ZZ, "grlex")[0]


def _to_zz(p: MPoly, R):
    """Integer-primitive copy of ``p`` as an element of ``R``."""
    q = p.primitive()
    return R({m: int(c) for m, c in q._terms.items()})


def _from_zz(f, variables) -> MPoly:
    return MPoly(variables, {tuple(m): int(c) for m, c in f.terms()})


def _content_in(p: MPoly, i: int) -> MPoly:
    v = p.vars[i]
    return reduce(_gcd_raw, p.coefficients_in(v).values(), MPoly.zero(p.vars))


def _gcd_raw(p: MPoly, q: MPoly) -> MPoly:
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p.is_constant() or q.is_constant():
        return MPoly.constant(1, p.vars)
    if not p.vars:
        return MPoly.constant(1, p.vars)
    R = _zz_ring(len(p.vars))
    return _from_zz(_to_zz(p, R).gcd(_to_zz(q, R)), p.vars).primitive()


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor, integer-primitive with positive leading coefficient."""
    _check_same(p, q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd_raw(p, q)


def squarefree_part(p: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of ``p``, normalized."""
    if p.is_zero():
        raise ValueError("square-free part of zero is undefined")
    used = [i for i in range(len(p.vars)) if any(m[i] for m in p._terms)]
    if not used:
        return MPoly.constant(1, p.vars)
    i = used[-1]
    v = p.vars[i]
    cont = _content_in(p, i)
    pp = exact_divide(p, cont)
    g = _gcd_raw(pp, pp.diff(v))
    return (squarefree_part(cont) * exact_divide(pp, g)).primitive()
