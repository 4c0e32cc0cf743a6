"""Polynomial vector fields acting as derivations."""

from __future__ import annotations

from typing import Mapping, Sequence

from .poly import MPoly, NotDivisibleError, VariableMismatchError, exact_divide


class VectorField:
    """A derivation ``sum_v coeff[v] * d/dv`` with optional constant parameters.

    Coefficients live in the ring ``variables + params``; the parameters are
    annihilated by the derivation.  ``kind`` is ``"projective"`` (homogeneous
    coefficients of a common degree in ``variables``) or ``"affine"``.
    """

    __slots__ = ("variables", "params", "coefficients", "kind", "degree", "_decomposition")

    def __init__(self, variables: Sequence[str], coefficients: Sequence[MPoly],
                 params: Sequence[str] = (), kind: str = "projective"):
        variables = tuple(variables)
        params = tuple(params)
        ring = variables + params
        if len(set(ring)) != len(ring):
            raise ValueError(f"variable and parameter names must be distinct: {ring}")
        if kind not in ("projective", "affine"):
            raise ValueError(f"kind must be 'projective' or 'affine', not {kind!r}")
        if len(coefficients) != len(variables):
            raise ValueError("need exactly one coefficient per variable")
        coeffs = []
        for c in coefficients:
            if c.vars != ring:
                c = c.with_vars(ring)
            coeffs.append(c)
        self.variables = variables
        self.params = params
        self.coefficients = tuple(coeffs)
        self.kind = kind
        self._decomposition = None
        if kind == "projective":
            degs = set()
            for v, c in zip(variables, coeffs):
                if c.is_zero():
                    continue
                if not c.is_homogeneous(variables):
                    raise ValueError(f"coefficient of {v!r} is not homogeneous")
                degs.add(c.degree_wrt(variables))
            if len(degs) > 1:
                raise ValueError(f"coefficients have different degrees {sorted(degs)}")
            self.degree = degs.pop() if degs else 0
        else:
            self.degree = self.affine_decomposition()[0]

    @property
    def ring(self) -> tuple:
        return self.variables + self.params

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def coefficient(self, v: str) -> MPoly:
        return self.coefficients[self.variables.index(v)]

    def __call__(self, f: MPoly) -> MPoly:
        return lie_derivative(self, f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return (self.variables, self.params, self.coefficients, self.kind) == (
            other.variables, other.params, other.coefficients, other.kind)

    def __hash__(self) -> int:
        return hash((self.variables, self.params, self.coefficients, self.kind))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*d/d{v}" for v, c in zip(self.variables, self.coefficients) if c)
        return f"VectorField[{self.kind}, degree {self.degree}]({body or '0'})"

    @classmethod
    def from_strings(cls, variables: Sequence[str], coefficients: Sequence[str],
                     params: Sequence[str] = (), kind: str = "projective") -> "VectorField":
        from .parse import parse_polynomial

        ring = tuple(variables) + tuple(params)
        return cls(variables, [parse_polynomial(c, ring) for c in coefficients], params, kind)

    def affine_decomposition(self) -> tuple:
        """``(d, a, g)`` with ``X = sum a_i d/dx_i + g * sum x_i d/dx_i``.

        ``g`` is homogeneous of degree ``d`` and every ``a_i`` has degree at
        most ``d``; ``d`` is the least value admitting such a splitting.
        Parameters count as constants.
        """
        if self._decomposition is not None:
            return self._decomposition
        ring, xs = self.ring, self.variables
        zero = MPoly.zero(ring)
        m = max((c.degree_wrt(xs) for c in self.coefficients), default=-1)
        if m <= 0:
            result = (0, self.coefficients, zero)
        else:
            tops = [c.homogeneous_components(xs).get(m, zero) for c in self.coefficients]
            g = _radial_factor(tops, [MPoly.variable(v, ring) for v in xs])
            if g is None:
                result = (m, self.coefficients, zero)
            else:
                a = tuple(c - g * MPoly.variable(v, ring) for v, c in zip(xs, self.coefficients))
                result = (m - 1, a, g)
        self._decomposition = result
        return result

    def specialize(self, assignment: Mapping) -> "VectorField":
        """Substitute rational values for parameters, dropping them."""
        unknown = set(assignment) - set(self.params)
        if unknown:
            raise VariableMismatchError(f"not parameters of this field: {sorted(unknown)}")
        params = tuple(p for p in self.params if p not in assignment)
        ring = self.variables + params
        coeffs = [c.specialize(assignment).with_vars(ring) for c in self.coefficients]
        return VectorField(self.variables, coeffs, params, self.kind)


def _radial_factor(tops: list, xs: list) -> MPoly | None:
    """Return ``h`` with ``tops[i] == h * xs[i]`` for all i, or None."""
    h = None
    for t, x in zip(tops, xs):
        if t:
            try:
                h = exact_divide(t, x)
            except NotDivisibleError:
                return None
            break
    if h is None:
        return None
    if all(t == h * x for t, x in zip(tops, xs)):
        return h
    return None


def radial_field(variables: Sequence[str] = ("x", "y", "z"), params: Sequence[str] = ()) -> VectorField:
    """Euler field ``sum_v v * d/dv``."""
    ring = tuple(variables) + tuple(params)
    return VectorField(variables, [MPoly.variable(v, ring) for v in variables], params)


def _embed(X: VectorField, f: MPoly) -> MPoly:
    if f.vars == X.ring:
        return f
    try:
        return f.with_vars(X.ring)
    except VariableMismatchError:
        raise VariableMismatchError(
            f"polynomial over {f.vars} does not live in the field's ring {X.ring}") from None


def lie_derivative(X: VectorField, f: MPoly) -> MPoly:
    """``X(f) = sum_v coeff(v) * df/dv``."""
    f = _embed(X, f)
    out = MPoly.zero(X.ring)
    for v, c in zip(X.variables, X.coefficients):
        if c:
            df = f.diff(v)
            if df:
                out = out + c * df
    return out


def iterate_lie(X: VectorField, f: MPoly, k: int) -> list:
    """``[f, X(f), ..., X^k(f)]``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    f = _embed(X, f)
    out = [f]
    for _ in range(k):
        out.append(lie_derivative(X, out[-1]))
    return out


def field_degree(X: VectorField) -> int:
    return X.degree


def projectivize(X: VectorField, new_var: str = "z") -> VectorField:
    """Homogeneous field on one more variable inducing the same direction field.

    With ``X = sum a_i d/dx_i + g * R`` (see :meth:`VectorField.affine_decomposition`),
    the result is ``sum abar_i d/dx_i - g d/d(new_var)`` where ``abar_i`` is
    ``a_i`` homogenized to degree ``d``.  Restricting to ``new_var = 1`` and
    projecting along the radial direction gives back ``X`` exactly.
    """
    if X.kind != "affine":
        raise ValueError("projectivize expects an affine field")
    if new_var in X.ring:
        raise ValueError(f"{new_var!r} collides with an existing variable")
    d, a, g = X.affine_decomposition()
    variables = X.variables + (new_var,)
    ring = variables + X.params
    coeffs = [ai.with_vars(ring).homogenize(new_var, d, variables) for ai in a]
    coeffs.append(-g.with_vars(ring))
    return VectorField(variables, coeffs, X.params, "projective")


def dehomogenize(X: VectorField, var: str = "z") -> VectorField:
    """Affine field induced on the chart ``var = 1`` by a projective field.

    Component ``i`` is ``(P_i - x_i * P_var)`` evaluated at ``var = 1``.
    """
    if X.kind != "projective":
        raise ValueError("dehomogenize expects a projective field")
    k = X.variables.index(var)
    pv = X.coefficients[k]
    variables = tuple(v for v in X.variables if v != var)
    ring = variables + X.params
    coeffs = []
    for v, c in zip(X.variables, X.coefficients):
        if v == var:
            continue
        comp = c - MPoly.variable(v, X.ring) * pv
        coeffs.append(comp.specialize({var: 1}).with_vars(ring))
    return VectorField(variables, coeffs, X.params, "affine")


def linear_combination(s: str, X: VectorField, t: str, Y: VectorField) -> VectorField:
    """``s*X + t*Y`` with fresh parameters ``s`` and ``t``."""
    if X.kind != "projective" or Y.kind != "projective":
        raise ValueError("linear combinations are formed from projective fields")
    if X.variables != Y.variables:
        raise VariableMismatchError(f"fields use different variables: {X.variables} vs {Y.variables}")
    if not X.is_zero() and not Y.is_zero() and X.degree != Y.degree:
        raise ValueError(f"degree mismatch: {X.degree} vs {Y.degree}")
    params = X.params + tuple(p for p in Y.params if p not in X.params)
    if s == t or s in X.variables + params or t in X.variables + params:
        raise ValueError(f"parameter names {s!r}, {t!r} must be fresh and distinct")
    params = params + (s, t)
    ring = X.variables + params
    S, T = MPoly.variable(s, ring), MPoly.variable(t, ring)
    coeffs = [S * a.with_vars(ring) + T * b.with_vars(ring)
              for a, b in zip(X.coefficients, Y.coefficients)]
    return VectorField(X.variables, coeffs, params, "projective")


def singular_minors(X: VectorField) -> list:
    """2x2 minors of ``[[x, y, z], [X(x), X(y), X(z)]]`` for columns (0,1), (0,2), (1,2)."""
    if len(X.variables) != 3:
        raise ValueError("singular_minors needs exactly three variables")
    xs = [MPoly.variable(v, X.ring) for v in X.variables]
    cs = X.coefficients
    return [xs[i] * cs[j] - xs[j] * cs[i] for i, j in ((0, 1), (0, 2), (1, 2))]
