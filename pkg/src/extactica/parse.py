"""Text grammar for polynomials and vector fields, and canonical rendering.

Polynomial grammar (recursive descent, no implicit multiplication)::

    poly     := [sign] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | ident | '(' poly ')'
    rational := int ('/' uint)?

A leading sign is accepted so that rendered negative polynomials parse back.

Vector fields come either as JSON::

    {"kind": "projective", "vars": ["x", "y", "z"],
     "coeffs": {"x": "...", "y": "...", "z": "..."}, "params": ["s", "t"]}

or as text statements separated by ``;`` or newlines::

    vars x y z; params s t; kind projective; dx: y; dy: z; dz: x
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import MPoly


class ParseError(ValueError):
    """Syntax or validation error, carrying a 1-based line and column."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.reason = message
        super().__init__(f"{message} (line {self.line}, column {self.column})")


_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            # trailing whitespace only
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            raise self.error(f"expected {op!r}" + (f", found {tok[1]!r}" if tok[1] else ", found end of input"))
        return self.take()

    def parse(self) -> MPoly:
        p = self.poly()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}")
        return p

    def poly(self) -> MPoly:
        tok = self.peek()
        negate = False
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MPoly:
        b = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.peek()
            if e[0] != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            return b ** int(e[1])
        return b

    def base(self) -> MPoly:
        tok = self.peek()
        kind, val, _ = tok
        if kind == "int":
            self.take()
            num = int(val)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.peek()
                if d[0] != "int":
                    raise self.error("denominator must be an unsigned integer literal")
                self.take()
                if int(d[1]) == 0:
                    raise self.error("zero denominator", d)
                return MPoly.constant(Fraction(num, int(d[1])), self.vars)
            return MPoly.constant(num, self.vars)
        if kind == "ident":
            if val not in self.vars:
                raise self.error(f"undeclared identifier {val!r}")
            self.take()
            return MPoly.variable(val, self.vars)
        if kind == "op" and val == "(":
            self.take()
            p = self.poly()
            self.expect_op(")")
            return p
        if kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {val!r}")


def parse_polynomial(text: str, variables: Sequence[str]) -> MPoly:
    """Parse ``text`` into a canonical polynomial over ``variables``."""
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    return _Parser(text, variables).parse()


def _render_coeff(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render(p: MPoly) -> str:
    """Canonical text: graded lex order, ``*`` and ``^`` explicit, ``0`` for zero."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.items():
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(p.vars, exps) if e
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _render_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_render_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class ParsedField:
    """Validated vector field input.  ``coefficients`` follow ``variables``."""

    variables: tuple
    coefficients: tuple
    kind: str = "projective"
    params: tuple = ()

    @property
    def ring(self) -> tuple:
        return self.variables + self.params

    def coefficient(self, v: str) -> MPoly:
        return self.coefficients[self.variables.index(v)]

    def to_field(self):
        from .derivation import VectorField

        return VectorField(self.variables, self.coefficients, params=self.params, kind=self.kind)


def _build_field(variables, coeff_texts, kind, params, source, offsets=None) -> ParsedField:
    variables = tuple(variables)
    params = tuple(params)
    if kind not in ("projective", "affine"):
        raise ParseError(f"kind must be 'projective' or 'affine', not {kind!r}", source, 0)
    if not variables:
        raise ParseError("no variables declared", source, 0)
    ring = variables + params
    if len(set(ring)) != len(ring):
        raise ParseError("variable and parameter names must be distinct", source, 0)
    for v in coeff_texts:
        if v not in variables:
            pos = (offsets or {}).get(v, 0)
            raise ParseError(f"coefficient given for undeclared variable {v!r}", source, pos)
    coeffs = []
    for v in variables:
        text = coeff_texts.get(v, "0")
        try:
            coeffs.append(parse_polynomial(text, ring))
        except ParseError as exc:
            base = (offsets or {}).get(v)
            if base is None:
                raise ParseError(f"in coefficient of {v!r}: {exc.reason}", text, exc.pos) from None
            raise ParseError(exc.reason, source, base + exc.pos) from None
    if kind == "projective":
        degs = set()
        for v, c in zip(variables, coeffs):
            if c.is_zero():
                continue
            if not c.is_homogeneous(variables):
                raise ParseError(f"coefficient of {v!r} is not homogeneous", source, (offsets or {}).get(v, 0))
            degs.add(c.degree_wrt(variables))
        if len(degs) > 1:
            raise ParseError(f"projective coefficients have different degrees {sorted(degs)}", source, 0)
    return ParsedField(variables, tuple(coeffs), kind, params)


def _parse_json_field(text: str) -> ParsedField:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", text, exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("field JSON must be an object", text, 0)
    unknown = set(data) - {"kind", "vars", "coeffs", "params"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", text, 0)
    variables = data.get("vars", ["x", "y", "z"])
    params = data.get("params", [])
    coeffs = data.get("coeffs")
    kind = data.get("kind", "projective")
    ident = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
    for name in list(variables) + list(params):
        if not isinstance(name, str) or not ident.match(name):
            raise ParseError(f"invalid variable name {name!r}", text, 0)
    if not isinstance(coeffs, dict) or not all(isinstance(c, str) for c in coeffs.values()):
        raise ParseError("'coeffs' must map variable names to polynomial text", text, 0)
    return _build_field(variables, coeffs, kind, params, text)


_STATEMENT = re.compile(r"[^;\n]+")


def _parse_text_field(text: str) -> ParsedField:
    variables = None
    params: list = []
    kind = "projective"
    coeffs: dict = {}
    offsets: dict = {}
    for m in _STATEMENT.finditer(text):
        stmt = m.group()
        if not stmt.strip() or stmt.lstrip().startswith("#"):
            continue
        start = m.start() + len(stmt) - len(stmt.lstrip())
        stmt = stmt.strip()
        head, _, rest = stmt.partition(" ")
        if head == "vars":
            variables = rest.split()
        elif head == "params":
            params = rest.split()
        elif head == "kind":
            kind = rest.strip()
        elif re.match(r"d[A-Za-z_][A-Za-z0-9_]*\s*:", stmt):
            name, _, body = stmt.partition(":")
            name = name.strip()[1:]
            if name in coeffs:
                raise ParseError(f"duplicate coefficient for {name!r}", text, start)
            coeffs[name] = body
            offsets[name] = start + stmt.index(":") + 1
        else:
            raise ParseError(f"unrecognized statement {stmt!r}", text, start)
    if variables is None:
        raise ParseError("missing 'vars' header", text, 0)
    return _build_field(variables, coeffs, kind, params, text, offsets)


def parse_vector_field(text_or_json: str) -> ParsedField:
    """Parse a vector field from JSON or the ``vars ...; dx: ...`` text form."""
    if text_or_json.lstrip().startswith("{"):
        return _parse_json_field(text_or_json)
    return _parse_text_field(text_or_json)


def field_to_json(field) -> dict:
    """JSON mirror of a parsed or constructed field (same schema as the input)."""
    out = {
        "kind": field.kind,
        "vars": list(field.variables),
        "coeffs": {v: render(c) for v, c in zip(field.variables, field.coefficients)},
    }
    params = getattr(field, "params", ())
    if params:
        out["params"] = list(params)
    return out
