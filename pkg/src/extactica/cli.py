"""Command-line front end.

Exit codes: 0 on success, 1 for usage or input errors, 2 when the
computation itself fails (for example ``lines`` on a field whose first
extactic curve vanishes).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .derivation import VectorField
from .extactic import (LinearSystem, contact_order, extactic, extactic_ideal_generators,
                       extactic_system)
from .invariants import (bounds_report, family_analysis, first_integral_degree, invariance_cofactor,
                         invariant_lines, invariant_lines_through_point)
from .parse import ParseError, parse_polynomial, parse_vector_field, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read_source(arg: str, stdin) -> str:
    if arg == "-":
        return stdin.read()
    if arg.lstrip().startswith("{"):
        return arg
    try:
        return Path(arg).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {arg!r}: {exc.strerror}") from None


def _load_field(arg: str | None, stdin, flag: str = "--field") -> VectorField:
    if arg is None:
        raise UsageError(f"{flag} is required")
    text = _read_source(arg, stdin)
    try:
        return parse_vector_field(text).to_field()
    except ParseError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _load_basis(arg: str | None, X: VectorField, stdin) -> LinearSystem:
    if arg is None:
        raise UsageError("--basis is required")
    text = _read_source(arg, stdin) if not arg.lstrip().startswith("[") else arg
    if text.lstrip().startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--basis: invalid JSON: {exc.msg}") from None
        if not isinstance(items, list) or not all(isinstance(i, str) for i in items):
            raise UsageError("--basis: expected a JSON list of polynomial strings")
    else:
        items = [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    try:
        polys = [parse_polynomial(t, X.ring) for t in items]
        return LinearSystem.from_polys(polys, X.variables)
    except ParseError as exc:
        raise UsageError(f"--basis: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"--basis: {exc}") from None


def _parse_point(arg: str | None, X: VectorField) -> list:
    if arg is None:
        raise UsageError("--point is required")
    try:
        coords = [Fraction(c.strip()) for c in arg.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--point: cannot parse {arg!r} as comma-separated rationals") from None
    return coords


def _curve(arg: str | None, X: VectorField):
    if arg is None:
        raise UsageError("--curve is required")
    try:
        return parse_polynomial(arg, X.ring)
    except ParseError as exc:
        raise UsageError(f"--curve: {exc}") from None


def _frac(c) -> str:
    return str(Fraction(c))


def cmd_extactic(args, stdin):
    X = _load_field(args.field, stdin)
    n = args.n if args.n is not None else 1

    def run():
        out = extactic(X, n).to_dict()
        out["n"] = n
        out["field_degree"] = X.degree
        return out

    return run


def cmd_system(args, stdin):
    X = _load_field(args.field, stdin)
    V = _load_basis(args.basis, X, stdin)
    return lambda: extactic_system(X, V).to_dict()


def cmd_first_integral(args, stdin):
    X = _load_field(args.field, stdin)
    dmax = args.dmax

    def run():
        d = first_integral_degree(X, dmax)
        out = {"dmax": dmax, "first_integral_degree": d, "field_degree": X.degree}
        if d is not None and d > 1:
            out["previous_extactic_vanished"] = extactic(X, d - 1).vanished
        return out

    return run


def cmd_invariance(args, stdin):
    X = _load_field(args.field, stdin)
    F = _curve(args.curve, X)
    return lambda: invariance_cofactor(X, F).to_dict()


def cmd_lines(args, stdin):
    X = _load_field(args.field, stdin)

    def run():
        lines = invariant_lines(X)
        return {"field_degree": X.degree, "count": len(lines), "bound": 3 * X.degree,
                "lines": [c.to_dict() for c in lines]}

    return run


def cmd_lines_through(args, stdin):
    X = _load_field(args.field, stdin)
    p = _parse_point(args.point, X)

    def run():
        lines = invariant_lines_through_point(X, p)
        return {"point": [_frac(c) for c in p], "count": len(lines), "bound": X.degree + 1,
                "lines": [c.to_dict() for c in lines]}

    return run


def cmd_contact(args, stdin):
    X = _load_field(args.field, stdin)
    s = _curve(args.curve, X)
    p = _parse_point(args.point, X)
    if len(p) not in (len(X.variables), len(X.ring)):
        raise UsageError(f"--point needs {len(X.variables)} coordinates")

    def run():
        out = contact_order(s, X, p, args.cap).to_dict()
        out["point"] = [_frac(c) for c in p]
        out["curve"] = render(s)
        return out

    return run


def cmd_ideal(args, stdin):
    X = _load_field(args.field, stdin)
    V = _load_basis(args.basis, X, stdin)
    K = args.K if args.K is not None else V.dim - 1

    def run():
        gens = extactic_ideal_generators(X, V, K)
        return {"K": K, "dim": V.dim, "count": len(gens), "generators": [render(g) for g in gens]}

    return run


def cmd_bounds(args, stdin):
    if args.d is None:
        if args.field is None:
            raise UsageError("bounds needs --d or --field")
        d = _load_field(args.field, stdin).degree
    else:
        d = args.d
    n = args.n if args.n is not None else 1
    return lambda: bounds_report(d, n)


def cmd_family(args, stdin):
    X = _load_field(args.fieldX, stdin, "--fieldX")
    Y = _load_field(args.fieldY, stdin, "--fieldY")
    n = args.n if args.n is not None else 1
    return lambda: family_analysis(X, Y, n).to_dict()


COMMANDS = {
    "extactic": cmd_extactic,
    "system": cmd_system,
    "first-integral": cmd_first_integral,
    "invariance": cmd_invariance,
    "lines": cmd_lines,
    "lines-through": cmd_lines_through,
    "contact": cmd_contact,
    "ideal": cmd_ideal,
    "bounds": cmd_bounds,
    "family": cmd_family,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extactica", description="Extactic curves of polynomial vector fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    for verb in COMMANDS:
        p = sub.add_parser(verb)
        p.add_argument("--field", help="field file, inline JSON, or '-' for stdin")
        p.add_argument("--fieldX")
        p.add_argument("--fieldY")
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--dmax", type=int, default=3)
        p.add_argument("--cap", type=int)
        p.add_argument("--point")
        p.add_argument("--curve")
        p.add_argument("--basis")
        p.add_argument("--K", type=int)
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _text(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def format_report(report: dict, fmt: str = "json") -> str:
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _error(kind: str, message: str, stderr) -> None:
    stderr.write(json.dumps({"error": {"type": kind, "message": message}}, sort_keys=True) + "\n")


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("a verb is required: " + ", ".join(COMMANDS))
        if args.n is not None and args.n < 1:
            raise UsageError("--n must be >= 1")
        if args.dmax < 1:
            raise UsageError("--dmax must be >= 1")
        job = COMMANDS[args.verb](args, stdin)
    except UsageError as exc:
        _error("usage", str(exc), stderr)
        return 1
    try:
        report = job()
    except (ValueError, ArithmeticError) as exc:
        _error(type(exc).__name__, str(exc), stderr)
        return 2
    stdout.write(format_report(report, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
