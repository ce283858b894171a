"""Command-line entry point.

Every document written to stdout is JSON carrying ``"v": 1``.  Exit codes
are the pass/fail channel:

    0  success, agreement or a settled codimension verdict
    1  unusable input
    2  two routes disagree
    3  undetermined
"""

from __future__ import annotations

import argparse
import gzip
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import codim, cq_direct, cq_generic, oracle
from .cones import ConeDescriptor, as_polyhedral, linearized_cone, tangent_cone_descriptor
from .germ import ConstraintGerm, NormalFormDescriptor, realize, validate
from .poly import format_rational
from .polyhedral import DimensionError, PolyhedralCone, cone_equal_polyhedral, polar

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_UNDETERMINED = 0, 1, 2, 3
NOT_DECIDABLE = "not decidable directly; supply a descriptor or run oracle"


class InputError(Exception):
    def __init__(self, message: str, field: str | None = None, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.field, self.line, self.column = field, line, column

    def to_json(self) -> dict:
        out = {"message": str(self)}
        for key in ("field", "line", "column"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for disagreement
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _num(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else format_rational(x)


def _emit(doc: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps({"v": SCHEMA_VERSION, **doc}) + "\n")


# ---------------------------------------------------------------------------
# input


def _read(source: str | None) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def parse_request(text: str) -> ConstraintGerm | NormalFormDescriptor:
    """A germ or a descriptor from JSON text, bare or wrapped in ``{"germ": ...}`` / ``{"descriptor": ...}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict):
        raise InputError("the input must be a JSON object")
    data = {k: v for k, v in data.items() if k != "v"}
    wrapped = [k for k in ("germ", "descriptor") if k in data]
    if len(wrapped) > 1:
        raise InputError("give exactly one of 'germ' and 'descriptor'")
    if wrapped:
        key = wrapped[0]
        if len(data) > 1:
            raise InputError(f"unexpected fields next to '{key}': {sorted(set(data) - {key})}")
        data, prefix = data[key], key + "."
        if not isinstance(data, dict):
            raise InputError("must be a JSON object", field=key)
        is_descriptor = key == "descriptor"
    else:
        prefix = ""
        has_table = "table" in data
        has_maps = "g" in data or "h" in data
        if has_table and has_maps:
            raise InputError("the input mixes germ fields (g, h) with descriptor fields (table)")
        if not has_table and not has_maps:
            raise InputError("expected a germ (fields n, g, h) or a descriptor (field table)")
        is_descriptor = has_table
    return _descriptor(data, prefix) if is_descriptor else _germ(data, prefix)


def _germ(data: dict, prefix: str) -> ConstraintGerm:
    if "n" not in data:
        raise InputError("missing", field=prefix + "n")
    try:
        n = int(data["n"])
    except (TypeError, ValueError):
        raise InputError("must be an integer", field=prefix + "n") from None
    if n < 1:
        raise InputError("must be positive", field=prefix + "n")
    for key in ("g", "h"):
        value = data.get(key, [])
        if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
            raise InputError("must be a list of polynomial strings", field=prefix + key)
    unknown = set(data) - {"n", "g", "h"}
    if unknown:
        raise InputError(f"unknown fields {sorted(unknown)}", field=prefix.rstrip(".") or None)
    try:
        return ConstraintGerm.from_json(data)
    except ValueError as exc:
        msg = str(exc)
        field, _, rest = msg.partition(": ")
        if rest and field[:2] in ("g[", "h["):
            raise InputError(rest, field=prefix + field) from None
        raise InputError(msg, field=prefix.rstrip(".") or None) from None


def _descriptor(data: dict, prefix: str) -> NormalFormDescriptor:
    try:
        d = NormalFormDescriptor.from_json(data)
    except KeyError as exc:
        raise InputError("missing", field=prefix + str(exc.args[0])) from None
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc), field=prefix.rstrip(".") or None) from None
    problems = validate(d)
    if problems:
        raise InputError("; ".join(problems), field=prefix.rstrip(".") or None)
    return d


def _describe(target) -> dict:
    if isinstance(target, NormalFormDescriptor):
        return {"descriptor": target.to_json()}
    return {"germ": target.to_json()}


# ---------------------------------------------------------------------------
# commands


def _direct(germ: ConstraintGerm) -> dict:
    result = cq_direct.mfcq(germ)
    out = {"licq": cq_direct.licq(germ), "mfcq": result.holds}
    if result.holds:
        out["witness"] = [_num(x) for x in result.witness]
    return out


def cmd_check(target, args) -> tuple[dict, int]:
    if isinstance(target, NormalFormDescriptor):
        verdict = cq_generic.decide(target)
        direct = _direct(realize(target))
        doc = {**_describe(target), **verdict.to_json(), "direct": direct}
        same = (direct["licq"], direct["mfcq"]) == (verdict.licq, verdict.mfcq)
        return doc, EXIT_OK if same else EXIT_DISAGREE
    if not target.feasible:
        return {**_describe(target), "verdict": "infeasible"}, EXIT_OK
    doc = {**_describe(target), **_direct(target), "acq": NOT_DECIDABLE, "gcq": NOT_DECIDABLE}
    return doc, EXIT_OK


def _cone_json(cone: PolyhedralCone) -> dict:
    fmt = lambda rows: [[_num(x) for x in r] for r in rows]
    return {"le": fmt(cone.le), "eq": fmt(cone.eq), "rays": fmt(cone.rays), "lineality": fmt(cone.lineality)}


def cmd_cones(target, args) -> tuple[dict, int]:
    germ = realize(target) if isinstance(target, NormalFormDescriptor) else target
    if not germ.feasible:
        return {**_describe(target), "verdict": "infeasible"}, EXIT_OK
    L = linearized_cone(germ).canonical()
    doc = {**_describe(target), "linearized": _cone_json(L), "linearized_polar": _cone_json(polar(L))}
    if not isinstance(target, NormalFormDescriptor):
        doc["tangent"] = "not derivable from a germ; supply a descriptor or run oracle"
        return doc, EXIT_OK
    tc = tangent_cone_descriptor(target)
    doc["tangent"] = {"branch": tc.branch, **tc.to_json()}
    P = as_polyhedral(tc)
    if P is None:
        doc["tangent_polyhedral"] = None
        return doc, EXIT_OK
    P = P.canonical()
    acq = cone_equal_polyhedral(P, L)
    doc["tangent_polyhedral"] = _cone_json(P)
    doc["tangent_polar"] = _cone_json(polar(P))
    doc["acq_from_cones"] = acq
    return doc, EXIT_OK if acq == cq_generic.decide(target).acq else EXIT_DISAGREE


def _linearized_descriptor(germ: ConstraintGerm) -> ConeDescriptor:
    L = linearized_cone(germ)
    rows = list(L.le) + list(L.eq) + [tuple(-x for x in w) for w in L.eq]
    return ConeDescriptor(germ.n, linear_le=rows, branch="linearized")


def cmd_oracle(target, args) -> tuple[dict, int]:
    germ = realize(target) if isinstance(target, NormalFormDescriptor) else target
    if not germ.feasible:
        return {**_describe(target), "verdict": "infeasible"}, EXIT_OK
    if isinstance(target, NormalFormDescriptor):
        report = oracle.cone_agreement(target, budget=args.budget, seed=args.seed)
        candidate = "tangent"
    else:
        # without a descriptor the only candidate is the linearized cone
        report = oracle.cone_agreement(
            germ, budget=args.budget, seed=args.seed, cone=_linearized_descriptor(germ), label=str(germ)
        )
        candidate = "linearized"
    doc = {**_describe(target), "candidate": candidate, "report": report.to_json()}
    return doc, EXIT_OK if report.agree else EXIT_DISAGREE


def cmd_codim(target, args) -> tuple[dict, int]:
    if isinstance(target, NormalFormDescriptor):
        report = codim.descriptor_report(target, args.kmax)
    else:
        report = codim.codim_sequence(target, args.kmax)
    doc = {**_describe(target), "kmax": args.kmax, **report.to_json()}
    return doc, EXIT_UNDETERMINED if report.verdict == codim.UNDETERMINED else EXIT_OK


def parse_bounds(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in ("n", "q"):
            raise InputError(f"bad bound {part!r}; expected n=..,q=..", field="bounds")
        try:
            out[key] = int(value)
        except ValueError:
            raise InputError(f"bound {key} must be an integer", field="bounds") from None
    if "n" not in out:
        raise InputError("the bound n is required", field="bounds")
    out.setdefault("q", 4)
    return out


def cmd_catalog(args) -> int:
    bounds = parse_bounds(args.bounds)
    tables = None
    if args.table:
        tables = [t.strip().upper() for t in args.table.split(",") if t.strip()]
    try:
        rows = cq_generic.enumerate_catalog(bounds["n"], bounds["q"], tables, jobs=args.jobs)
        out = gzip.open(args.output, "wt", encoding="utf-8") if args.output else sys.stdout
        try:
            for d, verdict in rows:
                _emit({"descriptor": d.to_json(), **verdict.to_json()}, out)
        finally:
            if args.output:
                out.close()
    except ValueError as exc:
        raise InputError(str(exc), field="bounds") from None
    return EXIT_OK


COMMANDS = {"check": cmd_check, "cones": cmd_cones, "oracle": cmd_oracle, "codim": cmd_codim}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="germcq", description="Constraint qualifications of constraint germs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (
        ("check", "LICQ/MFCQ/ACQ/GCQ verdicts"),
        ("cones", "tangent and linearized cones with their polars"),
        ("oracle", "sampling evidence for the tangent cone"),
        ("codim", "codimension sequence of the germ"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", nargs="?", help="JSON file; stdin when omitted or '-'")
        if name == "oracle":
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--budget", type=int, default=4000, help="samples per radius")
        if name == "codim":
            p.add_argument("--kmax", type=int, default=8)
    p = sub.add_parser("catalog", help="stream every catalog descriptor with its verdict")
    p.add_argument("--bounds", required=True, help="e.g. n=3,q=4")
    p.add_argument("--table", help="comma-separated subset of T1,T2,T3")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="write gzip-compressed JSON-lines to this path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(args)
        if args.command == "codim" and args.kmax < 3:
            raise InputError("kmax must be at least 3", field="kmax")
        if args.command == "oracle" and args.budget < 1:
            raise InputError("budget must be positive", field="budget")
        target = parse_request(_read(args.input))
        doc, code = COMMANDS[args.command](target, args)
    except InputError as exc:
        _emit({"error": exc.to_json()})
        return EXIT_INPUT
    except DimensionError as exc:
        _emit({"error": {"message": str(exc)}})
        return EXIT_INPUT
    _emit({"command": args.command, **doc})
    return code


if __name__ == "__main__":
    sys.exit(main())
