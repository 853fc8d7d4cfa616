"""JSON and CSV documents.

Every rational on disk is a string (``"3/8"``), never a JSON number.  CSV path
input accepts finite decimals, which are converted exactly.
"""
from __future__ import annotations

import csv
import io
import json
import re
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Union

from .construct import PLReparam
from .exactnum import ClosedInterval, format_rational, parse_rational
from .pathreg import PLPath
from .stopdata import ConditionReport, CONDITIONS, StopFamily, StopMap, VerdictKind

KINDS = ("stopmap", "family", "reparam", "path", "csv-path")

_DECIMAL_RE = re.compile(r"^\s*-?(\d+\.?\d*|\.\d+)\s*$")


class ParseError(ValueError):
    """Text that is not well-formed JSON/CSV or not a rational literal."""


class SchemaError(ValueError):
    """Well-formed input with the wrong shape, or violating a type invariant."""


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: rationals must be strings, got {json.dumps(value)}")
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _decimal(text: str, where: str) -> Fraction:
    if _DECIMAL_RE.match(text):
        return Fraction(Decimal(text.strip()))
    try:
        return parse_rational(text)
    except ValueError:
        raise ParseError(f"{where}: not an exact decimal or rational: {text!r}") from None


def _list(value: Any, where: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected an array")
    if length is not None and len(value) != length:
        raise SchemaError(f"{where}: expected {length} entries, got {len(value)}")
    return value


def _field(doc: Any, key: str) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    return doc[key]


def _intervals(raw: Any) -> List[ClosedInterval]:
    out = []
    for i, pair in enumerate(_list(raw, "intervals")):
        pair = _list(pair, f"intervals[{i}]", 2)
        lo = _rational(pair[0], f"intervals[{i}][0]")
        hi = _rational(pair[1], f"intervals[{i}][1]")
        try:
            out.append(ClosedInterval(lo, hi))
        except ValueError as exc:
            raise SchemaError(f"intervals[{i}]: {exc}") from None
    return out


def parse_document(data: Union[str, bytes], kind: str) -> Any:
    """Parse ``data`` as a document of the given kind."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    if kind == "csv-path":
        return parse_csv_path(data)
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        if kind == "family":
            return StopFamily(tuple(_intervals(_field(doc, "intervals"))))
        if kind == "stopmap":
            ivs = _intervals(_field(doc, "intervals"))
            vals = [_rational(v, f"values[{i}]")
                    for i, v in enumerate(_list(_field(doc, "values"), "values"))]
            return StopMap(StopFamily(tuple(ivs)), tuple(vals))
        if kind == "reparam":
            pts = []
            for i, pair in enumerate(_list(_field(doc, "breakpoints"), "breakpoints")):
                pair = _list(pair, f"breakpoints[{i}]", 2)
                pts.append((_rational(pair[0], f"breakpoints[{i}][0]"),
                            _rational(pair[1], f"breakpoints[{i}][1]")))
            return PLReparam(tuple(pts))
        dim = _field(doc, "dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise SchemaError("dim must be a positive integer")
        pts = []
        for i, pair in enumerate(_list(_field(doc, "breakpoints"), "breakpoints")):
            pair = _list(pair, f"breakpoints[{i}]", 2)
            t = _rational(pair[0], f"breakpoints[{i}][0]")
            coords = _list(pair[1], f"breakpoints[{i}][1]", dim)
            pts.append((t, tuple(_rational(c, f"breakpoints[{i}][1][{k}]")
                                 for k, c in enumerate(coords))))
        return PLPath(dim, tuple(pts))
    except (ParseError, SchemaError):
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def parse_csv_path(text: str) -> PLPath:
    """Rows ``t,x1,...,xd``; an optional non-numeric header row is skipped."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and not _DECIMAL_RE.match(rows[0][0]) and "/" not in rows[0][0]:
        rows = rows[1:]
    if len(rows) < 2:
        raise SchemaError("a path needs at least two rows")
    dim = len(rows[0]) - 1
    if dim < 1:
        raise SchemaError("rows need a parameter and at least one coordinate")
    pts = []
    for line, row in enumerate(rows, start=1):
        if len(row) != dim + 1:
            raise SchemaError(f"row {line}: expected {dim + 1} columns, got {len(row)}")
        vals = [_decimal(c, f"row {line}") for c in row]
        pts.append((vals[0], tuple(vals[1:])))
    try:
        return PLPath(dim, tuple(pts))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def dumps(doc: dict) -> str:
    return json.dumps(doc) + "\n"


def render_document(obj: Union[StopMap, StopFamily, PLReparam, PLPath]) -> str:
    return dumps(obj.to_json())


def render_report(report: ConditionReport) -> str:
    """One line per condition, e.g. ``condition 8: VIOLATED sup F = 1, expected < 1``."""
    lines = []
    for name in CONDITIONS:
        v = report[name]
        if v.kind is VerdictKind.CONSISTENT_UP_TO_DEPTH:
            text = f"CONSISTENT UP TO DEPTH {v.depth}"
        elif v.kind is VerdictKind.VIOLATED:
            text = f"VIOLATED {v.detail}"
        else:
            text = v.kind.value
        lines.append(f"condition {name}: {text}")
    return "\n".join(lines) + "\n"


def render_report_json(report: ConditionReport) -> str:
    return dumps(report.to_json())


def format_decimal(x: Fraction, precision: int) -> str:
    """``x`` rounded half-to-even to ``precision`` digits after the point."""
    scaled = round(x * 10 ** precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def format_rationals(xs: Iterable[Fraction]) -> List[str]:
    return [format_rational(x) for x in xs]
