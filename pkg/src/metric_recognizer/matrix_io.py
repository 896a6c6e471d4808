"""Reading and writing matrices as whitespace text, CSV or JSON.

Text layout: an optional first line holding only ``m``, then ``m`` rows of
``m`` tokens. Lines starting with ``#`` and blank lines are skipped. Tokens are
integers, decimals or ``p/q``. CSV is the same grid with commas; JSON is a
list of rows or ``{"matrix": [...]}``.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .errors import ParseError
from .matrix import PredistanceMatrix

FORMATS = ("text", "csv", "json")


def _token(tok: str, line: int, column: int, eps: float | None):
    try:
        value = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read {tok!r} as a number", line, column) from None
    return value if eps is None else float(value)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield lineno, raw


def _text_grid(text: str, eps):
    rows = []
    for lineno, raw in _content_lines(text):
        row = []
        pos = 0
        for tok in raw.split():
            col = raw.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            row.append((tok, col))
        rows.append((lineno, row))
    return _assemble(rows, eps)


def _csv_grid(text: str, eps):
    rows = []
    for lineno, raw in _content_lines(text):
        fields = next(csv.reader([raw]))
        rows.append((lineno, [(f.strip(), c) for c, f in enumerate(fields, start=1)]))
    return _assemble(rows, eps)


def _assemble(rows, eps):
    if not rows:
        raise ParseError("no matrix rows found")
    declared = None
    first_line, first = rows[0]
    if len(first) == 1 and len(rows) > 1 and len(rows[1][1]) != 1:
        tok, col = first[0]
        try:
            declared = int(tok)
        except ValueError:
            raise ParseError(f"order line must be an integer, got {tok!r}", first_line, col) from None
        rows = rows[1:]
    m = declared if declared is not None else len(rows[0][1])
    if m < 2:
        raise ParseError(f"matrix order must be at least 2, got {m}", first_line)
    if len(rows) != m:
        line = rows[-1][0] if len(rows) > m else None
        raise ParseError(f"expected {m} rows, found {len(rows)}", line)
    grid = []
    for lineno, row in rows:
        if len(row) != m:
            col = row[m][1] if len(row) > m else None
            raise ParseError(f"expected {m} entries, found {len(row)}", lineno, col)
        grid.append([_token(tok, lineno, col, eps) for tok, col in row])
    return grid


def _json_grid(text: str, eps):
    try:
        data = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("JSON input must be a list of rows or an object with a 'matrix' key")
    grid = []
    for i, row in enumerate(data, start=1):
        out = []
        for j, x in enumerate(row, start=1):
            if isinstance(x, bool) or not isinstance(x, (int, str, Fraction)):
                raise ParseError(f"row {i}, entry {j}: {x!r} is not a number")
            try:
                v = Fraction(x)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"row {i}, entry {j}: cannot read {x!r} as a number") from None
            out.append(v if eps is None else float(v))
        grid.append(out)
    if len(grid) < 2:
        raise ParseError(f"matrix order must be at least 2, got {len(grid)}")
    return grid


def parse_matrix(text: str, fmt: str = "text", *, eps: float | None = None) -> PredistanceMatrix:
    """Parse ``text`` into a (not yet triangle-checked) predistance matrix.

    Raises ``ParseError`` for syntax problems and ``ShapeError`` when the grid
    is not a predistance matrix.
    """
    if fmt == "text":
        grid = _text_grid(text, eps)
    elif fmt == "csv":
        grid = _csv_grid(text, eps)
    elif fmt == "json":
        grid = _json_grid(text, eps)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return PredistanceMatrix(grid, eps=eps)


def read_matrix(path, fmt: str | None = None, *, eps: float | None = None) -> PredistanceMatrix:
    path = str(path)
    if fmt is None:
        fmt = "csv" if path.endswith(".csv") else "json" if path.endswith(".json") else "text"
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), fmt, eps=eps)


def _fmt_entry(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def format_matrix(M: PredistanceMatrix, fmt: str = "text", *, header: bool = True) -> str:
    """Canonical serialization; exact entries print as ``p/q`` (or ``p``)."""
    rows = [[_fmt_entry(x) for x in row] for row in M.rows()]
    if fmt == "json":
        return json.dumps({"matrix": rows})
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    width = max(len(t) for row in rows for t in row)
    lines = [str(M.m)] if header else []
    lines += [" ".join(t.rjust(width) for t in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_matrix(M: PredistanceMatrix, path, fmt: str = "text") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(M, fmt))

