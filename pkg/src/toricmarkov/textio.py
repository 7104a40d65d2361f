"""Parsing and rendering of matrices, moves and binomials.

Matrices are read from ``"7,8,9,10"``-style strings (rows split by ``;`` or
newlines, entries by commas or whitespace) or from JSON. Moves are written as
integer rows, as JSON, or as binomials ``x1^2 - x2`` over ``x1..xn``.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from .errors import ParseError, RaggedRows
from .seedbasis import canonical, negative_part, positive_part

_INT = re.compile(r"[+-]?\d+")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _json_rows(obj) -> list[list[int]]:
    if isinstance(obj, dict):
        for key in ("rows", "matrix"):
            if key in obj:
                return _json_rows(obj[key])
        raise ParseError('JSON object needs a "rows" or "matrix" field')
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a nonempty list of rows")
    if all(isinstance(x, int) for x in obj):
        obj = [obj]
    rows = []
    for r in obj:
        if not isinstance(r, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError("rows must be lists of integers")
        rows.append(list(r))
    return rows


def _check_rectangular(rows: list[list[int]]) -> list[list[int]]:
    if not rows or not rows[0]:
        raise ParseError("matrix is empty")
    n = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != n:
            raise RaggedRows(f"row {i + 1} has {len(r)} entries, expected {n}", i + 1, 1)
    return rows


def parse_matrix(text: str) -> list[list[int]]:
    """Parse a rectangular integer matrix.

    Raises:
        ParseError: a token is not an integer (position reported).
        RaggedRows: rows have different lengths.
    """
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return _check_rectangular(_json_rows(obj))

    rows: list[list[int]] = []
    offset = 0
    for chunk in re.split(r"(;|\n)", text):
        if chunk in (";", "\n"):
            offset += 1
            continue
        row = []
        for m in re.finditer(r"[^\s,]+", chunk):
            tok = m.group()
            if not _INT.fullmatch(tok):
                line, col = _position(text, offset + m.start())
                raise ParseError(f"not an integer: {tok!r}", line, col)
            row.append(int(tok))
        if row:
            rows.append(row)
        elif chunk.strip(" \t\r,"):
            line, col = _position(text, offset)
            raise ParseError("malformed row", line, col)
        offset += len(chunk)
    return _check_rectangular(rows)


# --- binomials -------------------------------------------------------------------


def render_monomial(exponents: Sequence[int]) -> str:
    factors = []
    for i, e in enumerate(exponents):
        if e == 1:
            factors.append(f"x{i + 1}")
        elif e:
            factors.append(f"x{i + 1}^{e}")
    return "*".join(factors) or "1"


def render_binomial(move: Sequence[int]) -> str:
    """``x^{z+} - x^{z-}`` for a move ``z``; a zero side renders as ``1``."""
    return f"{render_monomial(positive_part(move))} - {render_monomial(negative_part(move))}"


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int) -> list[int]:
    exps = [0] * n
    text = text.strip()
    if text == "1":
        return exps
    for factor in text.split("*"):
        m = _FACTOR.match(factor.strip())
        if not m:
            raise ParseError(f"bad monomial factor {factor.strip()!r}")
        i = int(m.group(1)) - 1
        if not 0 <= i < n:
            raise ParseError(f"variable x{i + 1} outside x1..x{n}")
        exps[i] += int(m.group(2) or 1)
    return exps


def parse_binomial(text: str, n: int) -> tuple[int, ...]:
    """Inverse of :func:`render_binomial`; returns the move in canonical sign."""
    parts = text.split(" - ")
    if len(parts) != 2:
        raise ParseError(f"expected 'monomial - monomial', got {text.strip()!r}")
    u = parse_monomial(parts[0], n)
    v = parse_monomial(parts[1], n)
    return canonical(tuple(a - b for a, b in zip(u, v)))


# --- basis formats ---------------------------------------------------------------


def format_rows(moves: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, z)) + "\n" for z in moves)


def format_binomial_line(moves: Sequence[Sequence[int]]) -> str:
    return ", ".join(render_binomial(z) for z in moves) + "\n"


def parse_bases(text: str, n: int) -> list[list[tuple[int, ...]]]:
    """Read one or more move sets in any output format of the CLI.

    JSON: an object with ``"moves"`` or ``"bases"``. Binomials: one basis per
    line. Rows: one move per line, bases separated by blank lines.
    """
    stripped = text.strip()
    if not stripped:
        return [[]]
    if stripped.startswith(("{", "[")):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if isinstance(obj, dict) and "bases" in obj:
            groups = obj["bases"]
        elif isinstance(obj, dict) and "moves" in obj:
            groups = [obj["moves"]]
        elif isinstance(obj, list):
            groups = [obj]
        else:
            raise ParseError('JSON input needs a "moves" or "bases" field')
        return [[canonical(tuple(int(x) for x in z)) for z in g] for g in groups]

    if "x" in stripped:
        bases = []
        for line in stripped.splitlines():
            line = line.strip().strip("{}")
            if line:
                bases.append([parse_binomial(b, n) for b in line.split(",") if b.strip()])
        return bases

    bases, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if current:
                bases.append(current)
                current = []
            continue
        toks = line.split()
        if not all(_INT.fullmatch(t) for t in toks):
            raise ParseError(f"not a row of integers: {line.strip()!r}", lineno, 1)
        if len(toks) != n:
            raise RaggedRows(f"move has {len(toks)} entries, expected {n}", lineno, 1)
        current.append(canonical(tuple(int(t) for t in toks)))
    if current:
        bases.append(current)
    return bases
