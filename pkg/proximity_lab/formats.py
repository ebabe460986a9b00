"""Text formats: set files, point files and CSV dumps."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .algebra import as_rational, format_rational
from .errors import ParseError

PathLike = Union[str, Path]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _rational(token: str, lineno: int):
    try:
        return as_rational(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: {token!r} is not an integer or p/q rational") from None


def parse_set_text(text: str) -> list:
    """One rational per line ("p/q" or an integer); '#' starts a comment."""
    values = []
    for lineno, line in _content_lines(text):
        if "." in line or "e" in line.lower():
            raise ParseError(f"line {lineno}: {line!r} is not exact; write p/q")
        values.append(_rational(line, lineno))
    return values


def read_set_file(path: PathLike) -> list:
    return parse_set_text(Path(path).read_text())


def write_set_file(path: PathLike, values: Iterable, comment: Optional[str] = None):
    lines = [f"# {comment}"] if comment else []
    lines.extend(format_rational(as_rational(v)) for v in values)
    Path(path).write_text("\n".join(lines) + "\n")


def parse_point_text(text: str) -> list:
    """One point per line as two rationals "x y"."""
    points = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two coordinates, got {len(parts)}")
        points.append((_rational(parts[0], lineno), _rational(parts[1], lineno)))
    return points


def read_point_file(path: PathLike) -> list:
    return parse_point_text(Path(path).read_text())


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    try:
        return format_rational(as_rational(value))
    except (TypeError, ValueError):
        return str(value)


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


QUADRUPLE_HEADER = ("a", "a'", "b", "b'", "gapA", "gapB")
TUPLE_HEADER = ("a", "a'", "b", "b'", "c", "gapA", "gapB")
GROWTH_HEADER = ("N", "sizeA", "sizeB", "image")


def quadruples_csv(quadruples) -> str:
    return rows_to_csv(QUADRUPLE_HEADER, (
        (q.a, q.a2, q.b, q.b2, q.gap_a, q.gap_b) for q in quadruples
    ))


def tuples_csv(tuples) -> str:
    return rows_to_csv(TUPLE_HEADER, (
        (t.a, t.a2, t.b, t.b2, t.c, t.gap_a, t.gap_b) for t in tuples
    ))


def growth_csv(series) -> str:
    return rows_to_csv(GROWTH_HEADER, (
        (e.N, e.size_a, e.size_b, e.image) for e in series.entries
    ))
