"""CSV persistence for relations.

The header row declares ``name:type`` for every attribute, with types from
``int, text, tick, opoint, ointerval``.  An optional final ``RT`` column holds
the reference time as an interval set such as ``{[737085,737287)}``; when it is
absent every tuple gets the trivial reference time.  Ongoing cells use the
query literal syntax (``now``, ``from(2019-01-25)``, ``[2019-01-25, now)``).
"""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, TextIO

from .boolean import ALWAYS, format_interval_set, parse_interval_set
from .errors import DataError, OngoingError, QueryError
from .interval import OngoingInterval, format_interval
from .plan import NUM, IntervalExpr, Literal
from .relation import (
    Attribute,
    FixedRelation,
    OngoingRelation,
    OngoingTuple,
    Schema,
    ValueType,
)
from .ticks import format_tick, parse_tick
from .timepoint import OngoingPoint, as_point, format_point


def _point_from_ast(node, text: str) -> OngoingPoint:
    if isinstance(node, Literal) and (node.type in (NUM, ValueType.TICK) or node.type is ValueType.OPOINT):
        return as_point(node.value)
    raise DataError(f"not a time point: {text!r}")


def parse_point(text: str) -> OngoingPoint:
    from .query import parse_value
    try:
        return _point_from_ast(parse_value(text), text)
    except QueryError as exc:
        raise DataError(f"bad time point {text!r}: {exc}") from None


def parse_interval(text: str) -> OngoingInterval:
    from .query import parse_value
    try:
        node = parse_value(text)
    except QueryError as exc:
        raise DataError(f"bad interval {text!r}: {exc}") from None
    if not isinstance(node, IntervalExpr):
        raise DataError(f"not an interval: {text!r}")
    return OngoingInterval(_point_from_ast(node.start, text), _point_from_ast(node.end, text))


def parse_cell(vtype: ValueType, text: str):
    try:
        if vtype is ValueType.INT:
            return int(text)
        if vtype is ValueType.TEXT:
            return text
        if vtype is ValueType.TICK:
            return parse_tick(text)
    except (ValueError, TypeError) as exc:
        raise DataError(f"bad {vtype} value {text!r}: {exc}") from None
    if vtype is ValueType.OPOINT:
        return parse_point(text)
    return parse_interval(text)


def format_cell(vtype: ValueType, value, calendar: str | None = None) -> str:
    if vtype in (ValueType.INT, ValueType.TEXT):
        return str(value)
    if isinstance(value, OngoingPoint):
        return format_point(value, calendar)
    if isinstance(value, OngoingInterval):
        return format_interval(value, calendar)
    if isinstance(value, tuple):
        return f"[{format_tick(value[0], calendar)}, {format_tick(value[1], calendar)})"
    return format_tick(value, calendar)


def parse_header(header: list[str]) -> tuple[Schema, bool]:
    has_rt = bool(header) and header[-1].strip().upper() == "RT"
    cols = header[:-1] if has_rt else header
    attrs = []
    for col in cols:
        name, sep, vtype = col.strip().partition(":")
        if not sep:
            raise DataError(f"header cell {col!r} must be name:type")
        try:
            attrs.append(Attribute(name.strip(), ValueType(vtype.strip())))
        except ValueError:
            raise DataError(f"unknown type {vtype!r} in header cell {col!r}") from None
        except OngoingError as exc:
            raise DataError(str(exc)) from None
    try:
        return Schema(tuple(attrs)), has_rt
    except OngoingError as exc:
        raise DataError(str(exc)) from None


def read_relation(source: str | Path | TextIO) -> OngoingRelation:
    """Load one relation; raises DataError naming the offending line."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_relation(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty relation file: missing header") from None
    schema, has_rt = parse_header(header)
    width = len(schema) + (1 if has_rt else 0)
    rel = OngoingRelation(schema, [])
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        if len(row) != width:
            raise DataError(f"line {line}: expected {width} cells, got {len(row)}")
        try:
            values = tuple(parse_cell(a.type, cell) for a, cell in zip(schema, row))
            rt = parse_interval_set(row[-1]) if has_rt else ALWAYS
        except (DataError, ValueError) as exc:
            raise DataError(f"line {line}: {exc}") from None
        if rt:
            rel.tuples.append(OngoingTuple(values, rt))
    return rel


def _header(schema: Schema) -> list[str]:
    return [f"{n}:{a.type}" for n, a in zip(schema.display_names(), schema)]


def write_relation(rel: OngoingRelation, sink: TextIO | None = None,
                   calendar: str | None = None) -> str:
    """Write an ongoing relation with its RT column; returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_header(rel.schema) + ["RT"])
    types = rel.schema.types
    for t in rel.tuples:
        writer.writerow([format_cell(vt, v, calendar) for vt, v in zip(types, t.values)]
                        + [format_interval_set(t.rt, calendar)])
    text = buf.getvalue()
    if sink is not None:
        sink.write(text)
    return text


def write_fixed(rel: FixedRelation, sink: TextIO | None = None,
                calendar: str | None = None) -> str:
    """Write an instantiated relation (no RT column), rows in sorted order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_header(rel.schema))
    types = rel.schema.types
    for row in sorted(rel.rows):
        writer.writerow([format_cell(vt, v, calendar) for vt, v in zip(types, row)])
    text = buf.getvalue()
    if sink is not None:
        sink.write(text)
    return text


def load_catalog(directory: str | Path, names: Iterable[str] | None = None) -> dict[str, OngoingRelation]:
    """Every ``*.csv`` in ``directory`` keyed by file stem."""
    root = Path(directory)
    if not root.is_dir():
        raise DataError(f"data directory {str(root)!r} does not exist")
    wanted = set(names) if names is not None else None
    catalog = {}
    for path in sorted(root.glob("*.csv")):
        if wanted is not None and path.stem not in wanted:
            continue
        try:
            catalog[path.stem] = read_relation(path)
        except DataError as exc:
            raise DataError(f"{path.name}: {exc}") from None
    return catalog


def save_catalog(catalog: dict[str, OngoingRelation], directory: str | Path,
                 calendar: str | None = None) -> None:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    for name, rel in catalog.items():
        with open(root / f"{name}.csv", "w", newline="", encoding="utf-8") as fh:
            write_relation(rel, fh, calendar)
