"""Ongoing booleans as canonical sets of closed-open reference-time intervals.

Only the set of reference times at which the boolean is true is stored; the
false set is its complement.  The same structure is the value of a tuple's
``RT`` attribute.

Canonical form: every interval is non-empty, intervals are sorted by start,
and consecutive intervals neither overlap nor touch.  A bound of ``NEG_INF``
is inclusive, so ``[NEG_INF, x)`` reads as ``(-inf, x)``; ``POS_INF`` as an end
is exclusive and is therefore never itself a member.
"""
from __future__ import annotations

import re
from bisect import bisect_right
from typing import Iterable, Iterator

from .ticks import NEG_INF, POS_INF, format_tick, parse_tick

Span = tuple[int, int]


class IntervalSet:
    """Immutable canonical set of ``[start, end)`` tick intervals."""

    __slots__ = ("_spans", "_starts", "_hash")

    def __init__(self, spans: Iterable[Span] = ()):
        self._spans = _canonicalize(spans)
        self._starts = None
        self._hash = None

    @classmethod
    def _canonical(cls, spans: tuple[Span, ...]) -> "IntervalSet":
        # trusted path for operator outputs that are canonical by construction
        obj = cls.__new__(cls)
        obj._spans = spans
        obj._starts = None
        obj._hash = None
        return obj

    @classmethod
    def of(cls, *spans: Span) -> "IntervalSet":
        return cls(spans)

    @property
    def spans(self) -> tuple[Span, ...]:
        return self._spans

    def __iter__(self) -> Iterator[Span]:
        return iter(self._spans)

    def __len__(self) -> int:
        return len(self._spans)

    def __bool__(self) -> bool:
        return bool(self._spans)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._spans == other._spans

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._spans)
        return self._hash

    def __repr__(self) -> str:
        return f"IntervalSet({format_interval_set(self)})"

    def __str__(self) -> str:
        return format_interval_set(self)

    def __contains__(self, rt: int) -> bool:
        return self.bind(rt)

    def bind(self, rt: int) -> bool:
        """Truth value at reference time ``rt``."""
        spans = self._spans
        if not spans:
            return False
        if len(spans) == 1:
            s, e = spans[0]
            return s <= rt < e
        if self._starts is None:
            self._starts = [s for s, _ in spans]
        i = bisect_right(self._starts, rt) - 1
        return i >= 0 and rt < spans[i][1]

    def is_empty(self) -> bool:
        return not self._spans

    def cardinality(self) -> int:
        return len(self._spans)

    def is_canonical(self) -> bool:
        return _is_canonical(self._spans)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return conjunction(self, other)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return disjunction(self, other)

    def __invert__(self) -> "IntervalSet":
        return negation(self)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return conjunction(self, negation(other))


def _is_canonical(spans) -> bool:
    prev_end = None
    for s, e in spans:
        if not s < e:
            return False
        if prev_end is not None and not prev_end < s:
            return False
        prev_end = e
    return True


def _canonicalize(spans: Iterable[Span]) -> tuple[Span, ...]:
    items = []
    for s, e in spans:
        s, e = int(s), int(e)
        if s < NEG_INF or e > POS_INF:
            raise ValueError(f"interval [{s}, {e}) exceeds the tick range")
        if s < e:
            items.append((s, e))
    if _is_canonical(items):
        return tuple(items)
    items.sort()
    merged = [items[0]]
    for s, e in items[1:]:
        ms, me = merged[-1]
        if s <= me:
            if e > me:
                merged[-1] = (ms, e)
        else:
            merged.append((s, e))
    return tuple(merged)


ALWAYS = IntervalSet._canonical(((NEG_INF, POS_INF),))
NEVER = IntervalSet._canonical(())


def lift(value: bool) -> IntervalSet:
    """Fixed boolean as an ongoing boolean."""
    return ALWAYS if value else NEVER


def half_line_before(t: int) -> IntervalSet:
    """``(-inf, t)``"""
    return IntervalSet._canonical(((NEG_INF, t),)) if NEG_INF < t else NEVER


def half_line_from(t: int) -> IntervalSet:
    """``[t, +inf)``"""
    return IntervalSet._canonical(((t, POS_INF),)) if t < POS_INF else NEVER


def _sweep_and(xs, ys):
    out = []
    advances = 0
    i = j = 0
    nx, ny = len(xs), len(ys)
    while i < nx and j < ny:
        s1, e1 = xs[i]
        s2, e2 = ys[j]
        if e1 <= s2:
            i += 1
        elif e2 <= s1:
            j += 1
        else:
            out.append((s1 if s1 > s2 else s2, e1 if e1 < e2 else e2))
            if e1 < e2:
                i += 1
            else:
                j += 1
        advances += 1
    return out, advances


def conjunction(b1: IntervalSet, b2: IntervalSet) -> IntervalSet:
    """Pointwise AND by a two-cursor sweep; each input interval is visited once."""
    xs, ys = b1._spans, b2._spans
    if not xs or not ys:
        return NEVER
    if xs == ALWAYS._spans:
        return b2
    if ys == ALWAYS._spans:
        return b1
    out, _ = _sweep_and(xs, ys)
    return IntervalSet._canonical(tuple(out))


def conjunction_traced(b1: IntervalSet, b2: IntervalSet) -> tuple[IntervalSet, int]:
    """Like :func:`conjunction` without shortcuts; also returns the cursor advance count."""
    out, advances = _sweep_and(b1._spans, b2._spans)
    return IntervalSet._canonical(tuple(out)), advances


def disjunction(b1: IntervalSet, b2: IntervalSet) -> IntervalSet:
    """Pointwise OR: merge by start, coalescing overlapping or touching intervals."""
    xs, ys = b1._spans, b2._spans
    if not xs:
        return b2
    if not ys:
        return b1
    out: list[Span] = []
    i = j = 0
    nx, ny = len(xs), len(ys)
    while i < nx or j < ny:
        if j >= ny or (i < nx and xs[i][0] <= ys[j][0]):
            s, e = xs[i]
            i += 1
        else:
            s, e = ys[j]
            j += 1
        if out and s <= out[-1][1]:
            if e > out[-1][1]:
                out[-1] = (out[-1][0], e)
        else:
            out.append((s, e))
    return IntervalSet._canonical(tuple(out))


def negation(b: IntervalSet) -> IntervalSet:
    """Complement over ``[NEG_INF, POS_INF)``."""
    out: list[Span] = []
    cursor = NEG_INF
    for s, e in b._spans:
        if cursor < s:
            out.append((cursor, s))
        cursor = e
    if cursor < POS_INF:
        out.append((cursor, POS_INF))
    return IntervalSet._canonical(tuple(out))


def conjoin_all(items: Iterable[IntervalSet]) -> IntervalSet:
    acc = ALWAYS
    for b in items:
        acc = conjunction(acc, b)
        if not acc:
            break
    return acc


def disjoin_all(items: Iterable[IntervalSet]) -> IntervalSet:
    acc = NEVER
    for b in items:
        acc = disjunction(acc, b)
    return acc


def format_interval_set(b: IntervalSet, calendar: str | None = None) -> str:
    parts = []
    for s, e in b._spans:
        opening = "(" if s == NEG_INF else "["
        parts.append(f"{opening}{format_tick(s, calendar)},{format_tick(e, calendar)})")
    return "{" + ",".join(parts) + "}"


_SPAN_RE = re.compile(r"\s*([\[(])\s*([^,\[\]()]+?)\s*,\s*([^,\[\]()]+?)\s*\)\s*")


def parse_interval_set(text: str) -> IntervalSet:
    """Parse ``{[a,b),(-inf,c),...}``; the result is canonicalized."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"interval set must be wrapped in braces: {text!r}")
    body = s[1:-1].strip()
    spans = []
    pos = 0
    while pos < len(body):
        m = _SPAN_RE.match(body, pos)
        if not m:
            raise ValueError(f"bad interval set syntax at offset {pos}: {text!r}")
        start, end = parse_tick(m.group(2)), parse_tick(m.group(3))
        if m.group(1) == "(" and start != NEG_INF:
            raise ValueError(f"only -inf may use an open start bound: {text!r}")
        spans.append((start, end))
        pos = m.end()
        if pos < len(body):
            if body[pos] != ",":
                raise ValueError(f"expected ',' at offset {pos}: {text!r}")
            pos += 1
            if not body[pos:].strip():
                raise ValueError(f"trailing ',' in interval set: {text!r}")
    return IntervalSet(spans)
