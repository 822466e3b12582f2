"""Ongoing closed-open intervals ``[start, end)`` over ongoing points.

Temporal predicates are built from point less-than plus an explicit
non-emptiness conjunct for both operands, because an ongoing interval may be
empty at some reference times and non-empty at others.

``FIXED_PREDICATES`` holds the fixed-interval truth functions (start and end
ticks of two bound intervals).  It is the reference semantics the oracle
evaluates with; the ongoing constructions below must agree with it at every
reference time.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import timepoint as tp
from .boolean import ALWAYS, NEVER, IntervalSet, conjunction, lift, negation
from .timepoint import OngoingPoint, format_point


@dataclass(frozen=True, slots=True)
class OngoingInterval:
    start: OngoingPoint
    end: OngoingPoint

    def __post_init__(self):
        if not isinstance(self.start, OngoingPoint):
            object.__setattr__(self, "start", tp.as_point(self.start))
        if not isinstance(self.end, OngoingPoint):
            object.__setattr__(self, "end", tp.as_point(self.end))

    @property
    def is_fixed(self) -> bool:
        return self.start.a == self.start.b and self.end.a == self.end.b

    def bind(self, rt: int) -> tuple[int, int]:
        return bind_interval(self, rt)

    def __str__(self) -> str:
        return format_interval(self)


def interval(start, end) -> OngoingInterval:
    return OngoingInterval(tp.as_point(start), tp.as_point(end))


def bind_interval(i: OngoingInterval, rt: int) -> tuple[int, int]:
    """Bound ``(start, end)`` pair; empty when ``start >= end``."""
    return tp.bind_point(i.start, rt), tp.bind_point(i.end, rt)


def intersect(i1: OngoingInterval, i2: OngoingInterval) -> OngoingInterval:
    return OngoingInterval(tp.ongoing_max(i1.start, i2.start),
                           tp.ongoing_min(i1.end, i2.end))


def format_interval(i: OngoingInterval, calendar: str | None = None) -> str:
    return f"[{format_point(i.start, calendar)}, {format_point(i.end, calendar)})"


# -- fixed semantics ------------------------------------------------------

def _fixed_overlaps(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and s1 < e2 and s2 < e1


def _fixed_before(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and e1 <= s2


def _fixed_meets(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and e1 == s2


def _fixed_starts(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and s1 == s2 and e1 < e2


def _fixed_during(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and s2 < s1 and e1 < e2


def _fixed_finishes(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and e1 == e2 and s2 < s1


def _fixed_equals(s1, e1, s2, e2):
    return s1 < e1 and s2 < e2 and s1 == s2 and e1 == e2


FIXED_PREDICATES = {
    "before": _fixed_before,
    "overlaps": _fixed_overlaps,
    "meets": _fixed_meets,
    "starts": _fixed_starts,
    "during": _fixed_during,
    "finishes": _fixed_finishes,
    "equals": _fixed_equals,
}


# -- ongoing predicates ---------------------------------------------------

def nonempty(i: OngoingInterval) -> IntervalSet:
    return tp.less_than(i.start, i.end)


def _both_nonempty(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return conjunction(nonempty(i1), nonempty(i2))


def _eq(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    if p == q:
        return ALWAYS
    return conjunction(negation(tp.less_than(p, q)), negation(tp.less_than(q, p)))


def _all(*parts: IntervalSet) -> IntervalSet:
    acc = ALWAYS
    for b in parts:
        acc = conjunction(acc, b)
        if not acc:
            return NEVER
    return acc


def overlaps(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    if i1.is_fixed and i2.is_fixed:
        return lift(_fixed_overlaps(i1.start.a, i1.end.a, i2.start.a, i2.end.a))
    return _all(tp.less_than(i1.start, i2.end), tp.less_than(i2.start, i1.end),
                _both_nonempty(i1, i2))


def before(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    if i1.is_fixed and i2.is_fixed:
        return lift(_fixed_before(i1.start.a, i1.end.a, i2.start.a, i2.end.a))
    return _all(negation(tp.less_than(i2.start, i1.end)), _both_nonempty(i1, i2))


def meets(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return _all(_eq(i1.end, i2.start), _both_nonempty(i1, i2))


def starts(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return _all(_eq(i1.start, i2.start), tp.less_than(i1.end, i2.end),
                _both_nonempty(i1, i2))


def during(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return _all(tp.less_than(i2.start, i1.start), tp.less_than(i1.end, i2.end),
                _both_nonempty(i1, i2))


def finishes(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return _all(_eq(i1.end, i2.end), tp.less_than(i2.start, i1.start),
                _both_nonempty(i1, i2))


def interval_equals(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    return _all(_eq(i1.start, i2.start), _eq(i1.end, i2.end),
                _both_nonempty(i1, i2))


def endpoints_equal(i1: OngoingInterval, i2: OngoingInterval) -> IntervalSet:
    """Reference times at which both bound endpoints coincide (no emptiness check)."""
    return conjunction(_eq(i1.start, i2.start), _eq(i1.end, i2.end))


ONGOING_PREDICATES = {
    "before": before,
    "overlaps": overlaps,
    "meets": meets,
    "starts": starts,
    "during": during,
    "finishes": finishes,
    "equals": interval_equals,
}
