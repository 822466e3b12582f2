"""Ongoing time points ``<a|b>``: not earlier than ``a``, not later than ``b``.

``<t|t>`` is the fixed point ``t``, ``<-inf|+inf>`` is ``now``, ``<a|+inf>``
grows from ``a`` and ``<-inf|b>`` is limited by ``b``.  Min and max are closed
over this domain; less-than yields an ongoing boolean.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable

from .boolean import (
    ALWAYS,
    NEVER,
    IntervalSet,
    conjunction,
    half_line_before,
    half_line_from,
    negation,
)
from .ticks import NEG_INF, POS_INF, check_tick, format_tick, successor


@dataclass(frozen=True, slots=True)
class OngoingPoint:
    a: int
    b: int

    def __post_init__(self):
        check_tick(self.a)
        check_tick(self.b)
        if self.a > self.b:
            raise ValueError(f"ongoing point requires a <= b, got <{self.a}|{self.b}>")

    @property
    def is_fixed(self) -> bool:
        return self.a == self.b

    @property
    def is_now(self) -> bool:
        return self.a == NEG_INF and self.b == POS_INF

    @property
    def is_growing(self) -> bool:
        return self.b == POS_INF and NEG_INF < self.a < POS_INF

    @property
    def is_limited(self) -> bool:
        return self.a == NEG_INF and NEG_INF < self.b < POS_INF

    def bind(self, rt: int) -> int:
        return bind_point(self, rt)

    def __str__(self) -> str:
        return format_point(self)


NOW = OngoingPoint(NEG_INF, POS_INF)


def fixed(t: int) -> OngoingPoint:
    return OngoingPoint(t, t)


def growing(a: int) -> OngoingPoint:
    """``from(a)``: ``max(a, now)``."""
    return OngoingPoint(a, POS_INF)


def limited(b: int) -> OngoingPoint:
    """``until(b)``: ``min(b, now)``."""
    return OngoingPoint(NEG_INF, b)


def as_point(value) -> OngoingPoint:
    if isinstance(value, OngoingPoint):
        return value
    return fixed(value)


def bind_point(p: OngoingPoint, rt: int) -> int:
    a, b = p.a, p.b
    if rt <= a:
        return a
    if rt < b:
        return rt
    return b


def ongoing_min(p: OngoingPoint, q: OngoingPoint) -> OngoingPoint:
    return OngoingPoint(min(p.a, q.a), min(p.b, q.b))


def ongoing_max(p: OngoingPoint, q: OngoingPoint) -> OngoingPoint:
    return OngoingPoint(max(p.a, q.a), max(p.b, q.b))


def decision_case(a: int, b: int, c: int, d: int,
                  lt: Callable[[int, int], bool] = operator.lt) -> int:
    """Which of the five less-than cases ``<a|b> < <c|d>`` falls into.

    Walks the decision tree; at most three calls to ``lt``.
    """
    if lt(b, d):
        if lt(b, c):
            return 1
        return 4 if lt(a, c) else 3
    return 2 if lt(a, c) else 5


def case_result(case: int, b: int, c: int) -> IntervalSet:
    if case == 1:
        return ALWAYS
    if case == 2:
        return half_line_before(c)
    if case == 3:
        return half_line_from(successor(b))
    if case == 4:
        return _before_or_after(c, successor(b))
    return NEVER


def _before_or_after(c: int, after: int) -> IntervalSet:
    if after < POS_INF:
        return IntervalSet._canonical(((NEG_INF, c), (after, POS_INF)))
    return half_line_before(c)


def less_than(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    """Reference times at which ``bind(p) < bind(q)``."""
    a, b, c, d = p.a, p.b, q.a, q.b
    # inlined decision tree
    if b < d:
        if b < c:
            return ALWAYS
        if a < c:
            return _before_or_after(c, b + 1)
        return half_line_from(b + 1)
    if a < c:
        return IntervalSet._canonical(((NEG_INF, c),))
    return NEVER


def less_equal(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    return negation(less_than(q, p))


def greater_than(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    return less_than(q, p)


def greater_equal(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    return negation(less_than(p, q))


def point_equal(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    if p == q:
        return ALWAYS
    return conjunction(negation(less_than(p, q)), negation(less_than(q, p)))


def point_not_equal(p: OngoingPoint, q: OngoingPoint) -> IntervalSet:
    return negation(point_equal(p, q))


def format_point(p: OngoingPoint, calendar: str | None = None) -> str:
    if p.a == p.b:
        return format_tick(p.a, calendar)
    if p.is_now:
        return "now"
    if p.b == POS_INF:
        return f"from({format_tick(p.a, calendar)})"
    if p.a == NEG_INF:
        return f"until({format_tick(p.b, calendar)})"
    return f"point({format_tick(p.a, calendar)},{format_tick(p.b, calendar)})"
