"""Discrete time ticks, the two infinity sentinels, and calendar mappings.

A tick is a plain Python ``int``.  The engine never looks at a granularity;
dates map to proleptic-Gregorian day ordinals and timestamps to microsecond
counts, both via :mod:`datetime`.
"""
from __future__ import annotations

import datetime as _dt
import re

NEG_INF = -(2**63)
POS_INF = 2**63 - 1

_EPOCH = _dt.datetime(1, 1, 1)
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_TS_RE = re.compile(r"^\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}(:\d{2}(\.\d{3}(\d{3})?)?)?$")


def successor(t: int) -> int:
    """Return ``t + 1``; ``POS_INF`` is absorbing."""
    if t >= POS_INF:
        return POS_INF
    return t + 1


def is_finite(t: int) -> bool:
    return NEG_INF < t < POS_INF


def check_tick(t: int) -> int:
    if isinstance(t, bool) or not isinstance(t, int):
        raise TypeError(f"tick must be an int, got {type(t).__name__}")
    if not NEG_INF <= t <= POS_INF:
        raise ValueError(f"tick {t} outside [NEG_INF, POS_INF]")
    return t


def date_tick(d: _dt.date) -> int:
    return d.toordinal()


def timestamp_tick(ts: _dt.datetime) -> int:
    delta = ts - _EPOCH
    return (delta.days * 86_400 + delta.seconds) * 1_000_000 + delta.microseconds


def md(month: int, day: int, year: int = 2019) -> int:
    """Day tick of ``month/day`` (2019 unless told otherwise)."""
    return _dt.date(year, month, day).toordinal()


def parse_tick(text: str) -> int:
    """Parse ``-inf``, ``+inf``/``inf``, an integer, an ISO date or an ISO timestamp."""
    s = text.strip()
    low = s.lower()
    if low in ("-inf", "-infinity"):
        return NEG_INF
    if low in ("+inf", "inf", "infinity", "+infinity"):
        return POS_INF
    if _DATE_RE.match(s):
        return date_tick(_dt.date.fromisoformat(s))
    if _TS_RE.match(s):
        return timestamp_tick(_dt.datetime.fromisoformat(s.replace(" ", "T")))
    try:
        return check_tick(int(s))
    except ValueError:
        raise ValueError(f"not a tick literal: {text!r}") from None


def format_tick(t: int, calendar: str | None = None) -> str:
    """Render a tick; ``calendar`` is ``None``, ``"date"`` or ``"timestamp"``."""
    if t == NEG_INF:
        return "-inf"
    if t == POS_INF:
        return "+inf"
    if calendar == "date":
        try:
            return _dt.date.fromordinal(t).isoformat()
        except (ValueError, OverflowError):
            return str(t)
    if calendar == "timestamp":
        try:
            return (_EPOCH + _dt.timedelta(microseconds=t)).isoformat()
        except OverflowError:
            return str(t)
    return str(t)
