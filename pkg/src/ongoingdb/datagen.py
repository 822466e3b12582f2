"""Seeded synthetic relations with a controlled share of ongoing intervals.

Each relation has schema ``ID:int, K:int, VT:ointerval``.  Fixed rows get a
closed-open interval inside the history; ongoing rows are either expanding
``[a, now)`` or shrinking ``[now, b)``.  The history can be cut into equal
segments and all ongoing anchors placed in one of them.
"""
from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

import numpy as np

from .interval import OngoingInterval
from .relation import OngoingRelation, OngoingTuple, Schema
from .ticks import date_tick
from .timepoint import NOW, fixed

SCHEMA = Schema.of(("ID", "int"), ("K", "int"), ("VT", "ointerval"))
DEFAULT_ORIGIN = date_tick(_dt.date(2010, 1, 1))


class SpecError(ValueError):
    """Invalid generator parameters."""


@dataclass(frozen=True)
class GenSpec:
    rows: int = 10_000
    pct_ongoing: float = 15.0
    shape: str = "expanding"
    span_ticks: int = 3653
    seed: int = 0
    n_segments: int = 5
    segment: int | None = None
    origin: int = DEFAULT_ORIGIN
    n_keys: int = 10

    def __post_init__(self):
        if self.rows < 0:
            raise SpecError("rows must be non-negative")
        if not 0 <= self.pct_ongoing <= 100:
            raise SpecError("pct_ongoing must be a percentage in [0, 100]")
        if self.shape not in ("expanding", "shrinking"):
            raise SpecError("shape must be 'expanding' or 'shrinking'")
        if self.span_ticks < 2:
            raise SpecError("span_ticks must be at least 2")
        if self.n_segments < 1 or self.n_segments > self.span_ticks:
            raise SpecError("n_segments must be between 1 and span_ticks")
        if self.segment is not None and not 0 <= self.segment < self.n_segments:
            raise SpecError(f"segment must be in [0, {self.n_segments})")
        if self.n_keys < 1:
            raise SpecError("n_keys must be positive")

    @property
    def n_ongoing(self) -> int:
        return round(self.rows * self.pct_ongoing / 100)

    @property
    def end(self) -> int:
        return self.origin + self.span_ticks

    def segment_bounds(self, k: int) -> tuple[int, int]:
        width = self.span_ticks // self.n_segments
        lo = self.origin + k * width
        hi = self.end if k == self.n_segments - 1 else lo + width
        return lo, hi


def generate(spec: GenSpec) -> OngoingRelation:
    rng = np.random.default_rng(spec.seed)
    n = spec.rows
    ongoing = np.zeros(n, dtype=bool)
    ongoing[rng.permutation(n)[:spec.n_ongoing]] = True
    keys = rng.integers(0, spec.n_keys, size=n)

    max_len = max(1, spec.span_ticks // 10)
    starts = rng.integers(spec.origin, spec.end - 1, size=n, endpoint=False)
    lengths = rng.integers(1, max_len, size=n, endpoint=True)
    ends = np.minimum(starts + lengths, spec.end)

    if spec.segment is None:
        lo, hi = spec.origin, spec.end
    else:
        lo, hi = spec.segment_bounds(spec.segment)
    anchors = rng.integers(lo, hi, size=n, endpoint=False)

    tuples = []
    for i in range(n):
        if ongoing[i]:
            a = fixed(int(anchors[i]))
            vt = OngoingInterval(a, NOW) if spec.shape == "expanding" else OngoingInterval(NOW, a)
        else:
            vt = OngoingInterval(fixed(int(starts[i])), fixed(int(ends[i])))
        tuples.append(OngoingTuple((i + 1, int(keys[i]), vt)))
    return OngoingRelation(SCHEMA, tuples)


def overlaps_window(spec: GenSpec, fraction: float = 0.1) -> tuple[int, int]:
    """``[lo, hi)`` covering the last ``fraction`` of the history."""
    lo = spec.end - max(1, int(round(spec.span_ticks * fraction)))
    return lo, spec.end
