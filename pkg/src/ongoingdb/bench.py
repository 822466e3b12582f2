"""Timing harness: one ongoing evaluation versus bind-then-evaluate.

An ongoing result stays valid as time passes, whereas a bound result has to
be recomputed for every new reference time.  ``break_even_n`` is the number of
re-evaluations after which the ongoing evaluation has paid for itself.
"""
from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import evaluate
from .oracle import fixed_eval
from .plan import output_schema
from .relation import OngoingRelation, bind_relation

MODES = ("ongoing", "bind", "view")
COLUMNS = ("mode", "wall_time_median", "result_rows", "break_even_n", "rt")


@dataclass
class BenchRow:
    mode: str
    wall_time_median: float
    result_rows: int
    break_even_n: int | None = None
    rt: int | None = None


def time_median(fn: Callable[[], object], repetitions: int) -> tuple[float, object]:
    """Median wall time over ``repetitions`` runs after one discarded warm-up."""
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    result = fn()
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def bind_evaluate(plan, catalog: Mapping[str, OngoingRelation], rt: int):
    """The baseline: instantiate every input at rt, then evaluate fixed algebra."""
    bound = {name: bind_relation(rel, rt) for name, rel in catalog.items()}
    return fixed_eval(plan, bound, rt)


def run_bench(plan, catalog: Mapping[str, OngoingRelation], rts: Sequence[int],
              modes: Iterable[str] = ("ongoing", "bind"), repetitions: int = 5) -> list[BenchRow]:
    modes = tuple(modes)
    unknown = set(modes) - set(MODES)
    if unknown:
        raise ValueError(f"unknown bench modes: {sorted(unknown)}")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    if isinstance(plan, str):
        from .query import parse
        plan = parse(plan)
    output_schema(plan, catalog)
    needed = {name: catalog[name] for name in _scanned(plan)}

    rows: list[BenchRow] = []
    t_ongoing, result = time_median(lambda: evaluate(plan, needed), repetitions)
    if "ongoing" in modes:
        rows.append(BenchRow("ongoing", t_ongoing, len(result)))
    for rt in rts:
        if "bind" in modes:
            t_bind, fixed = time_median(lambda: bind_evaluate(plan, needed, rt), repetitions)
            n = math.ceil(t_ongoing / t_bind) if t_bind > 0 else None
            rows.append(BenchRow("bind", t_bind, len(fixed), n, rt))
        if "view" in modes:
            t_view, bound = time_median(lambda: bind_relation(result, rt), repetitions)
            rows.append(BenchRow("view", t_view, len(bound), None, rt))
    return rows


def _scanned(plan) -> set[str]:
    from .plan import Scan
    names = set()

    def walk(node):
        if isinstance(node, Scan):
            names.add(node.name)
        for attr in ("child", "left", "right"):
            if hasattr(node, attr):
                walk(getattr(node, attr))

    walk(plan)
    return names


def format_report(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow([r.mode, f"{r.wall_time_median:.6f}", r.result_rows,
                         "" if r.break_even_n is None else r.break_even_n,
                         "" if r.rt is None else r.rt])
    return buf.getvalue()
