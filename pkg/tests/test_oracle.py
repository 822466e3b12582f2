import random

import pytest

from ongoingdb import timepoint as tp
from ongoingdb.datasets import V_QUERY, running_example
from ongoingdb.interval import interval
from ongoingdb.oracle import breakpoints, differential_check, fixed_eval
from ongoingdb.plan import Scan
from ongoingdb.query import parse
from ongoingdb.relation import OngoingRelation, Schema, bind_relation
from ongoingdb.ticks import NEG_INF, POS_INF, md
from ongoingdb.timepoint import NOW, OngoingPoint, fixed

from helpers import OPERATORS, rand_instance, rand_interval


def test_breakpoints_examples():
    assert breakpoints([fixed(5)]) == [3, 4, 5, 6, 7]
    assert len(breakpoints([NOW])) == 2
    bp = breakpoints([interval(2, 9)])
    assert {1, 2, 3, 8, 9, 10} <= set(bp) and min(bp) < 1 and max(bp) > 10
    assert all(NEG_INF < t < POS_INF for t in breakpoints([OngoingPoint(NEG_INF, 3)]))


def test_breakpoints_include_plan_literals():
    plan = parse("select VT overlaps [20, 30) (R)")
    assert {19, 20, 21, 29, 30, 31} <= set(breakpoints([plan]))


def test_fixed_eval_overlaps_selection():
    cat = running_example()
    rt = md(8, 20)
    bound = {n: bind_relation(r, rt) for n, r in cat.items()}
    out = fixed_eval(parse("select VT overlaps [2019-07-01, 2019-07-05) (B)"), bound, rt)
    # b_1 [1/25, 8/20) and b_3 [2/1, 8/20) overlap; b_2 ends 7/10 and also overlaps
    assert {row[0] for row in out.rows} == {500, 600, 700}
    out = fixed_eval(parse("select VT overlaps [2019-07-10, 2019-07-20) (B)"), bound, rt)
    assert {row[0] for row in out.rows} == {500, 700}


def test_fixed_eval_trivial():
    s = Schema.of(("A", "int"))
    empty = {"R": bind_relation(OngoingRelation(s, []), 0)}
    assert len(fixed_eval(parse("select A = 1 (R)"), empty)) == 0
    full = {"R": bind_relation(OngoingRelation.from_rows(s, [(1,), (2,)]), 0)}
    assert fixed_eval(Scan("R"), full).rows == full["R"].rows


def test_running_example_passes():
    report = differential_check(V_QUERY, running_example())
    assert report.ok, str(report)
    assert str(report).startswith("PASS")


def test_identity_plan_passes():
    cat = running_example()
    assert differential_check(Scan("B"), cat).ok


def _swap_cases_two_and_three(p, q):
    case = tp.decision_case(p.a, p.b, q.a, q.b)
    swapped = {2: 3, 3: 2}.get(case, case)
    return tp.case_result(swapped, p.b, q.a)


def test_mutation_is_caught(monkeypatch):
    monkeypatch.setattr(tp, "less_than", _swap_cases_two_and_three)
    rng = random.Random(7)
    failures = []
    for _ in range(60):
        plan, cat = rand_instance(rng, "select")
        report = differential_check(plan, cat)
        if not report.ok:
            failures.append(report)
    assert failures
    first = failures[0]
    assert first.side in ("ongoing", "fixed") and first.rt is not None and first.tuple is not None
    assert "FAIL" in str(first)


def test_mutation_caught_on_running_example(monkeypatch):
    monkeypatch.setattr(tp, "less_than", _swap_cases_two_and_three)
    assert not differential_check(V_QUERY, running_example()).ok


@pytest.mark.parametrize("op", OPERATORS)
def test_random_instances(op):
    rng = random.Random(hash(op) & 0xFFFF)
    for _ in range(40):
        plan, cat = rand_instance(rng, op)
        report = differential_check(plan, cat)
        assert report.ok, f"{report} for {plan}"


def test_breakpoint_completeness_dense():
    """Truth never changes strictly between consecutive breakpoints."""
    from ongoingdb.interval import FIXED_PREDICATES, ONGOING_PREDICATES, bind_interval
    rng = random.Random(3)
    smallvals = [NEG_INF, *range(0, 13), POS_INF]
    for _ in range(200):
        i1, i2 = rand_interval(rng, smallvals), rand_interval(rng, smallvals)
        bps = breakpoints([i1, i2])
        name = rng.choice(sorted(ONGOING_PREDICATES))
        truth = FIXED_PREDICATES[name]
        for lo, hi in zip(bps, bps[1:]):
            dense = [lo + (hi - lo) * k / 10 for k in range(11)]
            values = {truth(*bind_interval(i1, int(t)), *bind_interval(i2, int(t)))
                      for t in dense if lo < int(t) < hi}
            assert len(values) <= 1
