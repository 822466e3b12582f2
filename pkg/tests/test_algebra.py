import random

import pytest
from hypothesis import given, settings, strategies as st

from ongoingdb.algebra import (
    difference, eval_predicate, evaluate, join, plan_optimize, product, project, select, union,
)
from ongoingdb.boolean import ALWAYS, NEVER, IntervalSet, half_line_before
from ongoingdb.datasets import BEFORE_JOIN, BUGS, V_QUERY, b1_lead_window, running_example
from ongoingdb.errors import QueryError
from ongoingdb.interval import bind_interval, interval
from ongoingdb.oracle import differential_check
from ongoingdb.plan import Join, Product, Scan, Select
from ongoingdb.query import parse, parse_predicate
from ongoingdb.relation import OngoingRelation, OngoingTuple, Schema
from ongoingdb.ticks import NEG_INF, POS_INF, md
from ongoingdb.timepoint import NOW

from helpers import (
    OPERATORS, attrs_of, brute_set, rand_instance, rand_predicate, rand_relation, rand_schema,
)

B1 = (500, "Spam filter", interval(md(1, 25), NOW))


@pytest.fixture
def cat():
    return running_example()


def test_eval_predicate_examples():
    got = eval_predicate("VT overlaps [2019-01-20, 2019-08-18)", BUGS, B1)
    assert got == IntervalSet([(md(1, 26), POS_INF)])
    assert eval_predicate("C = 'Spam filter'", BUGS, B1) == ALWAYS
    assert eval_predicate("C = 'Calendar'", BUGS, B1) == NEVER


def test_select_worked_example():
    x = OngoingRelation(BUGS, [OngoingTuple(B1, half_line_before(md(8, 16)))])
    y = select(x, "VT overlaps [2019-01-20, 2019-08-18)")
    assert [t.rt for t in y] == [IntervalSet([(md(1, 26), md(8, 16))])]


def test_select_trivial(cat):
    bugs = cat["B"]
    assert select(bugs, "true").tuples == bugs.tuples
    assert len(select(OngoingRelation(BUGS, []), "VT overlaps [1, 5)")) == 0


def test_project_intersection(cat):
    v = evaluate(V_QUERY, cat)
    v1 = [t for t in v if t.values[0] == 500]
    assert len(v1) == 1
    assert v1[0].values[4] == b1_lead_window()
    assert v1[0].rt == IntervalSet([(md(1, 26), md(8, 16))])


def test_project_identity_and_dedup(cat):
    bugs = cat["B"]
    assert project(bugs, ["BID", "C", "VT"]).tuples == bugs.tuples
    s = Schema.of(("A", "int"), ("B", "int"))
    rel = OngoingRelation.from_rows(s, [(1, 2), (1, 3)])
    out = project(rel, ["A"])
    assert len(out) == 1 and out.tuples[0].values == (1,)


def test_join_before_golden(cat):
    r = evaluate(BEFORE_JOIN, cat)
    rt = {t.values[0]: t.rt for t in r if t.values[3] == 201}
    assert rt[500] == IntervalSet([(md(1, 26), md(8, 16))])


def test_product_rt(cat):
    out = product(cat["B"], OngoingRelation(
        Schema.of(("Z", "int")), [OngoingTuple((1,), IntervalSet([(0, 9)]))]))
    assert len(out) == 3 and all(t.rt == IntervalSet([(0, 9)]) for t in out)
    trivial = product(cat["P"], OngoingRelation.from_rows(Schema.of(("Z", "int")), [(1,)]))
    assert all(t.rt == ALWAYS for t in trivial)


def test_join_fixed_false_is_empty(cat):
    b = OngoingRelation(cat["B"].schema.requalify("B"), cat["B"].tuples)
    p = OngoingRelation(cat["P"].schema.requalify("P"), cat["P"].tuples)
    assert len(join(b, p, "false")) == 0
    assert len(join(b, p, "B.BID = 0")) == 0


def test_union(cat):
    bugs = cat["B"]
    empty = OngoingRelation(BUGS, [])
    assert union(bugs, empty).tuples == bugs.tuples
    assert union(bugs, bugs).tuples == bugs.tuples
    other = OngoingRelation.from_rows(BUGS, [(900, "Calendar", interval(3, 4))])
    assert union(bugs, other).tuples == bugs.tuples + other.tuples
    with pytest.raises(QueryError):
        union(bugs, cat["L"])


def test_difference_trivial(cat):
    bugs = cat["B"]
    assert len(difference(bugs, bugs)) == 0
    assert difference(bugs, OngoingRelation(BUGS, [])).tuples == bugs.tuples


def test_difference_partial():
    s = Schema.of(("K", "int"), ("VT", "ointerval"))
    r = OngoingRelation.from_rows(s, [(7, interval(1, NOW))])
    t = OngoingRelation.from_rows(s, [(7, interval(1, 5))])
    out = difference(r, t)
    want = brute_set(lambda rt: bind_interval(interval(1, NOW), rt) != (1, 5), range(0, 8))
    assert [x.rt for x in out] == [want]
    assert want == IntervalSet([(NEG_INF, 5), (6, POS_INF)])


def test_plan_optimize_mixed(cat):
    plan = parse("select C = 'Spam filter' and VT overlaps [2019-01-20, 2019-08-18) (B)")
    opt = plan_optimize(plan, cat)
    assert isinstance(opt, Select) and isinstance(opt.child, Select)
    assert opt.child.pred == parse_predicate("C = 'Spam filter'")
    assert evaluate(plan, cat, optimize=False).tuples == evaluate(plan, cat).tuples


def test_plan_optimize_unchanged_for_ongoing(cat):
    plan = parse("select VT overlaps [2019-01-20, 2019-08-18) (B)")
    assert plan_optimize(plan, cat) == plan


def test_plan_optimize_pushes_join_conjuncts(cat):
    plan = parse("B join B.C = 'Spam filter' and P.PID = 201 and B.VT before P.VT P")
    opt = plan_optimize(plan, cat)
    assert isinstance(opt, Join)
    assert isinstance(opt.left, Select) and isinstance(opt.right, Select)
    fixed_only = plan_optimize(parse("B join B.BID = 500 P"), cat)
    assert isinstance(fixed_only, Product)
    for q in (plan, parse("B join B.BID = 500 P")):
        assert differential_check(q, cat).ok


def test_type_errors(cat):
    with pytest.raises(QueryError):
        evaluate("select BID < VT (B)", cat)
    with pytest.raises(QueryError):
        evaluate("select VT < VT (B)", cat)
    with pytest.raises(QueryError):
        evaluate("B product B", cat)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cascade_and_join_equivalences(seed):
    rng = random.Random(seed)
    r = rand_relation(rng, rand_schema(rng))
    s = rand_relation(rng, rand_schema(rng))
    cat = {"R": r, "S": s}
    ra = attrs_of(r.schema, "R")
    p1, p2 = rand_predicate(rng, ra, 1), rand_predicate(rng, ra, 1)
    from ongoingdb.plan import And
    combined = evaluate(Select(And((p1, p2)), Scan("R")), cat, optimize=False)
    cascade = evaluate(Select(p1, Select(p2, Scan("R"))), cat, optimize=False)
    assert combined.tuples == cascade.tuples
    theta = rand_predicate(rng, ra + attrs_of(s.schema, "S"), 1)
    joined = evaluate(Join(Scan("R"), theta, Scan("S")), cat, optimize=False)
    selected = evaluate(Select(theta, Product(Scan("R"), Scan("S"))), cat, optimize=False)
    assert joined.tuples == selected.tuples


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(OPERATORS))
def test_no_empty_rt_and_optimizer_sound(seed, op):
    plan, cat = rand_instance(random.Random(seed), op)
    out = evaluate(plan, cat)
    assert all(t.rt and t.rt.is_canonical() for t in out)
    assert out.tuples == evaluate(plan, cat, optimize=False).tuples
