"""Brute-force reference tools and random instance builders shared by the tests."""
from __future__ import annotations

import random
from typing import Callable, Iterable

from ongoingdb.boolean import IntervalSet
from ongoingdb.interval import OngoingInterval
from ongoingdb.relation import OngoingRelation, OngoingTuple, Schema
from ongoingdb.ticks import NEG_INF, POS_INF
from ongoingdb.timepoint import OngoingPoint

SMALL = [NEG_INF, *range(0, 13), POS_INF]


def brute_set(truth: Callable[[int], bool], window: Iterable[int]) -> IntervalSet:
    """Interval set of the reference times where ``truth`` holds.

    ``truth`` is sampled at ``NEG_INF``, ``NEG_INF + 1`` and every tick of
    ``window``; each sample stands for the ticks up to the next sample and the
    last one for everything above.  The window must reach past every finite
    endpoint of the inputs.
    """
    ticks = sorted({NEG_INF, NEG_INF + 1, *window})
    spans = []
    for i, t in enumerate(ticks):
        if truth(t):
            end = ticks[i + 1] if i + 1 < len(ticks) else POS_INF
            spans.append((t, end))
    return IntervalSet(spans)


def assert_bind_equiv(result: IntervalSet, truth: Callable[[int], bool], rts: Iterable[int]):
    for rt in rts:
        assert result.bind(rt) == truth(rt), f"mismatch at rt={rt}: {result}"


def rand_point(rng: random.Random, values=SMALL) -> OngoingPoint:
    a, b = sorted((rng.choice(values), rng.choice(values)))
    return OngoingPoint(a, b)


def rand_interval(rng: random.Random, values=SMALL) -> OngoingInterval:
    return OngoingInterval(rand_point(rng, values), rand_point(rng, values))


def rand_set(rng: random.Random, lo: int = 0, hi: int = 12, max_spans: int = 4) -> IntervalSet:
    cuts = sorted(rng.sample(range(lo, hi + 1), k=min(2 * rng.randint(0, max_spans), hi - lo + 1)))
    spans = [(cuts[i], cuts[i + 1]) for i in range(0, len(cuts) - 1, 2)]
    if spans and rng.random() < 0.25:
        spans[0] = (NEG_INF, spans[0][1])
    if spans and rng.random() < 0.25:
        spans[-1] = (spans[-1][0], POS_INF)
    return IntervalSet(spans)


def rand_rt(rng: random.Random) -> IntervalSet:
    from ongoingdb.boolean import ALWAYS
    if rng.random() < 0.6:
        return ALWAYS
    return rand_set(rng, max_spans=2) or ALWAYS


ONGOING_TYPES = ("opoint", "ointerval")


def rand_schema(rng: random.Random) -> Schema:
    n = rng.randint(1, 2)
    kinds = [rng.choice(ONGOING_TYPES) for _ in range(n)]
    names = ["X", "Y"]
    return Schema.of(("K", "int"), *[(names[i], k) for i, k in enumerate(kinds)])


def rand_value(rng: random.Random, vtype: str):
    if vtype == "opoint":
        return rand_point(rng)
    return rand_interval(rng)


def rand_relation(rng: random.Random, schema: Schema, n: int | None = None) -> OngoingRelation:
    n = rng.randint(0, 8) if n is None else n
    tuples = []
    for _ in range(n):
        values = (rng.randint(0, 2),) + tuple(rand_value(rng, a.type.value) for a in list(schema)[1:])
        tuples.append(OngoingTuple(values, rand_rt(rng)))
    return OngoingRelation(schema, tuples)


def overlapping_relation(rng: random.Random, base: OngoingRelation) -> OngoingRelation:
    """A relation sharing some tuples (possibly with other RTs) with ``base``."""
    shared = [OngoingTuple(t.values, rand_rt(rng)) for t in base.tuples if rng.random() < 0.5]
    fresh = rand_relation(rng, base.schema, rng.randint(0, 4)).tuples
    # near-duplicates: same fixed part, one ongoing value swapped
    near = []
    for t in base.tuples:
        if rng.random() < 0.3:
            i = rng.randrange(1, len(t.values))
            vals = list(t.values)
            vals[i] = rand_value(rng, base.schema.attributes[i].type.value)
            near.append(OngoingTuple(tuple(vals), rand_rt(rng)))
    tuples = shared + fresh + near
    rng.shuffle(tuples)
    return OngoingRelation(base.schema, tuples[:8])


# -- random predicates and plans ------------------------------------------------

from ongoingdb.plan import (  # noqa: E402
    NUM, And, AttrRef, BoolConst, Call, Compare, IntervalExpr, Literal, Not, Or,
    ProjectItem, TEMPORAL_PREDICATES,
)
from ongoingdb.relation import ValueType  # noqa: E402

OPS = ("<", "<=", "=", "!=", ">", ">=")


def _point_lit(rng):
    return Literal(rand_point(rng), ValueType.OPOINT)


def _refs(attrs, vtype):
    return [AttrRef(n, q) for q, n, t in attrs if t == vtype]


def point_expr(rng, attrs):
    refs = _refs(attrs, "opoint")
    choice = rng.random()
    if refs and choice < 0.55:
        return rng.choice(refs)
    if refs and choice < 0.7:
        return Call(rng.choice(("min", "max")), (rng.choice(refs), point_expr(rng, attrs)))
    if choice < 0.85:
        return Literal(rng.randint(0, 12), NUM)
    return _point_lit(rng)


def interval_expr(rng, attrs):
    refs = _refs(attrs, "ointerval")
    choice = rng.random()
    if refs and choice < 0.6:
        return rng.choice(refs)
    if refs and choice < 0.75:
        return Call("intersect", (rng.choice(refs), interval_expr(rng, attrs)))
    return IntervalExpr(point_expr(rng, attrs), point_expr(rng, attrs))


def leaf(rng, attrs):
    kinds = ["fixed", "point", "interval_eq"]
    if _refs(attrs, "ointerval"):
        kinds += ["temporal", "temporal"]
    if _refs(attrs, "opoint"):
        kinds += ["point"]
    kind = rng.choice(kinds)
    if kind == "fixed":
        keys = _refs(attrs, "int")
        right = rng.choice(keys + [Literal(rng.randint(0, 2), NUM)])
        return Compare(rng.choice(OPS), rng.choice(keys), right)
    if kind == "point":
        return Compare(rng.choice(OPS), point_expr(rng, attrs), point_expr(rng, attrs))
    if kind == "interval_eq":
        return Compare(rng.choice(("=", "!=")), interval_expr(rng, attrs), interval_expr(rng, attrs))
    return _temporal(rng, attrs)


def _temporal(rng, attrs):
    from ongoingdb.plan import Temporal
    return Temporal(rng.choice(TEMPORAL_PREDICATES), interval_expr(rng, attrs), interval_expr(rng, attrs))


def rand_predicate(rng, attrs, depth: int = 2):
    r = rng.random()
    if depth == 0 or r < 0.45:
        return leaf(rng, attrs) if rng.random() > 0.03 else BoolConst(rng.random() < 0.5)
    if r < 0.7:
        return And(tuple(rand_predicate(rng, attrs, depth - 1) for _ in range(rng.randint(2, 3))))
    if r < 0.88:
        return Or(tuple(rand_predicate(rng, attrs, depth - 1) for _ in range(2)))
    return Not(rand_predicate(rng, attrs, depth - 1))


def attrs_of(schema, qualifier):
    return [(qualifier, a.name, a.type.value) for a in schema]


def rand_project_items(rng, attrs):
    items = []
    for q, n, t in attrs:
        if rng.random() < 0.6:
            items.append(ProjectItem(AttrRef(n, q)))
    if rng.random() < 0.5 and _refs(attrs, "ointerval"):
        items.append(ProjectItem(Call("intersect", (interval_expr(rng, attrs), interval_expr(rng, attrs))), "I"))
    if rng.random() < 0.5 and _refs(attrs, "opoint"):
        items.append(ProjectItem(Call(rng.choice(("min", "max")), (point_expr(rng, attrs), point_expr(rng, attrs))), "P"))
    if not items:
        q, n, _ = rng.choice(attrs)
        items.append(ProjectItem(AttrRef(n, q)))
    return tuple(items)


OPERATORS = ("project", "select", "product", "join", "union", "difference")


def rand_instance(rng, op: str):
    """(plan, catalog) exercising one operator over random small relations."""
    from ongoingdb.plan import Difference, Join, Product, Project, Scan, Select, Union_
    schema = rand_schema(rng)
    r = rand_relation(rng, schema)
    if op in ("union", "difference"):
        s = overlapping_relation(rng, r)
    else:
        s = rand_relation(rng, rand_schema(rng))
    catalog = {"R": r, "S": s}
    ra, sa = attrs_of(r.schema, "R"), attrs_of(s.schema, "S")
    if op == "project":
        plan = Project(rand_project_items(rng, ra), Scan("R"))
    elif op == "select":
        plan = Select(rand_predicate(rng, ra), Scan("R"))
    elif op == "product":
        plan = Product(Scan("R"), Scan("S"))
    elif op == "join":
        plan = Join(Scan("R"), rand_predicate(rng, ra + sa), Scan("S"))
    elif op == "union":
        plan = Union_(Scan("R"), Scan("S"))
    else:
        plan = Difference(Scan("R"), Scan("S"))
    return plan, catalog
