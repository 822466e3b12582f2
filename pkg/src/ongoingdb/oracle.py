"""Reference semantics: bind first, then evaluate plain relational algebra.

``fixed_eval`` is a textbook set-semantics evaluator over instantiated
relations.  ``differential_check`` compares it against the ongoing engine at
every reference time of a breakpoint set: between two consecutive stored
endpoints every bound value is constant or moves in lockstep with rt, so
sampling each endpoint and its neighbours covers every distinct behaviour.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Mapping

from .boolean import IntervalSet
from .interval import FIXED_PREDICATES, OngoingInterval
from .plan import (
    And,
    AttrRef,
    BoolConst,
    Call,
    Compare,
    Difference,
    IntervalExpr,
    Join,
    Literal,
    Not,
    Or,
    Product,
    Project,
    Scan,
    Select,
    Temporal,
    Union_,
    comparison_domain,
    literals,
    output_schema,
    project_schema,
)
from .relation import FixedRelation, OngoingRelation, Schema, ValueType, bind_relation, bind_value
from .ticks import is_finite
from .timepoint import OngoingPoint

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    "!=": operator.ne,
    ">": operator.gt,
    ">=": operator.ge,
}


# -- breakpoints --------------------------------------------------------------

def _endpoints(value) -> Iterable[int]:
    if isinstance(value, OngoingPoint):
        yield value.a
        yield value.b
    elif isinstance(value, OngoingInterval):
        yield from _endpoints(value.start)
        yield from _endpoints(value.end)
    elif isinstance(value, IntervalSet):
        for s, e in value:
            yield s
            yield e
    elif isinstance(value, int) and not isinstance(value, bool):
        yield value


def breakpoints(inputs) -> list[int]:
    """Sorted finite reference times sufficient to decide a for-all-rt claim.

    ``inputs`` may mix ongoing relations, plans (their literals count),
    ongoing values, interval sets and plain ticks.
    """
    ticks = set()

    def collect(item):
        if isinstance(item, OngoingRelation):
            temporal = [i for i, a in enumerate(item.schema) if a.type is not ValueType.TEXT
                        and a.type is not ValueType.INT]
            for t in item.tuples:
                ticks.update(_endpoints(t.rt))
                for i in temporal:
                    ticks.update(_endpoints(t.values[i]))
        elif isinstance(item, (OngoingPoint, OngoingInterval, IntervalSet, int)):
            ticks.update(_endpoints(item))
        elif isinstance(item, (list, tuple, set, frozenset)):
            for x in item:
                collect(x)
        elif isinstance(item, Mapping):
            for x in item.values():
                collect(x)
        elif hasattr(item, "__dataclass_fields__"):
            for lit in literals(item):
                ticks.update(_endpoints(lit.value))

    collect(inputs)
    finite = {t for t in ticks if is_finite(t)}
    if not finite:
        return [0, 1]
    out = set()
    for t in finite:
        out.update((t - 1, t, t + 1))
    out.add(min(finite) - 2)
    out.add(max(finite) + 2)
    return sorted(t for t in out if is_finite(t))


# -- fixed evaluation ---------------------------------------------------------

def _expr(expr, schema: Schema, rt: int):
    if isinstance(expr, AttrRef):
        idx = schema.resolve(expr.name, expr.qualifier)
        return lambda v: v[idx]
    if isinstance(expr, Literal):
        value = bind_value(expr.value, rt)
        return lambda v: value
    if isinstance(expr, IntervalExpr):
        s, e = _expr(expr.start, schema, rt), _expr(expr.end, schema, rt)
        return lambda v: (s(v), e(v))
    if isinstance(expr, Call):
        f, g = (_expr(a, schema, rt) for a in expr.args)
        if expr.func == "intersect":
            return lambda v: (max(f(v)[0], g(v)[0]), min(f(v)[1], g(v)[1]))
        fn = min if expr.func == "min" else max
        return lambda v: fn(f(v), g(v))
    raise TypeError(f"not an expression: {expr!r}")


def _pred(pred, schema: Schema, rt: int):
    if isinstance(pred, BoolConst):
        return lambda v: pred.value
    if isinstance(pred, Compare):
        f, g = _expr(pred.left, schema, rt), _expr(pred.right, schema, rt)
        op = _OPS[pred.op]
        comparison_domain(pred, schema)
        return lambda v: op(f(v), g(v))
    if isinstance(pred, Temporal):
        f, g = _expr(pred.left, schema, rt), _expr(pred.right, schema, rt)
        truth = FIXED_PREDICATES[pred.name]
        return lambda v: truth(*f(v), *g(v))
    if isinstance(pred, And):
        parts = [_pred(p, schema, rt) for p in pred.items]
        return lambda v: all(p(v) for p in parts)
    if isinstance(pred, Or):
        parts = [_pred(p, schema, rt) for p in pred.items]
        return lambda v: any(p(v) for p in parts)
    if isinstance(pred, Not):
        inner = _pred(pred.item, schema, rt)
        return lambda v: not inner(v)
    raise TypeError(f"not a predicate: {pred!r}")


def fixed_eval(plan, relations: Mapping[str, FixedRelation], rt: int = 0) -> FixedRelation:
    """Evaluate ``plan`` over instantiated relations with set semantics.

    ``rt`` instantiates ongoing literals inside the plan (such as ``now``).
    """
    if isinstance(plan, Scan):
        rel = relations[plan.name]
        return FixedRelation(rel.schema.requalify(plan.alias or plan.name), rel.rows)
    if isinstance(plan, Select):
        child = fixed_eval(plan.child, relations, rt)
        keep = _pred(plan.pred, child.schema, rt)
        return FixedRelation(child.schema, frozenset(r for r in child.rows if keep(r)))
    if isinstance(plan, Project):
        child = fixed_eval(plan.child, relations, rt)
        fns = [_expr(i.expr, child.schema, rt) for i in plan.items]
        schema = project_schema(plan.items, child.schema)
        return FixedRelation(schema, frozenset(tuple(f(r) for f in fns) for r in child.rows))
    if isinstance(plan, (Product, Join)):
        left = fixed_eval(plan.left, relations, rt)
        right = fixed_eval(plan.right, relations, rt)
        schema = left.schema.concat(right.schema)
        rows = frozenset(r + s for r in left.rows for s in right.rows)
        if isinstance(plan, Join):
            keep = _pred(plan.pred, schema, rt)
            rows = frozenset(x for x in rows if keep(x))
        return FixedRelation(schema, rows)
    if isinstance(plan, Union_):
        left = fixed_eval(plan.left, relations, rt)
        right = fixed_eval(plan.right, relations, rt)
        return FixedRelation(left.schema, left.rows | right.rows)
    if isinstance(plan, Difference):
        left = fixed_eval(plan.left, relations, rt)
        right = fixed_eval(plan.right, relations, rt)
        return FixedRelation(left.schema, left.rows - right.rows)
    raise TypeError(f"not a plan node: {plan!r}")


# -- differential check -------------------------------------------------------

@dataclass
class CheckReport:
    """Outcome of a differential check; ``side`` names where the stray tuple was found."""

    ok: bool
    checked: int
    rt: int | None = None
    side: str | None = None
    tuple: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"PASS ({self.checked} reference times)"
        return f"FAIL rt={self.rt} side={self.side} tuple={self.tuple!r}"


def differential_check(plan, catalog: Mapping[str, OngoingRelation], evaluate=None,
                       rts: Iterable[int] | None = None) -> CheckReport:
    """Compare the ongoing result bound at rt with bind-then-evaluate at every breakpoint.

    ``side`` is ``"ongoing"`` for a tuple only the ongoing engine produced and
    ``"fixed"`` for one only the reference evaluator produced.
    """
    if evaluate is None:
        from .algebra import evaluate
    if isinstance(plan, str):
        from .query import parse
        plan = parse(plan)
    output_schema(plan, catalog)
    result = evaluate(plan, catalog)
    points = sorted(set(rts)) if rts is not None else breakpoints([catalog, plan])
    for rt in points:
        got = bind_relation(result, rt).rows
        bound = {name: bind_relation(rel, rt) for name, rel in catalog.items()}
        want = fixed_eval(plan, bound, rt).rows
        if got != want:
            extra = sorted(got - want, key=repr)
            if extra:
                return CheckReport(False, len(points), rt, "ongoing", extra[0])
            return CheckReport(False, len(points), rt, "fixed", sorted(want - got, key=repr)[0])
    return CheckReport(True, len(points))
