"""Relational algebra over ongoing relations.

Every operator keeps ongoing values uninstantiated and restricts each result
tuple's RT to the reference times at which it belongs to the instantiated
result.  Tuples whose RT becomes empty are dropped.

Predicates are compiled once per operator.  Conjuncts that touch only fixed
values run first as plain boolean filters; the remaining conjuncts produce
ongoing booleans that are conjoined with RT.
"""
from __future__ import annotations

import operator
from typing import Callable, Mapping

from . import timepoint as tp
from .boolean import ALWAYS, NEVER, IntervalSet, conjunction, disjunction, lift, negation
from .errors import QueryError
from .interval import ONGOING_PREDICATES, OngoingInterval, endpoints_equal, intersect
from .plan import (
    NUM,
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
    Plan,
    Predicate,
    Product,
    Project,
    ProjectItem,
    Scan,
    Select,
    Temporal,
    Union_,
    check_predicate,
    comparison_domain,
    conjoin,
    expr_type,
    is_ongoing,
    output_schema,
    project_schema,
    split_predicate,
)
from .relation import OngoingRelation, OngoingTuple, Schema, ValueType

FIXED_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    "!=": operator.ne,
    ">": operator.gt,
    ">=": operator.ge,
}

ONGOING_OPS = {
    "<": tp.less_than,
    "<=": tp.less_equal,
    "=": tp.point_equal,
    "!=": tp.point_not_equal,
    ">": tp.greater_than,
    ">=": tp.greater_equal,
}

Values = tuple
OngoingFn = Callable[[Values], IntervalSet]


def _as_predicate(pred) -> Predicate:
    if isinstance(pred, str):
        from .query import parse_predicate
        return parse_predicate(pred)
    return pred


# -- expression compilation -------------------------------------------------

def compile_expr(expr, schema: Schema) -> Callable[[Values], object]:
    """Closure computing an expression's (ongoing) value from a tuple's values."""
    if isinstance(expr, AttrRef):
        idx = schema.resolve(expr.name, expr.qualifier)
        return operator.itemgetter(idx)
    if isinstance(expr, Literal):
        value = expr.value
        return lambda v: value
    if isinstance(expr, IntervalExpr):
        start, end = compile_expr(expr.start, schema), compile_expr(expr.end, schema)
        return lambda v: OngoingInterval(tp.as_point(start(v)), tp.as_point(end(v)))
    if isinstance(expr, Call):
        f, g = (compile_expr(a, schema) for a in expr.args)
        if expr.func == "intersect":
            return lambda v: intersect(f(v), g(v))
        ongoing_fn = tp.ongoing_min if expr.func == "min" else tp.ongoing_max
        if expr_type(expr, schema) is ValueType.TICK:
            fixed_fn = min if expr.func == "min" else max
            return lambda v: fixed_fn(f(v), g(v))
        return lambda v: ongoing_fn(tp.as_point(f(v)), tp.as_point(g(v)))
    raise QueryError(f"not an expression: {expr!r}")


def compile_fixed(pred: Predicate, schema: Schema) -> Callable[[Values], bool]:
    """Boolean closure for a predicate over fixed values only."""
    if isinstance(pred, BoolConst):
        value = pred.value
        return lambda v: value
    if isinstance(pred, Compare):
        f, g = compile_expr(pred.left, schema), compile_expr(pred.right, schema)
        op = FIXED_OPS[pred.op]
        return lambda v: op(f(v), g(v))
    if isinstance(pred, And):
        parts = [compile_fixed(p, schema) for p in pred.items]
        return lambda v: all(p(v) for p in parts)
    if isinstance(pred, Or):
        parts = [compile_fixed(p, schema) for p in pred.items]
        return lambda v: any(p(v) for p in parts)
    if isinstance(pred, Not):
        inner = compile_fixed(pred.item, schema)
        return lambda v: not inner(v)
    raise QueryError(f"{pred!r} is not a fixed predicate")


def compile_ongoing(pred: Predicate, schema: Schema) -> OngoingFn:
    """Closure mapping a tuple's values to the ongoing boolean of ``pred``."""
    if isinstance(pred, BoolConst):
        result = lift(pred.value)
        return lambda v: result
    if isinstance(pred, Compare):
        f, g = compile_expr(pred.left, schema), compile_expr(pred.right, schema)
        domain = comparison_domain(pred, schema)
        if domain == "interval":
            if pred.op == "=":
                return lambda v: endpoints_equal(f(v), g(v))
            return lambda v: negation(endpoints_equal(f(v), g(v)))
        if domain == "point" and is_ongoing(pred, schema):
            op = ONGOING_OPS[pred.op]
            return lambda v: op(tp.as_point(f(v)), tp.as_point(g(v)))
        fixed_op = FIXED_OPS[pred.op]
        return lambda v: ALWAYS if fixed_op(f(v), g(v)) else NEVER
    if isinstance(pred, Temporal):
        f, g = compile_expr(pred.left, schema), compile_expr(pred.right, schema)
        fn = ONGOING_PREDICATES[pred.name]
        return lambda v: fn(f(v), g(v))
    if isinstance(pred, And):
        parts = [compile_ongoing(p, schema) for p in pred.items]

        def conj(v):
            acc = ALWAYS
            for p in parts:
                acc = conjunction(acc, p(v))
                if not acc:
                    return NEVER
            return acc
        return conj
    if isinstance(pred, Or):
        parts = [compile_ongoing(p, schema) for p in pred.items]

        def disj(v):
            acc = NEVER
            for p in parts:
                acc = disjunction(acc, p(v))
            return acc
        return disj
    if isinstance(pred, Not):
        inner = compile_ongoing(pred.item, schema)
        return lambda v: negation(inner(v))
    raise QueryError(f"not a predicate: {pred!r}")


class CompiledPredicate:
    """A predicate split into a fixed pre-filter and an ongoing RT restriction."""

    def __init__(self, pred: Predicate, schema: Schema):
        check_predicate(pred, schema)
        fixed, ongoing = split_predicate(pred, schema)
        self.fixed = compile_fixed(conjoin(fixed), schema) if fixed else None
        self.ongoing = compile_ongoing(conjoin(ongoing), schema) if ongoing else None

    def restrict(self, values: Values, rt: IntervalSet) -> IntervalSet:
        if self.fixed is not None and not self.fixed(values):
            return NEVER
        if self.ongoing is None:
            return rt
        return conjunction(rt, self.ongoing(values))

    def __call__(self, values: Values) -> IntervalSet:
        return self.restrict(values, ALWAYS)


def eval_predicate(pred, relation_or_schema, values: Values) -> IntervalSet:
    """Ongoing boolean of ``pred`` on one tuple's values."""
    schema = getattr(relation_or_schema, "schema", relation_or_schema)
    return CompiledPredicate(_as_predicate(pred), schema)(tuple(values))


# -- operators ----------------------------------------------------------------

def select(relation: OngoingRelation, pred) -> OngoingRelation:
    compiled = CompiledPredicate(_as_predicate(pred), relation.schema)
    out = []
    for t in relation.tuples:
        rt = compiled.restrict(t.values, t.rt)
        if rt:
            out.append(t if rt is t.rt else OngoingTuple(t.values, rt))
    return OngoingRelation(relation.schema, out)


def _items(items) -> tuple:
    result = []
    for item in items:
        if isinstance(item, ProjectItem):
            result.append(item)
        elif isinstance(item, str):
            qualifier, _, name = item.rpartition(".")
            result.append(ProjectItem(AttrRef(name, qualifier or None)))
        else:
            result.append(ProjectItem(item))
    return tuple(result)


def project(relation: OngoingRelation, items) -> OngoingRelation:
    items = _items(items)
    try:
        schema = project_schema(items, relation.schema)
    except (KeyError, ValueError) as exc:
        raise QueryError(str(exc)) from None
    fns = [compile_expr(i.expr, relation.schema) for i in items]
    out = {}
    for t in relation.tuples:
        nt = OngoingTuple(tuple(f(t.values) for f in fns), t.rt)
        out.setdefault(nt, None)
    return OngoingRelation(schema, list(out))


def product(left: OngoingRelation, right: OngoingRelation) -> OngoingRelation:
    schema = left.schema.concat(right.schema)
    out = []
    for r in left.tuples:
        for s in right.tuples:
            rt = conjunction(r.rt, s.rt)
            if rt:
                out.append(OngoingTuple(r.values + s.values, rt))
    return OngoingRelation(schema, out)


def join(left: OngoingRelation, right: OngoingRelation, pred) -> OngoingRelation:
    """Nested-loop theta join, equivalent to a selection over the product."""
    schema = left.schema.concat(right.schema)
    compiled = CompiledPredicate(_as_predicate(pred), schema)
    fixed, ongoing = compiled.fixed, compiled.ongoing
    out = []
    for r in left.tuples:
        rv, rrt = r.values, r.rt
        for s in right.tuples:
            values = rv + s.values
            if fixed is not None and not fixed(values):
                continue
            rt = conjunction(rrt, s.rt)
            if rt and ongoing is not None:
                rt = conjunction(rt, ongoing(values))
            if rt:
                out.append(OngoingTuple(values, rt))
    return OngoingRelation(schema, out)


def _require_compatible(left: Schema, right: Schema, op: str) -> None:
    if not left.compatible(right):
        raise QueryError(f"{op} needs identical schemas: {left.names} vs {right.names}")


def union(left: OngoingRelation, right: OngoingRelation) -> OngoingRelation:
    _require_compatible(left.schema, right.schema, "union")
    return OngoingRelation(left.schema, list(dict.fromkeys(left.tuples + right.tuples)))


def _equality_fn(schema: Schema) -> Callable[[Values, Values], IntervalSet]:
    fixed_idx = [i for i, a in enumerate(schema) if not a.type.is_ongoing]
    point_idx = [i for i, a in enumerate(schema) if a.type is ValueType.OPOINT]
    ivl_idx = [i for i, a in enumerate(schema) if a.type is ValueType.OINTERVAL]

    def equal(rv: Values, sv: Values) -> IntervalSet:
        for i in fixed_idx:
            if rv[i] != sv[i]:
                return NEVER
        acc = ALWAYS
        for i in point_idx:
            acc = conjunction(acc, tp.point_equal(rv[i], sv[i]))
            if not acc:
                return NEVER
        for i in ivl_idx:
            acc = conjunction(acc, endpoints_equal(rv[i], sv[i]))
            if not acc:
                return NEVER
        return acc

    return equal


def difference(left: OngoingRelation, right: OngoingRelation) -> OngoingRelation:
    """Keep each left tuple at the reference times where no right tuple equals it."""
    _require_compatible(left.schema, right.schema, "minus")
    equal = _equality_fn(left.schema)
    out = []
    for r in left.tuples:
        covered = NEVER
        for s in right.tuples:
            eq = equal(r.values, s.values)
            if eq:
                covered = disjunction(covered, conjunction(s.rt, eq))
        rt = r.rt if not covered else conjunction(r.rt, negation(covered))
        if rt:
            out.append(r if rt is r.rt else OngoingTuple(r.values, rt))
    return OngoingRelation(left.schema, out)


# -- plans --------------------------------------------------------------------

def plan_optimize(plan: Plan, catalog: Mapping) -> Plan:
    """Split selections into fixed-then-ongoing stages and push fixed join conjuncts down.

    The rewrite relies only on equivalences that hold for ongoing relations,
    e.g. a selection on a conjunction equals a cascade of selections.
    """
    if isinstance(plan, Scan):
        return plan
    if isinstance(plan, Select):
        child = plan_optimize(plan.child, catalog)
        schema = output_schema(child, catalog)
        fixed, ongoing = split_predicate(plan.pred, schema)
        if fixed and ongoing:
            return Select(conjoin(ongoing), Select(conjoin(fixed), child))
        return Select(plan.pred, child)
    if isinstance(plan, Project):
        return Project(plan.items, plan_optimize(plan.child, catalog))
    if isinstance(plan, Join):
        left = plan_optimize(plan.left, catalog)
        right = plan_optimize(plan.right, catalog)
        ls, rs = output_schema(left, catalog), output_schema(right, catalog)
        schema = ls.concat(rs)
        fixed, ongoing = split_predicate(plan.pred, schema)
        to_left, to_right, keep = [], [], []
        for p in fixed:
            if _resolves(p, ls):
                to_left.append(p)
            elif _resolves(p, rs):
                to_right.append(p)
            else:
                keep.append(p)
        if to_left:
            left = Select(conjoin(to_left), left)
        if to_right:
            right = Select(conjoin(to_right), right)
        rest = keep + ongoing
        if not rest:
            return Product(left, right)
        return Join(left, conjoin(rest), right)
    if isinstance(plan, Product):
        return Product(plan_optimize(plan.left, catalog), plan_optimize(plan.right, catalog))
    if isinstance(plan, Union_):
        return Union_(plan_optimize(plan.left, catalog), plan_optimize(plan.right, catalog))
    if isinstance(plan, Difference):
        return Difference(plan_optimize(plan.left, catalog), plan_optimize(plan.right, catalog))
    raise QueryError(f"not a plan node: {plan!r}")


def _resolves(pred: Predicate, schema: Schema) -> bool:
    try:
        check_predicate(pred, schema)
    except QueryError:
        return False
    return True


def evaluate(plan: Plan, catalog: Mapping[str, OngoingRelation], optimize: bool = True) -> OngoingRelation:
    """Evaluate a plan to a deduplicated ongoing relation."""
    if isinstance(plan, str):
        from .query import parse
        plan = parse(plan)
    output_schema(plan, catalog)
    if optimize:
        plan = plan_optimize(plan, catalog)
    return _eval(plan, catalog).deduplicated()


def _eval(plan, catalog) -> OngoingRelation:
    if isinstance(plan, Scan):
        rel = catalog[plan.name]
        return OngoingRelation(rel.schema.requalify(plan.alias or plan.name), rel.tuples)
    if isinstance(plan, Select):
        return select(_eval(plan.child, catalog), plan.pred)
    if isinstance(plan, Project):
        return project(_eval(plan.child, catalog), plan.items)
    if isinstance(plan, Product):
        return product(_eval(plan.left, catalog), _eval(plan.right, catalog))
    if isinstance(plan, Join):
        return join(_eval(plan.left, catalog), _eval(plan.right, catalog), plan.pred)
    if isinstance(plan, Union_):
        return union(_eval(plan.left, catalog), _eval(plan.right, catalog))
    if isinstance(plan, Difference):
        return difference(_eval(plan.left, catalog), _eval(plan.right, catalog))
    raise QueryError(f"not a plan node: {plan!r}")
