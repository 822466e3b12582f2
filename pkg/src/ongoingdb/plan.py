"""Query plan trees, predicate and expression trees, and plan-time type checking.

Nodes are frozen dataclasses, so two plans compare equal exactly when they
are structurally identical.  Source positions ride along for diagnostics but
are excluded from equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import QueryError, SchemaError
from .relation import Attribute, OngoingRelation, Schema, ValueType

Pos = Union[tuple, None]

NUM = "num"
"""Type of a bare integer literal: usable as an int, a tick or a fixed point."""

COMPARISONS = ("<", "<=", "=", "!=", ">", ">=")
TEMPORAL_PREDICATES = ("before", "overlaps", "meets", "starts", "during", "finishes", "equals")
FUNCTIONS = ("intersect", "min", "max")


def _pos():
    return field(default=None, compare=False, repr=False)


# -- expressions ----------------------------------------------------------

@dataclass(frozen=True)
class AttrRef:
    name: str
    qualifier: str | None = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Literal:
    """``value`` is an int, str, OngoingPoint or OngoingInterval; ``type`` a ValueType or NUM."""

    value: object
    type: object
    pos: Pos = _pos()
    text: str | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class IntervalExpr:
    """``[start, end)`` built from two point-valued expressions."""

    start: object
    end: object
    pos: Pos = _pos()


Expr = Union[AttrRef, Literal, Call, IntervalExpr]


# -- predicates -----------------------------------------------------------

@dataclass(frozen=True)
class Compare:
    op: str
    left: Expr
    right: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Temporal:
    name: str
    left: Expr
    right: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class BoolConst:
    value: bool
    pos: Pos = _pos()


@dataclass(frozen=True)
class And:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Or:
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    item: object
    pos: Pos = _pos()


Predicate = Union[Compare, Temporal, BoolConst, And, Or, Not]
LEAVES = (Compare, Temporal, BoolConst)


def conjoin(items) -> Predicate:
    flat = []
    for p in items:
        flat.extend(p.items if isinstance(p, And) else (p,))
    if not flat:
        return BoolConst(True)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def conjuncts(pred: Predicate) -> list:
    return list(pred.items) if isinstance(pred, And) else [pred]


# -- plans ----------------------------------------------------------------

@dataclass(frozen=True)
class Scan:
    name: str
    alias: str | None = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class ProjectItem:
    expr: Expr
    alias: str | None = None


@dataclass(frozen=True)
class Project:
    items: tuple
    child: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Select:
    pred: Predicate
    child: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Product:
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Join:
    left: object
    pred: Predicate
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Union_:
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Difference:
    left: object
    right: object
    pos: Pos = _pos()


Plan = Union[Scan, Project, Select, Product, Join, Union_, Difference]


# -- type checking --------------------------------------------------------

_POINTISH = (ValueType.TICK, ValueType.OPOINT, NUM)


def _fail(message: str, node) -> QueryError:
    pos = getattr(node, "pos", None) or (0, 0)
    return QueryError(message, pos[0], pos[1])


def expr_type(expr: Expr, schema: Schema):
    if isinstance(expr, AttrRef):
        try:
            return schema.attributes[schema.resolve(expr.name, expr.qualifier)].type
        except SchemaError as exc:
            raise _fail(str(exc), expr) from None
    if isinstance(expr, Literal):
        return expr.type
    if isinstance(expr, IntervalExpr):
        for bound in (expr.start, expr.end):
            if expr_type(bound, schema) not in _POINTISH:
                raise _fail("interval bounds must be time points", bound)
        return ValueType.OINTERVAL
    if isinstance(expr, Call):
        if expr.func not in FUNCTIONS:
            raise _fail(f"unknown function {expr.func}", expr)
        if len(expr.args) != 2:
            raise _fail(f"{expr.func} takes two arguments", expr)
        types = [expr_type(a, schema) for a in expr.args]
        if expr.func == "intersect":
            if any(t is not ValueType.OINTERVAL for t in types):
                raise _fail("intersect needs two intervals", expr)
            return ValueType.OINTERVAL
        if any(t not in _POINTISH for t in types):
            raise _fail(f"{expr.func} needs two time points", expr)
        return ValueType.OPOINT if ValueType.OPOINT in types else ValueType.TICK
    raise _fail(f"not an expression: {expr!r}", expr)


def comparison_domain(pred: Compare, schema: Schema) -> str:
    """``"int"``, ``"text"``, ``"point"`` or ``"interval"``; raises on a type mismatch."""
    lt, rt = expr_type(pred.left, schema), expr_type(pred.right, schema)
    types = {lt, rt}
    if types <= {ValueType.INT, NUM} and ValueType.INT in types or types == {NUM}:
        return "int"
    if types == {ValueType.TEXT}:
        return "text"
    if types <= set(_POINTISH):
        return "point"
    if types == {ValueType.OINTERVAL}:
        if pred.op not in ("=", "!="):
            raise _fail("intervals support only = and !=; use a temporal predicate", pred)
        return "interval"
    raise _fail(f"cannot compare {lt} with {rt}", pred)


def _involves_ongoing(expr: Expr, schema: Schema) -> bool:
    t = expr_type(expr, schema)
    if t in (ValueType.OPOINT, ValueType.OINTERVAL):
        return True
    if isinstance(expr, Call):
        return any(_involves_ongoing(a, schema) for a in expr.args)
    return False


def check_predicate(pred: Predicate, schema: Schema) -> None:
    if isinstance(pred, Compare):
        if pred.op not in COMPARISONS:
            raise _fail(f"unknown comparison {pred.op}", pred)
        comparison_domain(pred, schema)
    elif isinstance(pred, Temporal):
        if pred.name not in TEMPORAL_PREDICATES:
            raise _fail(f"unknown temporal predicate {pred.name}", pred)
        for side in (pred.left, pred.right):
            if expr_type(side, schema) is not ValueType.OINTERVAL:
                raise _fail(f"{pred.name} needs two intervals", side)
    elif isinstance(pred, (And, Or)):
        for p in pred.items:
            check_predicate(p, schema)
    elif isinstance(pred, Not):
        check_predicate(pred.item, schema)
    elif not isinstance(pred, BoolConst):
        raise _fail(f"not a predicate: {pred!r}", pred)


def is_ongoing(pred: Predicate, schema: Schema) -> bool:
    """True when the predicate's truth can depend on the reference time."""
    if isinstance(pred, (Compare, Temporal)):
        return _involves_ongoing(pred.left, schema) or _involves_ongoing(pred.right, schema)
    if isinstance(pred, (And, Or)):
        return any(is_ongoing(p, schema) for p in pred.items)
    if isinstance(pred, Not):
        return is_ongoing(pred.item, schema)
    return False


def split_predicate(pred: Predicate, schema: Schema) -> tuple[list, list]:
    """Split the top-level conjunction into (fixed conjuncts, ongoing conjuncts)."""
    fixed, ongoing = [], []
    for p in conjuncts(pred):
        (ongoing if is_ongoing(p, schema) else fixed).append(p)
    return fixed, ongoing


def leaf_tags(pred: Predicate, schema: Schema) -> list[tuple[Predicate, str]]:
    if isinstance(pred, LEAVES):
        return [(pred, "ongoing" if is_ongoing(pred, schema) else "fixed")]
    if isinstance(pred, (And, Or)):
        return [tag for p in pred.items for tag in leaf_tags(p, schema)]
    return leaf_tags(pred.item, schema)


def project_schema(items, schema: Schema) -> Schema:
    out = []
    for k, item in enumerate(items):
        t = expr_type(item.expr, schema)
        if isinstance(item.expr, AttrRef):
            attr = schema.attributes[schema.resolve(item.expr.name, item.expr.qualifier)]
            out.append(Attribute(item.alias, attr.type) if item.alias else attr)
        else:
            vtype = ValueType.INT if t == NUM else t
            out.append(Attribute(item.alias or f"expr{k + 1}", vtype))
    try:
        return Schema(tuple(out))
    except SchemaError as exc:
        raise QueryError(str(exc)) from None


@dataclass
class TypeInfo:
    schema: Schema
    tags: list = field(default_factory=list)


def catalog_schema(catalog: Mapping, name: str, node=None) -> Schema:
    if name not in catalog:
        raise _fail(f"unknown relation {name}", node)
    entry = catalog[name]
    return entry.schema if isinstance(entry, OngoingRelation) else entry


def typecheck(plan: Plan, catalog: Mapping) -> TypeInfo:
    """Output schema of ``plan`` plus every predicate leaf tagged fixed/ongoing."""
    info = TypeInfo(Schema(()))
    info.schema = _check(plan, catalog, info.tags)
    return info


def output_schema(plan: Plan, catalog: Mapping) -> Schema:
    return _check(plan, catalog, [])


def _check(plan, catalog, tags) -> Schema:
    if isinstance(plan, Scan):
        return catalog_schema(catalog, plan.name, plan).requalify(plan.alias or plan.name)
    if isinstance(plan, Select):
        schema = _check(plan.child, catalog, tags)
        check_predicate(plan.pred, schema)
        tags.extend(leaf_tags(plan.pred, schema))
        return schema
    if isinstance(plan, Project):
        schema = _check(plan.child, catalog, tags)
        return project_schema(plan.items, schema)
    if isinstance(plan, (Product, Join)):
        left = _check(plan.left, catalog, tags)
        right = _check(plan.right, catalog, tags)
        try:
            schema = left.concat(right)
        except SchemaError as exc:
            raise _fail(str(exc), plan) from None
        if isinstance(plan, Join):
            check_predicate(plan.pred, schema)
            tags.extend(leaf_tags(plan.pred, schema))
        return schema
    if isinstance(plan, (Union_, Difference)):
        left = _check(plan.left, catalog, tags)
        right = _check(plan.right, catalog, tags)
        if not left.compatible(right):
            op = "union" if isinstance(plan, Union_) else "minus"
            raise _fail(f"{op} needs identical schemas: {left.names} vs {right.names}", plan)
        return left
    raise _fail(f"not a plan node: {plan!r}", plan)


def literals(node) -> list[Literal]:
    """Every literal in a plan, predicate or expression (for breakpoint collection)."""
    found = []

    def walk(n):
        if isinstance(n, Literal):
            found.append(n)
        elif isinstance(n, (tuple, list)):
            for x in n:
                walk(x)
        elif hasattr(n, "__dataclass_fields__"):
            for name in n.__dataclass_fields__:
                if name != "pos":
                    walk(getattr(n, name))

    walk(node)
    return found
