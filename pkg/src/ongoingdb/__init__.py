"""In-memory relational engine for ongoing time points.

Ongoing values such as ``now`` stay uninstantiated during query evaluation;
every result tuple carries the set of reference times at which it belongs to
the instantiated result.
"""
from .algebra import (
    difference,
    eval_predicate,
    evaluate,
    join,
    plan_optimize,
    product,
    project,
    select,
    union,
)
from .boolean import (
    ALWAYS,
    NEVER,
    IntervalSet,
    conjunction,
    disjunction,
    format_interval_set,
    negation,
    parse_interval_set,
)
from .errors import DataError, OngoingError, QueryError, SchemaError, TypeMismatch
from .interval import (
    OngoingInterval,
    before,
    bind_interval,
    during,
    finishes,
    intersect,
    interval,
    interval_equals,
    meets,
    nonempty,
    overlaps,
    starts,
)
from .oracle import CheckReport, breakpoints, differential_check, fixed_eval
from .query import parse, parse_predicate, print_plan, print_predicate
from .relation import (
    Attribute,
    FixedRelation,
    OngoingRelation,
    OngoingTuple,
    Schema,
    ValueType,
    base_tuple,
    bind_relation,
)
from .ticks import NEG_INF, POS_INF, md, parse_tick, successor
from .timepoint import (
    NOW,
    OngoingPoint,
    bind_point,
    fixed,
    greater_equal,
    greater_than,
    growing,
    less_equal,
    less_than,
    limited,
    ongoing_max,
    ongoing_min,
    point_equal,
    point_not_equal,
)

__version__ = "0.1.0"
