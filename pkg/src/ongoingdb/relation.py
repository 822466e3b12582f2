"""Schemas, ongoing tuples and relations, and binding a relation at a reference time."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .boolean import ALWAYS, IntervalSet
from .errors import SchemaError, TypeMismatch
from .interval import OngoingInterval
from .ticks import NEG_INF, POS_INF
from .timepoint import OngoingPoint


class ValueType(str, enum.Enum):
    INT = "int"
    TEXT = "text"
    TICK = "tick"
    OPOINT = "opoint"
    OINTERVAL = "ointerval"

    @property
    def is_ongoing(self) -> bool:
        return self in (ValueType.OPOINT, ValueType.OINTERVAL)

    def __str__(self) -> str:
        return self.value


def conforms(vtype: ValueType, value: Any) -> bool:
    if vtype is ValueType.INT:
        return isinstance(value, int) and not isinstance(value, bool)
    if vtype is ValueType.TEXT:
        return isinstance(value, str)
    if vtype is ValueType.TICK:
        return (isinstance(value, int) and not isinstance(value, bool)
                and NEG_INF <= value <= POS_INF)
    if vtype is ValueType.OPOINT:
        return isinstance(value, OngoingPoint)
    return isinstance(value, OngoingInterval)


@dataclass(frozen=True)
class Attribute:
    name: str
    type: ValueType
    qualifier: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "type", ValueType(self.type))
        if self.name.upper() == "RT":
            raise SchemaError("RT is reserved for the reference time attribute")

    @property
    def qualified_name(self) -> str:
        return f"{self.qualifier}.{self.name}" if self.qualifier else self.name

    def requalify(self, qualifier: str | None) -> "Attribute":
        return Attribute(self.name, self.type, qualifier)


@dataclass(frozen=True)
class Schema:
    """Ordered attributes; the RT attribute is implicit and always last."""

    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        seen = set()
        for attr in self.attributes:
            key = (attr.qualifier, attr.name)
            if key in seen:
                raise SchemaError(f"duplicate attribute {attr.qualified_name}")
            seen.add(key)

    @classmethod
    def of(cls, *pairs: tuple[str, str], qualifier: str | None = None) -> "Schema":
        return cls(tuple(Attribute(n, ValueType(t), qualifier) for n, t in pairs))

    def __len__(self) -> int:
        return len(self.attributes)

    def __iter__(self) -> Iterator[Attribute]:
        return iter(self.attributes)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    @property
    def types(self) -> tuple[ValueType, ...]:
        return tuple(a.type for a in self.attributes)

    def requalify(self, qualifier: str | None) -> "Schema":
        return Schema(tuple(a.requalify(qualifier) for a in self.attributes))

    def resolve(self, name: str, qualifier: str | None = None) -> int:
        """Index of ``qualifier.name`` (qualifier optional when unambiguous)."""
        hits = [i for i, a in enumerate(self.attributes)
                if a.name == name and (qualifier is None or a.qualifier == qualifier)]
        label = f"{qualifier}.{name}" if qualifier else name
        if not hits:
            raise SchemaError(f"unknown attribute {label}")
        if len(hits) > 1:
            raise SchemaError(f"ambiguous attribute {label}; qualify it")
        return hits[0]

    def concat(self, other: "Schema") -> "Schema":
        mine = {(a.qualifier, a.name) for a in self.attributes}
        for a in other.attributes:
            if (a.qualifier, a.name) in mine:
                raise SchemaError(f"attribute {a.qualified_name} appears on both sides; "
                                  "rename one input with 'as'")
        return Schema(self.attributes + other.attributes)

    def compatible(self, other: "Schema") -> bool:
        return (len(self) == len(other)
                and all(a.name == b.name and a.type == b.type
                        for a, b in zip(self.attributes, other.attributes)))

    def display_names(self) -> list[str]:
        """Unqualified names where unique, ``Q_name`` otherwise."""
        counts: dict[str, int] = {}
        for a in self.attributes:
            counts[a.name] = counts.get(a.name, 0) + 1
        return [a.name if counts[a.name] == 1 or not a.qualifier else f"{a.qualifier}_{a.name}"
                for a in self.attributes]

    def validate(self, values: Sequence[Any]) -> tuple:
        if len(values) != len(self.attributes):
            raise TypeMismatch(f"expected {len(self.attributes)} values, got {len(values)}")
        for attr, value in zip(self.attributes, values):
            if not conforms(attr.type, value):
                raise TypeMismatch(f"value {value!r} does not conform to "
                                   f"{attr.qualified_name}:{attr.type}")
        return tuple(values)


@dataclass(frozen=True, slots=True)
class OngoingTuple:
    values: tuple
    rt: IntervalSet = ALWAYS

    def bind(self, rt: int) -> tuple:
        return tuple(bind_value(v, rt) for v in self.values)


def bind_value(value: Any, rt: int) -> Any:
    """Instantiate one attribute value; fixed values pass through."""
    if isinstance(value, OngoingPoint):
        return value.bind(rt)
    if isinstance(value, OngoingInterval):
        return value.bind(rt)
    return value


def base_tuple(schema: Schema, values: Sequence[Any]) -> OngoingTuple:
    """Tuple of a base relation: trivial reference time."""
    return OngoingTuple(schema.validate(values), ALWAYS)


@dataclass
class OngoingRelation:
    """Schema plus a sequence of tuples; set semantics are applied on output."""

    schema: Schema
    tuples: list[OngoingTuple] = field(default_factory=list)

    @classmethod
    def from_rows(cls, schema: Schema, rows: Iterable[Sequence[Any]]) -> "OngoingRelation":
        return cls(schema, [base_tuple(schema, r) for r in rows])

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[OngoingTuple]:
        return iter(self.tuples)

    def add(self, values: Sequence[Any], rt: IntervalSet = ALWAYS) -> OngoingTuple:
        if not rt:
            raise ValueError("stored tuples must have a non-empty reference time")
        t = OngoingTuple(self.schema.validate(values), rt)
        self.tuples.append(t)
        return t

    def deduplicated(self) -> "OngoingRelation":
        return OngoingRelation(self.schema, list(dict.fromkeys(self.tuples)))

    def bind(self, rt: int) -> "FixedRelation":
        return bind_relation(self, rt)


@dataclass(frozen=True)
class FixedRelation:
    """An instantiated relation: a set of bound value tuples.

    Bound ongoing points are ticks; bound ongoing intervals are
    ``(start, end)`` pairs that may be empty.
    """

    schema: Schema
    rows: frozenset

    def __len__(self) -> int:
        return len(self.rows)

    def sorted_rows(self) -> list[tuple]:
        return sorted(self.rows, key=repr)


def bind_relation(relation: OngoingRelation, rt: int) -> FixedRelation:
    rows = set()
    for t in relation.tuples:
        if t.rt.bind(rt):
            rows.add(t.bind(rt))
    return FixedRelation(relation.schema, frozenset(rows))
