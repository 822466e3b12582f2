"""Query language: tokenizer, LL(1) recursive-descent parser and printer.

Grammar (keywords are lowercase)::

    query     := expr EOF
    expr      := primary { "join" pred primary | "union" primary
                         | "minus" primary | "product" primary }
    primary   := "select" pred "(" expr ")"
               | "project" item { "," item } "(" expr ")"
               | "(" expr ")"
               | IDENT [ "as" IDENT ]
    item      := value [ "as" IDENT ]
    pred      := conj { "or" conj }
    conj      := neg { "and" neg }
    neg       := "not" neg | "true" | "false" | "(" pred ")"
               | value ( CMP | TEMPORAL ) value
    value     := IDENT [ "." IDENT ] | FUNC "(" value "," value ")"
               | "[" value "," value ")" | point | STRING | NUMBER
    point     := "now" | "from" "(" tick ")" | "until" "(" tick ")"
               | "point" "(" tick "," tick ")" | "tick" "(" NUMBER ")" | tick
    tick      := DATE | TIMESTAMP | "-inf" | "+inf" | NUMBER

Binary operators associate to the left.  ``print_plan`` emits text that
parses back to a structurally identical plan.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import ticks
from .errors import Diagnostic, QueryError
from .plan import (
    FUNCTIONS,
    NUM,
    TEMPORAL_PREDICATES,
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
    ProjectItem,
    Scan,
    Select,
    Temporal,
    Union_,
)
from .relation import ValueType
from .timepoint import NOW, OngoingPoint

KEYWORDS = {
    "select", "project", "join", "union", "minus", "product", "as",
    "and", "or", "not", "true", "false", "now",
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<timestamp>\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(?::\d{2}(?:\.\d{3}(?:\d{3})?)?)?)
  | (?P<date>\d{4}-\d{2}-\d{2})
  | (?P<inf>[+-]inf\b)
  | (?P<number>-?\d+)
  | (?P<string>'(?:[^']|'')*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|!=|<>|=|<|>)
  | (?P<punct>[()\[\],.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    @property
    def pos(self) -> tuple[int, int]:
        return (self.line, self.column)


def tokenize(text: str) -> list[Token]:
    """Tokens with 1-based positions; keywords get their own kind."""
    tokens, errors = [], []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            errors.append(Diagnostic(f"unexpected character {text[i]!r}", line, i - line_start + 1))
            i += 1
            continue
        kind, value = m.lastgroup, m.group()
        column = i - line_start + 1
        if kind == "ws":
            for k, ch in enumerate(value):
                if ch == "\n":
                    line, line_start = line + 1, i + k + 1
        else:
            if kind == "ident" and value in KEYWORDS:
                kind = value
            elif kind == "op" and value == "<>":
                value = "!="
            tokens.append(Token(kind, value, line, column))
        i = m.end()
    if errors:
        raise QueryError(errors[0].message, diagnostics=errors)
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # -- helpers --
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> QueryError:
        tok = tok or self.tok
        return QueryError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.tok.kind == kind and (text is None or self.tok.text == text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            want = text or kind
            got = self.tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        return tok

    # -- plans --
    def query(self):
        if self.tok.kind == "eof":
            raise self.error("empty query")
        plan = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after query")
        return plan

    def expr(self):
        left = self.primary()
        while True:
            tok = self.tok
            if self.accept("join"):
                pred = self.pred()
                left = Join(left, pred, self.primary(), pos=tok.pos)
            elif self.accept("union"):
                left = Union_(left, self.primary(), pos=tok.pos)
            elif self.accept("minus"):
                left = Difference(left, self.primary(), pos=tok.pos)
            elif self.accept("product"):
                left = Product(left, self.primary(), pos=tok.pos)
            else:
                return left

    def primary(self):
        tok = self.tok
        if self.accept("select"):
            pred = self.pred()
            return Select(pred, self.parenthesized(), pos=tok.pos)
        if self.accept("project"):
            items = [self.item()]
            while self.accept("punct", ","):
                items.append(self.item())
            return Project(tuple(items), self.parenthesized(), pos=tok.pos)
        if self.tok.kind == "punct" and self.tok.text == "(":
            return self.parenthesized()
        if self.tok.kind == "ident":
            name = self.advance().text
            alias = self.expect("ident").text if self.accept("as") else None
            return Scan(name, alias, pos=tok.pos)
        raise self.error(f"expected a relation expression, found {tok.text or 'end of input'!r}")

    def parenthesized(self):
        self.expect("punct", "(")
        plan = self.expr()
        self.expect("punct", ")")
        return plan

    def item(self) -> ProjectItem:
        expr = self.value()
        alias = self.expect("ident").text if self.accept("as") else None
        return ProjectItem(expr, alias)

    # -- predicates --
    def pred(self):
        tok = self.tok
        items = [self.conj()]
        while self.accept("or"):
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items), pos=tok.pos)

    def conj(self):
        tok = self.tok
        items = [self.neg()]
        while self.accept("and"):
            items.append(self.neg())
        return items[0] if len(items) == 1 else And(tuple(items), pos=tok.pos)

    def neg(self):
        tok = self.tok
        if self.accept("not"):
            return Not(self.neg(), pos=tok.pos)
        if self.accept("true"):
            return BoolConst(True, pos=tok.pos)
        if self.accept("false"):
            return BoolConst(False, pos=tok.pos)
        if self.accept("punct", "("):
            inner = self.pred()
            self.expect("punct", ")")
            return inner
        left = self.value()
        op = self.tok
        if op.kind == "op":
            self.advance()
            return Compare(op.text, left, self.value(), pos=op.pos)
        if op.kind == "ident" and op.text in TEMPORAL_PREDICATES:
            self.advance()
            return Temporal(op.text, left, self.value(), pos=op.pos)
        raise self.error(f"expected a comparison or temporal predicate, found {op.text or 'end of input'!r}")

    # -- values --
    def value(self):
        tok = self.tok
        if tok.kind == "ident" and self.peek().text == "(":
            if tok.text in FUNCTIONS:
                self.advance()
                self.expect("punct", "(")
                a = self.value()
                self.expect("punct", ",")
                b = self.value()
                self.expect("punct", ")")
                return Call(tok.text, (a, b), pos=tok.pos)
            if tok.text in ("from", "until", "point", "tick"):
                return self.point_literal()
        if tok.kind == "ident":
            self.advance()
            if self.accept("punct", "."):
                name = self.expect("ident").text
                return AttrRef(name, tok.text, pos=tok.pos)
            return AttrRef(tok.text, pos=tok.pos)
        if self.accept("punct", "["):
            start = self.value()
            self.expect("punct", ",")
            end = self.value()
            self.expect("punct", ")")
            return IntervalExpr(start, end, pos=tok.pos)
        if tok.kind == "string":
            self.advance()
            return Literal(tok.text[1:-1].replace("''", "'"), ValueType.TEXT, pos=tok.pos)
        if tok.kind == "number":
            self.advance()
            return Literal(int(tok.text), NUM, pos=tok.pos)
        if tok.kind in ("date", "timestamp", "inf"):
            return Literal(self.tick(), ValueType.TICK, pos=tok.pos, text=tok.text)
        if self.accept("now"):
            return Literal(NOW, ValueType.OPOINT, pos=tok.pos, text="now")
        raise self.error(f"expected a value, found {tok.text or 'end of input'!r}")

    def point_literal(self) -> Literal:
        tok = self.advance()
        self.expect("punct", "(")
        start = self.i
        if tok.text == "tick":
            value = int(self.expect("number").text)
            self.expect("punct", ")")
            return Literal(value, ValueType.TICK, pos=tok.pos)
        a = self.tick()
        b = None
        if tok.text == "point":
            self.expect("punct", ",")
            b = self.tick()
        end = self.i
        self.expect("punct", ")")
        if tok.text == "from":
            point = OngoingPoint(a, ticks.POS_INF)
        elif tok.text == "until":
            point = OngoingPoint(ticks.NEG_INF, a)
        else:
            if a > b:
                raise self.error(f"point({a}, {b}) needs a <= b", tok)
            point = OngoingPoint(a, b)
        text = "".join(t.text + (" " if t.text == "," else "") for t in self.tokens[start:end])
        return Literal(point, ValueType.OPOINT, pos=tok.pos, text=f"{tok.text}({text})")

    def tick(self) -> int:
        tok = self.tok
        if tok.kind not in ("date", "timestamp", "inf", "number"):
            raise self.error(f"expected a time point, found {tok.text or 'end of input'!r}")
        self.advance()
        try:
            return ticks.check_tick(ticks.parse_tick(tok.text))
        except (ValueError, TypeError) as exc:
            raise self.error(str(exc), tok) from None


def parse(text: str):
    """Parse query text into a plan tree; raises QueryError with a position."""
    return Parser(text).query()


def parse_predicate(text: str):
    p = Parser(text)
    if p.tok.kind == "eof":
        raise p.error("empty predicate")
    pred = p.pred()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after predicate")
    return pred


def parse_value(text: str):
    p = Parser(text)
    value = p.value()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after value")
    return value


# -- printing -------------------------------------------------------------------

def _tick_text(t: int) -> str:
    if t == ticks.NEG_INF:
        return "-inf"
    if t == ticks.POS_INF:
        return "+inf"
    return str(t)


def print_value(v) -> str:
    if isinstance(v, AttrRef):
        return f"{v.qualifier}.{v.name}" if v.qualifier else v.name
    if isinstance(v, Call):
        return f"{v.func}({print_value(v.args[0])}, {print_value(v.args[1])})"
    if isinstance(v, IntervalExpr):
        return f"[{print_value(v.start)}, {print_value(v.end)})"
    if isinstance(v, Literal):
        if v.text is not None:
            return v.text
        if v.type is ValueType.TEXT:
            return "'" + v.value.replace("'", "''") + "'"
        if v.type == NUM:
            return str(v.value)
        if v.type is ValueType.TICK:
            if v.value in (ticks.NEG_INF, ticks.POS_INF):
                return _tick_text(v.value)
            return f"tick({v.value})"
        if v.type is ValueType.OPOINT:
            p = v.value
            if p == NOW:
                return "now"
            if p.b == ticks.POS_INF and p.a != ticks.NEG_INF:
                return f"from({_tick_text(p.a)})"
            if p.a == ticks.NEG_INF and p.b != ticks.POS_INF:
                return f"until({_tick_text(p.b)})"
            return f"point({_tick_text(p.a)}, {_tick_text(p.b)})"
    raise TypeError(f"cannot print value {v!r}")


def print_predicate(p) -> str:
    if isinstance(p, BoolConst):
        return "true" if p.value else "false"
    if isinstance(p, Compare):
        return f"{print_value(p.left)} {p.op} {print_value(p.right)}"
    if isinstance(p, Temporal):
        return f"{print_value(p.left)} {p.name} {print_value(p.right)}"
    if isinstance(p, Or):
        return " or ".join(_wrap(q, (Or,)) for q in p.items)
    if isinstance(p, And):
        return " and ".join(_wrap(q, (And, Or)) for q in p.items)
    if isinstance(p, Not):
        return "not " + _wrap(p.item, (And, Or))
    raise TypeError(f"cannot print predicate {p!r}")


def _wrap(p, kinds) -> str:
    text = print_predicate(p)
    return f"({text})" if isinstance(p, kinds) else text


_BINARY = {Union_: "union", Difference: "minus", Product: "product"}


def print_plan(plan) -> str:
    if isinstance(plan, Scan):
        return plan.name + (f" as {plan.alias}" if plan.alias else "")
    if isinstance(plan, Select):
        return f"select {print_predicate(plan.pred)} ({print_plan(plan.child)})"
    if isinstance(plan, Project):
        items = ", ".join(print_value(i.expr) + (f" as {i.alias}" if i.alias else "")
                          for i in plan.items)
        return f"project {items} ({print_plan(plan.child)})"
    if isinstance(plan, Join):
        return f"{print_plan(plan.left)} join {print_predicate(plan.pred)} {_primary(plan.right)}"
    for kind, word in _BINARY.items():
        if isinstance(plan, kind):
            return f"{print_plan(plan.left)} {word} {_primary(plan.right)}"
    raise TypeError(f"cannot print plan {plan!r}")


def _primary(plan) -> str:
    text = print_plan(plan)
    return f"({text})" if isinstance(plan, (Join, Union_, Difference, Product)) else text

