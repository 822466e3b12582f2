"""The bug-tracking running example: bugs B, patches P and technical leads L.

Dates are 2019 day ticks.  Tuples b_1, p_1 and l_1 carry the values used in
the worked examples; the remaining tuples are illustrative filler.
"""
from __future__ import annotations

from .interval import interval
from .relation import OngoingRelation, Schema
from .ticks import md
from .timepoint import NOW, limited

BUGS = Schema.of(("BID", "int"), ("C", "text"), ("VT", "ointerval"))
PATCHES = Schema.of(("PID", "int"), ("C", "text"), ("VT", "ointerval"))
LEADS = Schema.of(("Name", "text"), ("C", "text"), ("VT", "ointerval"))

V_QUERY = (
    "project BID, B.VT, PID, Name, intersect(B.VT, L.VT) as LVT ("
    "select C = 'Spam filter' (B)"
    " join B.C = P.C and B.VT before P.VT P"
    " join B.C = L.C and B.VT overlaps L.VT L)"
)
"""Spam-filter bugs joined with later patches and the responsible lead."""

BEFORE_JOIN = "select C = 'Spam filter' (B) join B.C = P.C and B.VT before P.VT P"


def running_example() -> dict[str, OngoingRelation]:
    bugs = OngoingRelation.from_rows(BUGS, [
        (500, "Spam filter", interval(md(1, 25), NOW)),
        (600, "Spam filter", interval(md(3, 20), md(7, 10))),
        (700, "Calendar", interval(md(2, 1), NOW)),
    ])
    patches = OngoingRelation.from_rows(PATCHES, [
        (201, "Spam filter", interval(md(8, 15), md(8, 24))),
        (202, "Calendar", interval(md(9, 1), md(9, 10))),
    ])
    leads = OngoingRelation.from_rows(LEADS, [
        ("Ann", "Spam filter", interval(md(1, 1), md(8, 18))),
        ("Bob", "Spam filter", interval(md(8, 18), NOW)),
    ])
    return {"B": bugs, "P": patches, "L": leads}


def b1_lead_window():
    """Expected ``b_1.VT`` intersected with ``l_1.VT``."""
    return interval(md(1, 25), limited(md(8, 18)))
