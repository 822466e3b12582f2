import pytest
from hypothesis import given, strategies as st

from ongoingdb.boolean import ALWAYS, NEVER, IntervalSet
from ongoingdb.interval import (
    FIXED_PREDICATES, ONGOING_PREDICATES, OngoingInterval, before, bind_interval,
    endpoints_equal, format_interval, intersect, interval, interval_equals, meets, nonempty,
    overlaps,
)
from ongoingdb.ticks import NEG_INF, POS_INF, md
from ongoingdb.timepoint import NOW, OngoingPoint, growing, limited

from helpers import brute_set
from test_timepoint import points, window


@st.composite
def intervals(draw):
    return OngoingInterval(draw(points()), draw(points()))


def ivl_window(*ivs):
    return window(*[p for i in ivs for p in (i.start, i.end)])


def test_bind_interval_examples():
    i = interval(md(10, 17), NOW)
    s, e = bind_interval(i, md(10, 16))
    assert s >= e  # empty before the start
    assert bind_interval(i, md(10, 20)) == (md(10, 17), md(10, 20))
    for rt in (NEG_INF, 3, POS_INF):
        assert bind_interval(interval(2, 9), rt) == (2, 9)


def test_intersect_examples():
    got = intersect(interval(md(1, 25), NOW), interval(md(8, 18), NOW))
    assert got == interval(md(8, 18), NOW)
    for rt in (md(8, 17), md(8, 18), md(8, 19)):
        s, e = bind_interval(got, rt)
        assert (max(md(1, 25), md(8, 18)), min(rt, rt)) == (s, e)
    got = intersect(interval(md(1, 25), NOW), interval(md(7, 15), POS_INF))
    assert got == interval(md(7, 15), NOW)
    i = interval(OngoingPoint(1, 4), 7)
    assert intersect(i, i) == i


def test_nonempty_examples():
    assert nonempty(interval(md(10, 17), NOW)) == IntervalSet([(md(10, 18), POS_INF)])
    assert nonempty(interval(2, 5)) == ALWAYS
    assert nonempty(interval(4, 4)) == NEVER


def test_overlaps_examples():
    assert overlaps(interval(md(10, 17), NOW), interval(md(10, 14), md(10, 20))) == \
        IntervalSet([(md(10, 18), POS_INF)])
    i = interval(3, NOW)
    assert overlaps(i, i) == nonempty(i)
    assert overlaps(interval(md(1, 25), NOW), interval(md(1, 20), md(8, 18))) == \
        IntervalSet([(md(1, 26), POS_INF)])


def test_before_examples():
    assert before(interval(md(1, 25), NOW), interval(md(8, 15), md(8, 24))) == \
        IntervalSet([(md(1, 26), md(8, 16))])
    assert before(interval(2, 6), interval(2, 6)) == NEVER
    i1, i2 = interval(NOW, md(9, 1)), interval(md(9, 5), md(9, 9))
    want = brute_set(lambda rt: FIXED_PREDICATES["before"](*bind_interval(i1, rt), *bind_interval(i2, rt)),
                     range(md(8, 30), md(9, 11)))
    assert before(i1, i2) == want == IntervalSet([(NEG_INF, md(9, 1))])


def test_meets_examples():
    assert meets(interval(1, 5), interval(5, 9)) == ALWAYS
    i1, i2 = interval(1, NOW), interval(5, 9)
    want = brute_set(lambda rt: FIXED_PREDICATES["meets"](*bind_interval(i1, rt), *bind_interval(i2, rt)),
                     range(0, 11))
    assert meets(i1, i2) == want == IntervalSet([(5, 6)])
    i = interval(limited(3), 8)
    assert interval_equals(i, i) == nonempty(i)


@pytest.mark.parametrize("s1,e1,s2,e2,expected", [
    (0, 3, 2, 5, True), (0, 2, 2, 5, False), (2, 5, 0, 3, True), (1, 4, 2, 3, True),
    (0, 0, 0, 5, False), (3, 1, 0, 5, False), (0, 5, 5, 5, False),
])
def test_fixed_overlaps_table(s1, e1, s2, e2, expected):
    assert FIXED_PREDICATES["overlaps"](s1, e1, s2, e2) is expected


@pytest.mark.parametrize("s1,e1,s2,e2,expected", [
    (0, 2, 2, 5, True), (0, 2, 3, 5, True), (0, 3, 2, 5, False), (0, 0, 2, 5, False),
    (0, 2, 4, 4, False), (3, 5, 0, 2, False),
])
def test_fixed_before_table(s1, e1, s2, e2, expected):
    assert FIXED_PREDICATES["before"](s1, e1, s2, e2) is expected


@pytest.mark.parametrize("name", sorted(ONGOING_PREDICATES))
@given(i1=intervals(), i2=intervals())
def test_predicates_bind_equivalent(name, i1, i2):
    got = ONGOING_PREDICATES[name](i1, i2)
    assert got.is_canonical()
    truth = FIXED_PREDICATES[name]
    assert got == brute_set(lambda rt: truth(*bind_interval(i1, rt), *bind_interval(i2, rt)),
                            ivl_window(i1, i2))


@given(intervals(), intervals())
def test_intersect_distributes(i1, i2):
    both = intersect(i1, i2)
    for rt in ivl_window(i1, i2):
        (s1, e1), (s2, e2) = bind_interval(i1, rt), bind_interval(i2, rt)
        assert bind_interval(both, rt) == (max(s1, s2), min(e1, e2))


@given(intervals(), intervals())
def test_endpoints_equal(i1, i2):
    assert endpoints_equal(i1, i2) == brute_set(
        lambda rt: bind_interval(i1, rt) == bind_interval(i2, rt), ivl_window(i1, i2))


@given(intervals())
def test_self_predicates(i):
    assert overlaps(i, i) == nonempty(i)
    assert interval_equals(i, i) == nonempty(i)


def test_format_interval():
    assert format_interval(interval(md(1, 25), NOW), "date") == "[2019-01-25, now)"
    assert str(interval(1, growing(4))) == "[1, from(4))"
