from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from viewprop.domains import (
    DomainStore,
    ExtensionalConstraint,
    IntDomain,
    SetDomain,
    Sort,
    VarId,
    conv_of,
    covering_substores,
    dom_of,
    domain_space,
    enumerate_assignments,
    is_stronger,
    meet,
    subdomains,
)
from viewprop.errors import CapExceeded, UsageError

values = st.frozensets(st.integers(-6, 6), max_size=8)
X, Y = VarId(0, Sort.INT, "x"), VarId(1, Sort.INT, "y")


def store(**doms):
    names = {"x": X, "y": Y}
    return DomainStore({names[k]: IntDomain.of(v) for k, v in doms.items()})


@given(values, values)
def test_int_set_algebra_matches_python_sets(a, b):
    da, db = IntDomain.of(a), IntDomain.of(b)
    assert set(da & db) == a & b
    assert set(da | db) == a | b
    assert set(da - db) == a - b
    assert (da <= db) == (a <= b)
    assert da.size == len(a)


@given(values, st.integers(-3, 3))
def test_shift_negate_and_hull(a, k):
    d = IntDomain.of(a)
    assert set(d.shift(k)) == {v + k for v in a}
    assert set(d.negate()) == {-v for v in a}
    if a:
        assert set(d.hull()) == set(range(min(a), max(a) + 1))
        assert d.min == min(a) and d.max == max(a)


@given(values, st.integers(-6, 6))
def test_adjust_bounds(a, n):
    d = IntDomain.of(a)
    assert set(d.adj_min(n)) == {v for v in a if v >= n}
    assert set(d.adj_max(n)) == {v for v in a if v <= n}
    assert set(d.remove(n)) == a - {n}


def test_ranges_are_normalized():
    assert IntDomain.from_ranges([(1, 2), (3, 4), (7, 7)]).ranges == ((1, 4), (7, 7))
    assert IntDomain.interval(3, 1).is_empty()


def test_set_domain_meet_and_members():
    a = SetDomain({1}, {1, 2, 3}) & SetDomain({2}, {1, 2})
    assert (a.lb, a.ub) == ({1, 2}, {1, 2})
    assert len(SetDomain((), {1, 2})) == 4
    assert SetDomain({3}, {1}).is_empty()


def test_store_order_and_meet():
    assert is_stronger(store(x={1, 2}), store(x={1, 2, 3}))
    assert is_stronger(store(x={1, 2}), store(x={1, 2}))
    assert not is_stronger(store(x={1, 4}), store(x={1, 2, 3}))
    assert meet(store(x={1, 2, 3}), store(x={2, 3, 4}))[X] == IntDomain.of({2, 3})
    with pytest.raises(UsageError):
        is_stronger(store(x={1}), store(y={1}))


def test_dom_and_conv_of_constraints():
    c = ExtensionalConstraint.of((X, Y), [(0, 1), (1, 2)])
    d = dom_of(c)
    assert d[X] == IntDomain.of({0, 1}) and d[Y] == IntDomain.of({1, 2})
    assert dom_of(ExtensionalConstraint.of((X, Y), [])).failed
    c = ExtensionalConstraint.of((X,), [(1,), (3,)])
    assert conv_of(c)[X] == IntDomain.interval(1, 3)


@given(st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=10))
def test_dom_inside_conv(tuples):
    c = ExtensionalConstraint.of((X, Y), tuples)
    assert dom_of(c) <= conv_of(c)


def test_enumerate_assignments():
    assert list(enumerate_assignments(store(x={0, 1}, y={2}), [X, Y])) == [(0, 2), (1, 2)]
    assert len(list(enumerate_assignments(store(x={1, 2, 3}, y={1, 2, 3}), [X, Y]))) == 9
    assert list(enumerate_assignments(store(x=set(), y={1}), [X, Y])) == []
    with pytest.raises(CapExceeded):
        list(enumerate_assignments(store(x=range(100), y=range(100)), [X, Y], cap=50))


def test_substores_cover_the_lattice():
    d = IntDomain.of({1, 2, 3})
    assert len(list(subdomains(d))) == 8
    assert len(domain_space(Sort.INT, (0, 1, 2))) == 7
    covers = list(covering_substores((d, IntDomain.single(0))))
    assert len(covers) == 4
    assert all(sub.size == 2 for pos, sub in covers if pos == 0)
    assert [sub for pos, sub in covers if pos == 1] == [IntDomain.of(())]
