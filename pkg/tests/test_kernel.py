from __future__ import annotations

import random

import pytest

from viewprop import propagators as P
from viewprop.domains import DomainStore, IntDomain, Sort, Universe, VarId
from viewprop.errors import ContractViolation, UsageError
from viewprop.kernel import (
    BOUNDS,
    Engine,
    Event,
    EventKind,
    Level,
    Propagator,
    Status,
    check_event_set,
    events_between,
    run_fixpoint,
)

X, Y, Z = (VarId(i, Sort.INT, n) for i, n in enumerate("xyz"))


def store(**doms):
    names = {"x": X, "y": Y, "z": Z}
    return DomainStore({names[k]: IntDomain.of(v) for k, v in doms.items()})


def test_events_between():
    a, b = store(x=range(1, 6)), store(x=range(1, 4))
    assert events_between(a, b) == {Event(EventKind.UBC, X), Event(EventKind.DMC, X)}
    kinds = {e.kind for e in events_between(a, store(x={3}))}
    assert kinds == {EventKind.LBC, EventKind.UBC, EventKind.FIX, EventKind.DMC}
    assert events_between(a, a) == set()
    with pytest.raises(UsageError):
        events_between(b, a)


def test_max_fixpoint():
    res = run_fixpoint(store(x=range(1, 4), y=range(2, 6), z=range(0, 5)), [P.max_ternary(X, Y, Z)])
    assert not res.failed
    assert res.store[X] == IntDomain.interval(1, 3)
    assert res.store[Y] == IntDomain.interval(2, 4)
    assert res.store[Z] == IntDomain.interval(2, 4)


def test_contradiction_and_empty_propagator_list():
    assert run_fixpoint(store(x={1}, y={2}), [P.eq(X, Y)]).failed
    s = store(x={1, 2})
    res = run_fixpoint(s, [])
    assert not res.failed and res.store == s


class Expanding(Propagator):
    name = "expanding"
    level = Level.WEAK

    def filter(self, doms):
        return (doms[0] | IntDomain.single(99),), Status.PROGRESS


def test_contract_violation_is_detected():
    with pytest.raises(ContractViolation):
        run_fixpoint(store(x={1, 2}), [Expanding((X,))])


def test_subsumed_propagators_are_removable():
    # below the store where a propagator reported Subsumed, dropping it changes nothing
    rng = random.Random(3)
    b = VarId(3, Sort.BOOL, "b")
    props = [P.reified_eq(X, Y, b), P.linear_neq_unit([X, Z], 4), P.max_ternary(X, Y, Z)]
    checked = 0
    for _ in range(300):
        s = store(**{k: rng.sample(range(0, 6), rng.randint(1, 4)) for k in "xyz"}).extended({b: IntDomain.of({0, 1})})
        full = run_fixpoint(s, props)
        if full.failed or not full.dead:
            continue
        v = rng.choice([X, Y, Z])
        narrowed = full.store.updated({v: IntDomain.single(rng.choice(full.store[v].values()))})
        rest = [p for j, p in enumerate(props) if j not in full.dead]
        with_all, without = run_fixpoint(narrowed, props), run_fixpoint(narrowed, rest)
        assert with_all.failed == without.failed
        assert with_all.failed or with_all.store == without.store
        checked += 1
    assert checked > 20


def test_engine_restarts_from_changed_variables():
    props = [P.max_ternary(X, Y, Z), P.linear_eq_unit([X, Y], 5)]
    eng = Engine(props)
    root = eng.run(store(x=range(0, 6), y=range(0, 6), z=range(0, 9)))
    narrowed = root.store.updated({X: IntDomain.single(1)})
    assert eng.run(narrowed, changed=[X]).store == run_fixpoint(narrowed, props).store


def test_event_set_checks():
    u = Universe(ints=(0, 1, 2, 3))
    assert check_event_set(P.max_ternary(X, Y, Z), u, es=(BOUNDS,) * 3).verdict
    assert check_event_set(P.max_ternary(X, Y, Z), u, es=(EventKind.DMC,) * 3).verdict
    lin = P.linear_eq_unit([X, Y], 3)
    rep = check_event_set(lin, u, es=(EventKind.FIX, EventKind.FIX))
    assert rep.verdict is False and rep.witness


def test_random_schedules_agree():
    props = [P.max_ternary(X, Y, Z), P.linear_eq_unit([X, Y, Z], 6), P.distinct([X, Y, Z])]
    s = store(x=range(0, 5), y=range(1, 4), z=range(0, 5))
    base = run_fixpoint(s, props)
    for seed in range(20):
        assert run_fixpoint(s, props, rng=random.Random(seed)).store == base.store
