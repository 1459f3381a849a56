from __future__ import annotations

import pytest

from viewprop import propagators as P
from viewprop import views as V
from viewprop.derive import Bind, ViewFamily
from viewprop.domains import IntDomain, Sort, Universe, VarId
from viewprop.errors import UsageError
from viewprop.kernel import Level, Propagator, Status
from viewprop.oracle import (
    DerivedCase,
    associated_constraint,
    check_complete,
    check_contract,
    check_idempotence_subsumption,
    check_table1,
    check_theorems,
    dom_propagator_result,
    iter_stores,
)

X, Y, Z = (VarId(i, Sort.INT, n) for i, n in enumerate("xyz"))
U = Universe(ints=(0, 1, 2, 3))


class Expanding(Propagator):
    name = "expanding"

    def filter(self, doms):
        x, y = doms
        return (x | IntDomain.single(0), y), Status.FIXPOINT


class NonMonotone(Propagator):
    """Prunes only on full domains."""

    name = "nonmonotone"

    def filter(self, doms):
        x, y = doms
        if x.size == 4:
            return (x.remove(x.min), y), Status.FIXPOINT
        return (x, y), Status.FIXPOINT


def test_contract_catches_expansion():
    rep = check_contract(Expanding((X, Y)), U)
    assert rep.verdict is False
    assert "not contracting" in rep.note


def test_contract_catches_non_monotone():
    rep = check_contract(NonMonotone((X, Y)), U)
    assert rep.verdict is False
    assert "monotone" in rep.note


def test_levels_of_max():
    p = P.max_ternary(X, Y, Z)
    assert check_complete(p, level=Level.BOUNDS_Z, universe=U)
    # bounds(Z) does not reach domain completeness
    assert check_complete(p, level=Level.DOMAIN, universe=U).verdict is False


def test_weak_level_rejects_a_bad_acceptance():
    p = P.max_ternary(X, Y, Z)
    wrong = associated_constraint(P.eq(X, Y).with_vars((X, Y)), U)
    from viewprop.domains import ExtensionalConstraint

    c = ExtensionalConstraint.of((X, Y, Z), [(a, b, a) for a, b in wrong.tuples])
    assert check_complete(p, c, Level.WEAK, universe=U).verdict is False


def test_bounds_r_refused_without_relaxation():
    with pytest.raises(UsageError):
        check_complete(P.distinct([X, Y], "weak"), level=Level.BOUNDS_R, universe=U)


def test_dom_propagator_result():
    c = associated_constraint(P.eq(X, Y), U)
    d = (IntDomain.of({0, 1, 2}), IntDomain.of({2, 3}))
    assert dom_propagator_result(c, d) == (IntDomain.single(2), IntDomain.single(2))


def test_iter_stores_samples_above_budget():
    space = [[1, 2, 3]] * 10
    stores, mode, total = iter_stores(space, 100, seed=3)
    assert mode != "exhaustive"
    again, _, _ = iter_stores(space, 100, seed=3)
    assert list(stores) == list(again)
    assert total == 100


def test_theorems_on_offset_max():
    case = DerivedCase(P.max_ternary(X, Y, Z), ViewFamily.of(Bind(X, V.offset(1)), Y, Z), U)
    for rep in check_theorems(case):
        assert rep.verdict, rep.line()


def test_inheritance_check_on_scaled_linear():
    fam = ViewFamily.of(Bind(X, V.scale(2)), Y)
    rep = check_table1(P.linear_eq_unit([X, Y], 4), fam, Universe(ints=range(-1, 5)))
    assert rep.verdict
    assert rep.details["expected"] == "boundsR"


def test_subsumption_check_passes_on_card():
    b = [VarId(i, Sort.BOOL, f"b{i}") for i in range(3)]
    case = DerivedCase(P.bool_card_geq(b, 2), ViewFamily.uniform(b, V.bool_neg()), U)
    idem, sub = check_idempotence_subsumption(case)
    assert idem.verdict and sub.verdict
