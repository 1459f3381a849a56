from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from viewprop import views as V
from viewprop.domains import IntDomain, SetDomain, Sort
from viewprop.errors import ContractViolation, UniverseOverflow, UsageError
from viewprop.oracle import check_view_lemmas
from viewprop.views import Classification, Monotonicity

INTS = tuple(range(5))
int_sets = st.frozensets(st.integers(-5, 5), max_size=7)
affine = st.sampled_from([V.minus(), V.offset(3), V.offset(-2), V.scale(2), V.scale(-3), V.linear(2, 1)])


def test_images():
    assert V.scale(2).image(IntDomain.of({1, 2, 3})) == IntDomain.of({2, 4, 6})
    assert V.minus().image(IntDomain.interval(1, 3)) == IntDomain.interval(-3, -1)
    img = V.singleton().image(IntDomain.single(2))
    assert (img.lb, img.ub) == ({2}, {2})


def test_preimages():
    assert V.scale(2).preimage(IntDomain.of({2, 3, 4})) == IntDomain.of({1, 2})
    assert V.bool_neg().preimage(IntDomain.single(0)) == IntDomain.single(1)
    assert V.singleton().preimage(SetDomain((), {1, 2})) == IntDomain.of({1, 2})
    assert V.singleton().preimage(SetDomain({1, 2}, {1, 2})).is_empty()


@given(affine, int_sets)
def test_affine_image_and_preimage_are_pointwise(view, vals):
    d = IntDomain.of(vals)
    assert set(view.image(d)) == {view.map(v) for v in vals}
    assert view.preimage(view.image(d)) == d
    assert set(view.preimage(d)) == {v for v in range(-40, 41) if view.map(v) in vals}


def test_composition():
    diff = V.compose(V.offset(4), V.minus())
    assert [diff.map(v) for v in (0, 1, 5)] == [4, 3, -1]
    mm = V.compose(V.minus(), V.minus())
    for vals in ({1, 2}, {-3, 0, 4}, set()):
        assert mm.image(IntDomain.of(vals)) == IntDomain.of(vals)
    assert V.compose(V.identity(), V.scale(2)) == V.scale(2)
    with pytest.raises(UsageError):
        V.compose(V.set_complement((1, 2)), V.minus())


def test_monotonicity_of_compositions():
    assert V.compose(V.minus(), V.minus()).monotonicity is Monotonicity.INCREASING
    assert V.compose(V.offset(2), V.minus()).monotonicity is Monotonicity.DECREASING
    assert V.compose(V.permute({0: 1, 1: 0}), V.offset(0)).monotonicity is Monotonicity.NONE


def test_classification():
    assert V.classify(V.scale(2), INTS) is Classification.INTERVAL_INJECTIVE
    assert V.classify(V.offset(3), INTS) is Classification.INTERVAL_BIJECTIVE
    assert V.classify(V.scale(-1), INTS) is Classification.INTERVAL_BIJECTIVE
    assert V.classify(V.minus(), INTS) is Classification.INTERVAL_BIJECTIVE
    assert V.classify(V.permute({0: 0, 1: 2, 2: 1}), (0, 1, 2)) is Classification.ARBITRARY
    assert V.interval_bijective_witness(V.scale(2), INTS) is not None


def test_overstated_classification_is_rejected():
    class Liar(V.Permute):
        classification = Classification.INTERVAL_BIJECTIVE

    with pytest.raises(ContractViolation):
        V.classify(Liar({0: 2, 1: 0, 2: 1}), (0, 1, 2))


def test_overflow_and_bad_views():
    with pytest.raises(UniverseOverflow):
        V.scale(10).image(IntDomain.interval(0, 5), universe=(-20, 20))
    with pytest.raises(UsageError):
        V.scale(0)
    with pytest.raises(UsageError):
        V.permute({0: 1, 1: 1})
    with pytest.raises(UniverseOverflow):
        V.set_complement((1, 2)).image(SetDomain((), {1, 2, 3}))


def test_set_complement_roundtrip():
    comp = V.set_complement((1, 2, 3))
    d = SetDomain({1}, {1, 2})
    img = comp.image(d)
    assert (img.lb, img.ub) == ({3}, {2, 3})
    assert comp.preimage(img) == d


@pytest.mark.parametrize(
    "view,values",
    [(V.offset(3), INTS), (V.identity(), INTS), (V.minus(), INTS), (V.bool_neg(), (0, 1))],
)
def test_lemmas_hold_for_bijective_views(view, values):
    reports = check_view_lemmas(view, values, samples=60)
    assert all(r.verdict for r in reports), [r.line() for r in reports if not r.verdict]


def test_scale_two_lemmas_and_bijectivity_witness():
    reports = {r.name.split(":")[1]: r for r in check_view_lemmas(V.scale(2), INTS, samples=60)}
    assert reports["dom-injective"].verdict and reports["intersection"].verdict
    cls = reports["classification"]
    assert cls.verdict and cls.details["verified"] == "interval-injective"
    assert "bijective_witness" in cls.details


def test_constants():
    assert V.constant(frozenset()).sort is Sort.SET
    assert V.constant(3).domain() == IntDomain.single(3)
