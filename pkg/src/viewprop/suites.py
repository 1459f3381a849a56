"""Verification suites over the propagator catalog and the view matrix.

Each suite returns a list of :class:`CheckReport` in a fixed order, so a
given seed always produces the same report.
"""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from . import propagators as P
from . import views as V
from .decompose import check_decomposition_equiv
from .derive import Bind, ViewFamily, derive
from .domains import DomainStore, ExtensionalConstraint, IntDomain, Sort, Universe, Value, VarId, encode_domains
from .errors import UsageError
from .kernel import EventKind, Level, Propagator, check_event_set, doms_subset, run_fixpoint
from .oracle import (
    DEFAULT_BUDGET,
    DerivedCase,
    check_complete,
    check_contract,
    check_equals_dom,
    check_idempotence_subsumption,
    check_levels,
    check_table1,
    check_theorems,
    check_view_lemmas,
    expected_result,
    relaxed_expected,
)
from .report import CheckReport

SET_U = (1, 2, 3)


def _vars(sorts: Sequence[Sort], names: str = "xyzwuv") -> list[VarId]:
    return [VarId(i, s, names[i]) for i, s in enumerate(sorts)]


# ------------------------------------------------------------- the matrix


@dataclass
class BaseSpec:
    key: str
    sorts: tuple[Sort, ...]
    build: Callable[[Sequence[VarId]], Propagator]
    constant: tuple[int, Value]  # position and value for the constants family
    positive: bool = False

    def make(self, vars: Sequence[VarId] | None = None) -> Propagator:
        return self.build(vars or _vars(self.sorts))


I, B, S = Sort.INT, Sort.BOOL, Sort.SET

BASES: list[BaseSpec] = [
    BaseSpec("eq", (I, I), lambda v: P.eq(*v), (1, 2)),
    BaseSpec("max", (I, I, I), lambda v: P.max_ternary(*v), (2, 2)),
    BaseSpec("linear", (I, I, I), lambda v: P.linear_eq_unit(v, 4), (2, 1)),
    BaseSpec("linear_boundsD", (I, I, I), lambda v: P.linear_eq_unit(v, 4, "boundsD"), (2, 1)),
    BaseSpec("linear_domain", (I, I, I), lambda v: P.linear_eq_unit(v, 4, "domain"), (2, 1)),
    BaseSpec("linear_neq", (I, I), lambda v: P.linear_neq_unit(v, 3), (1, 1)),
    BaseSpec("distinct", (I, I, I), lambda v: P.distinct(v), (2, 1)),
    BaseSpec("element", (I, I), lambda v: P.element_vals((2, 0, 3, 2), *v), (0, 2)),
    BaseSpec("mult", (I, I, I), lambda v: P.mult_ppp(*v), (2, 6), positive=True),
    BaseSpec("reified_eq", (I, I, B), lambda v: P.reified_eq(*v), (1, 2)),
    BaseSpec("card_geq", (B, B, B), lambda v: P.bool_card_geq(v, 2), (2, 1)),
    BaseSpec("or", (B, B, B), lambda v: P.bool_or_n(v[:-1], v[-1]), (2, 1)),
    BaseSpec("eqv", (B, B, B), lambda v: P.bool_eqv(*v), (2, 1)),
    BaseSpec("intersect", (S, S, S), lambda v: P.set_intersect(*v), (2, frozenset())),
    BaseSpec("subset", (S, S), lambda v: P.subset(*v), (1, frozenset(SET_U))),
]

INT_VIEWS: list[tuple[str, V.View]] = [
    ("identity", V.identity()),
    ("minus", V.minus()),
    ("offset(-3)", V.offset(-3)),
    ("offset(1)", V.offset(1)),
    ("offset(5)", V.offset(5)),
    ("scale(2)", V.scale(2)),
    ("scale(3)", V.scale(3)),
    ("scale(-2)", V.scale(-2)),
    ("offset(2)∘minus", V.compose(V.offset(2), V.minus())),
]
BOOL_VIEWS = [("identity", V.identity(Sort.BOOL)), ("bool_neg", V.bool_neg())]
SET_VIEWS = [("identity", V.identity(Sort.SET)), ("complement", V.set_complement(SET_U))]


def _int_values(nfree: int) -> tuple[int, ...]:
    return (0, 1, 2, 3) if nfree >= 3 else (0, 1, 2, 3, 4)


def positive_source(view: V.View, k: int = 4) -> tuple[int, ...]:
    """``k`` consecutive source values whose images are the smallest positive ones."""
    cands = sorted((v for v in range(-64, 65) if view.map(v) >= 1), key=lambda v: view.map(v))[:k]
    return tuple(sorted(cands))


def _identity_for(sort: Sort) -> V.View:
    return V.identity(sort)


def families(spec: BaseSpec) -> list[tuple[str, ViewFamily, Universe]]:
    """Every applicable family for ``spec`` with the universe of its variables."""
    vars = _vars(spec.sorts)
    out = []
    int_pos = [i for i, s in enumerate(spec.sorts) if s is Sort.INT]
    nfree = len(vars)

    def universe(fam: ViewFamily) -> Universe:
        n = len(fam.vars)
        u = Universe(ints=_int_values(n), sets=SET_U)
        if spec.positive:
            for b in fam.binds:
                u = u.with_values(b.var, positive_source(b.view))
        return u

    if int_pos:
        for label, view in INT_VIEWS:
            fam = ViewFamily(tuple(Bind(v, view if v.sort is Sort.INT else _identity_for(v.sort)) for v in vars))
            out.append((label, fam, universe(fam)))
    if any(s is Sort.BOOL for s in spec.sorts):
        for label, view in BOOL_VIEWS[1:] if int_pos else BOOL_VIEWS:
            fam = ViewFamily(tuple(Bind(v, view if v.sort is Sort.BOOL else _identity_for(v.sort)) for v in vars))
            out.append((label, fam, universe(fam)))
    if any(s is Sort.SET for s in spec.sorts):
        for label, view in SET_VIEWS:
            fam = ViewFamily.uniform(vars, view)
            out.append((label, fam, universe(fam)))
    pos, value = spec.constant
    sort = spec.sorts[pos]
    entries = [Bind(v, _identity_for(v.sort)) for v in vars]
    entries[pos] = V.constant(value, sort)
    fam = ViewFamily(tuple(entries))
    out.append((f"const({_fmt(value)})@{pos}", fam, universe(fam)))
    assert nfree <= 3
    return out


def _fmt(v: Value) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    return str(v)


def base_universe(spec: BaseSpec) -> Universe:
    if spec.positive:
        return Universe(ints=(1, 2, 3, 4))
    return Universe(ints=_int_values(len(spec.sorts)), sets=SET_U)


# ------------------------------------------------------------------ suites


def suite_contracts(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    """Contract and declared strength (plus every weaker level) of each base."""
    out = []
    for spec in BASES:
        p = spec.make()
        u = base_universe(spec)
        out.append(check_contract(p, u, budget=budget, seed=seed, name=f"contract:{spec.key}"))
        for rep in check_levels(p, u, budget=budget, seed=seed):
            rep.name = f"complete:{spec.key}:{rep.name.split(':')[1]}"
            out.append(rep)
    x, y, z, w = _vars((I, I, I, I))
    weak = P.distinct([x, y, z, w], "weak")
    u = Universe(ints=(0, 1, 2))
    out.append(check_contract(weak, u, budget=budget, seed=seed, name="contract:distinct_weak"))
    out.append(check_complete(weak, None, Level.WEAK, universe=u, name="complete:distinct_weak:weak"))
    src = (0, 1, 2, 3)
    for label, view in INT_VIEWS[1:]:
        ch = P.view_channel(x, y, view)
        tgt = tuple(sorted({view.map(v) for v in src} | {view.map(0) - 1, view.map(3) + 1}))
        out.append(check_contract(ch, [src, tgt], name=f"contract:channel:{label}"))
        out.append(check_complete(ch, None, Level.DOMAIN, universe=[src, tgt], name=f"complete:channel:{label}:domain"))
    return out


def suite_theorems(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    """Derivation properties over the matrix, idempotence and subsumption,
    the Boolean identities and decomposition equivalence."""
    out = []
    for spec in BASES:
        for label, fam, u in families(spec):
            case = DerivedCase(spec.make(), fam, u, label=f"{spec.key}[{label}]")
            out.extend(check_theorems(case, budget=budget, seed=seed))
    out.extend(idempotence_subsumption_checks(seed, budget))
    out.extend(boolean_identity_checks(budget=budget, seed=seed))
    out.extend(decomposition_checks(seed, budget))
    return out


def idempotence_subsumption_checks(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    out = []
    views = [("identity", V.identity()), ("minus", V.minus()), ("offset(1)", V.offset(1)),
             ("offset(-3)", V.offset(-3)), ("offset(2)∘minus", V.compose(V.offset(2), V.minus()))]
    x, y, z = _vars((I, I, I))
    b = VarId(2, Sort.BOOL, "b")
    for label, view in views:
        fam = ViewFamily.uniform([x, y, z], view)
        u = Universe()
        for v in (x, y, z):
            u = u.with_values(v, positive_source(view))
        case = DerivedCase(P.mult_ppp(x, y, z), fam, u, label=f"mult[{label}]")
        out.extend(check_idempotence_subsumption(case, budget=budget, seed=seed))
        fam = ViewFamily((Bind(x, view), Bind(y, view), Bind(b, V.identity(Sort.BOOL))))
        case = DerivedCase(P.reified_eq(x, y, b), fam, Universe(ints=(0, 1, 2, 3)), label=f"reified_eq[{label}]")
        out.extend(check_idempotence_subsumption(case, budget=budget, seed=seed))
    fam = ViewFamily((Bind(x, V.identity()), Bind(y, V.identity()), Bind(b, V.bool_neg())))
    case = DerivedCase(P.reified_eq(x, y, b), fam, Universe(ints=(0, 1, 2, 3)), label="reified_eq[bool_neg@b]")
    out.extend(check_idempotence_subsumption(case, budget=budget, seed=seed))
    return out


def _bools(n: int) -> list[VarId]:
    return [VarId(i, Sort.BOOL, f"b{i}") for i in range(n)]


def boolean_identity_checks(max_n: int = 6, **kw) -> list[CheckReport]:
    """Derived Boolean propagators equal exact domain consistency for the
    constraint they are meant to implement."""
    out = []
    neg = V.bool_neg()
    u = Universe()
    for n in range(1, max_n + 1):
        xs = _bools(n)
        vals = [(0, 1)] * n
        for c in range(n + 1):
            p = derive(P.bool_card_geq(xs, n - c), ViewFamily.uniform(xs, neg))
            cons = ExtensionalConstraint.from_predicate(xs, vals, lambda *t, c=c: sum(t) <= c)
            out.append(check_equals_dom(p, cons, u, name=f"boolean:card_leq:n={n}:c={c}", **kw))
        ys = _bools(n + 1)
        p = derive(P.bool_or_n(ys[:-1], ys[-1]), ViewFamily.uniform(ys, neg))
        cons = ExtensionalConstraint.from_predicate(ys, [(0, 1)] * (n + 1), lambda *t: int(all(t[:-1])) == t[-1])
        out.append(check_equals_dom(p, cons, u, name=f"boolean:and_from_or:n={n}", **kw))
    x, y, z = _bools(3)
    p = derive(P.bool_eqv(x, y, z), ViewFamily((Bind(x, V.identity(B)), Bind(y, V.identity(B)), Bind(z, neg))))
    cons = ExtensionalConstraint.from_predicate((x, y, z), [(0, 1)] * 3, lambda a, b, c: (a ^ b) == c)
    out.append(check_equals_dom(p, cons, u, name="boolean:xor_from_eqv", **kw))
    return out


def decomposition_pairs() -> list[tuple[str, Propagator, ViewFamily, Universe]]:
    x, y, z = _vars((I, I, I))
    b = VarId(2, Sort.BOOL, "b")
    u3 = Universe(ints=(0, 1, 2, 3))
    u2 = Universe(ints=(0, 1, 2, 3, 4))
    mu = Universe(ints=(-4, -3, -2, -1))
    return [
        ("linear[offset(1),minus,identity]", P.linear_eq_unit([x, y, z], 2),
         ViewFamily.of(Bind(x, V.offset(1)), Bind(y, V.minus()), z), u3),
        ("max[minus]", P.max_ternary(x, y, z), ViewFamily.uniform([x, y, z], V.minus()), u3),
        ("linear[scale(2),scale(3),identity]", P.linear_eq_unit([x, y, z], 6),
         ViewFamily.of(Bind(x, V.scale(2)), Bind(y, V.scale(3)), z), u3),
        ("eq[identity,offset(1)]", P.eq(x, y), ViewFamily.of(x, Bind(y, V.offset(1))), u2),
        ("distinct[offset(0,1,2)]", P.distinct([x, y, z]),
         ViewFamily.of(x, Bind(y, V.offset(1)), Bind(z, V.offset(2))), u3),
        ("element[offset(1),identity]", P.element_vals((2, 0, 3, 2), x, y), ViewFamily.of(Bind(x, V.offset(1)), y), u2),
        ("mult[minus]", P.mult_ppp(x, y, z), ViewFamily.uniform([x, y, z], V.minus()), mu),
        ("reified_eq[identity,identity,bool_neg]", P.reified_eq(x, y, b),
         ViewFamily.of(x, y, Bind(b, V.bool_neg())), u3),
        ("max[identity,identity,const(2)]", P.max_ternary(x, y, z), ViewFamily.of(x, y, V.constant(2)), u2),
    ]


def decomposition_checks(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    return [
        check_decomposition_equiv(p, fam, u, budget=budget, seed=seed, name=f"decompose:{label}")
        for label, p, fam, u in decomposition_pairs()
    ]


# ------------------------------------------------------ inheritance table


PERMUTE = {0: 0, 1: 2, 2: 4, 3: 1, 4: 3}


def table1_cells() -> list[tuple[str, Propagator, ViewFamily, Universe, Universe]]:
    """(cell, base, family, derived universe, base universe) for every cell of
    the inheritance table; the domain row has an extra channeling pair."""
    x, y, z = _vars((I, I, I))
    sets = _vars((S, S, S), "tuv")
    u2 = Universe(ints=(0, 1, 2, 3, 4))
    u3 = Universe(ints=(0, 1, 2, 3))
    perm = V.permute(PERMUTE)
    lin_d = P.linear_eq_unit([x, y, z], 5, "boundsD")
    scaled = derive(P.linear_eq_unit([x, y], 5), ViewFamily.uniform([x, y], V.scale(2)))
    scaled_u = Universe(ints=(0, 1, 2))
    elem = P.element_vals((2, 0, 4, 2), x, y)
    return [
        ("domain/bijective", elem, ViewFamily.of(Bind(x, V.offset(1)), y), u2, u2),
        ("domain/injective", elem, ViewFamily.of(x, Bind(y, V.scale(2))), u2, u2),
        ("domain/arbitrary", elem, ViewFamily.of(x, Bind(y, perm)), u2, u2),
        # {x} ∩ {y} = ∅, that is x != y, through singleton channeling views
        ("domain/arbitrary:singleton", P.set_intersect(*sets),
         ViewFamily((Bind(x, V.singleton()), Bind(y, V.singleton()), V.constant(frozenset(), Sort.SET))),
         Universe(ints=(1, 2, 3)), Universe(sets=SET_U)),
        ("boundsD/bijective", lin_d, ViewFamily.uniform([x, y, z], V.offset(1)), u3, u3),
        ("boundsD/injective", lin_d, ViewFamily.of(Bind(x, V.scale(2)), y, z), u3, u3),
        ("boundsD/arbitrary", lin_d, ViewFamily.of(Bind(x, perm), y, z), u3, u3),
        ("boundsZ/bijective", P.max_ternary(x, y, z), ViewFamily.uniform([x, y, z], V.minus()), u3, u3),
        ("boundsZ/injective", P.linear_eq_unit([x, y], 5), ViewFamily.uniform([x, y], V.scale(2)),
         Universe(ints=(0, 1, 2)), u2),
        ("boundsZ/arbitrary", P.max_ternary(x, y, z), ViewFamily.of(Bind(x, perm), y, z), u3, u3),
        ("boundsR/bijective", scaled, ViewFamily.uniform([x, y], V.minus()), Universe(ints=(-2, -1, 0)), scaled_u),
        ("boundsR/injective", scaled, ViewFamily.uniform([x, y], V.scale(3)), Universe(ints=(0, 1)), scaled_u),
        ("boundsR/arbitrary", scaled, ViewFamily.of(Bind(x, perm), y), Universe(ints=(0, 1, 2, 3, 4)), scaled_u),
    ]


def witness_store() -> tuple[DerivedCase, tuple[IntDomain, IntDomain]]:
    x, y = _vars((I, I))
    case = DerivedCase(P.linear_eq_unit([x, y], 5), ViewFamily.uniform([x, y], V.scale(2)), Universe(ints=(0, 1, 2)),
                       label="linear[scale(2)] 2x+2y=5")
    full = (IntDomain.interval(0, 2), IntDomain.interval(0, 2))
    return case, full


def witness_checks() -> list[CheckReport]:
    """The 2x+2y=5 witness over x,y in 0..2.

    One application leaves a non-failed store although no assignment
    satisfies the constraint: bounds(R) holds there, bounds(Z) and domain
    completeness do not. The second report asks whether propagation to the
    engine's fixpoint also stays non-failed.
    """
    case, full = witness_store()
    dp = case.derived
    r = case.dtable(full)
    none = ExtensionalConstraint.of(dp.vars, ())
    sorts = dp.sorts
    dom_ok = doms_subset(r, expected_result(Level.DOMAIN, none, full, sorts))
    bz_ok = doms_subset(r, expected_result(Level.BOUNDS_Z, none, full, sorts))
    br_ok = doms_subset(r, relaxed_expected(dp.relaxation(), full))
    ok = r is not None and not dom_ok and not bz_ok and br_ok
    enc = "failed" if r is None else encode_domains(dp.vars, r)
    single = CheckReport(
        "table1:witness:single-application", ok, 1,
        witness=None if ok else encode_domains(dp.vars, full),
        details={"result": enc, "domain": dom_ok, "boundsZ": bz_ok, "boundsR": br_ok},
    )
    store = DomainStore(dict(zip(dp.vars, full)))
    res = run_fixpoint(store, [dp])
    fixpoint = CheckReport(
        "table1:witness:non-failed-fixpoint", not res.failed, 1,
        witness=None if not res.failed else store.encode(),
        note=None if not res.failed else "propagation to fixpoint fails: {1,2}x{1,2} -> {1}x{1} -> failed",
        details={"outcome": res.outcome.value, "executions": res.stats.executions},
    )
    return [single, fixpoint]


def suite_table1(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    out = []
    for cell, base, fam, u, bu in table1_cells():
        rep = check_table1(base, fam, u, base_universe=bu, budget=budget, seed=seed, name=f"table1:{cell}")
        out.append(rep)
    out.extend(witness_checks())
    return out


# ------------------------------------------------------------------- lemmas


def shipped_views() -> list[tuple[str, V.View, Sequence[Value]]]:
    ints = tuple(range(5))
    sets = [frozenset(c) for k in range(4) for c in itertools.combinations(SET_U, k)]
    return [
        ("identity", V.identity(), ints),
        ("identity(set)", V.identity(Sort.SET), sets),
        ("bool_neg", V.bool_neg(), (0, 1)),
        *[(label, view, ints) for label, view in INT_VIEWS[1:]],
        ("permute", V.permute(PERMUTE), ints),
        ("complement", V.set_complement(SET_U), sets),
        ("singleton", V.singleton(), ints),
    ]


def suite_lemmas(seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    out = []
    for label, view, values in shipped_views():
        out.extend(check_view_lemmas(view, values, seed=seed, label=label))
    expect = {
        "scale(2)": V.Classification.INTERVAL_INJECTIVE,
        "offset(1)": V.Classification.INTERVAL_BIJECTIVE,
        "minus": V.Classification.INTERVAL_BIJECTIVE,
    }
    for label, view, values in shipped_views():
        if label in expect:
            got = V.classify(view, values)
            out.append(CheckReport(f"lemma:expected-class:{label}", got == expect[label], 1,
                                   witness=None if got == expect[label] else str(got),
                                   details={"expected": str(expect[label]), "verified": str(got)}))
    return out


# ------------------------------------------------------------------- events


def suite_events(seed: int = 0, budget: int = DEFAULT_BUDGET, instances: int = 1000) -> list[CheckReport]:
    out = []
    for spec in BASES:
        p = spec.make()
        out.append(check_event_set(p, base_universe(spec), name=f"events:{spec.key}"))
        for label, fam, u in families(spec):
            if label == "identity":
                continue
            dp = derive(spec.make(), fam)
            out.append(check_event_set(dp, u, name=f"events:{spec.key}[{label}]"))
    # arbitrary views translate to dmc
    x, y, z = _vars((I, I, I))
    dp = derive(P.max_ternary(x, y, z), ViewFamily.of(Bind(x, V.permute(PERMUTE)), y, z))
    out.append(check_event_set(dp, Universe(ints=(0, 1, 2, 3)), name="events:max[permute@x]"))
    s = VarId(1, Sort.SET, "s")
    dp = derive(P.subset(VarId(0, Sort.SET, "t"), s), ViewFamily.of(Bind(x, V.singleton()), s))
    out.append(check_event_set(dp, Universe(ints=(1, 2, 3), sets=SET_U), name="events:subset[singleton@x]"))
    out.append(_negative_event_control())
    out.extend(engine_equivalence(seed, instances))
    return out


def _negative_event_control() -> CheckReport:
    """A linear propagator subscribed only to fix events must be caught."""
    x, y = _vars((I, I))
    p = P.linear_eq_unit([x, y], 4)
    rep = check_event_set(p, Universe(ints=(0, 1, 2, 3, 4)), es=(EventKind.FIX, EventKind.FIX))
    caught = rep.verdict is False
    return CheckReport("events:negative-control:linear-fix-only", caught, rep.instances,
                       witness=None if caught else "no counterexample found",
                       details={"counterexample": rep.witness or ""})


def random_instance(rng: random.Random) -> tuple[DomainStore, list[Propagator]]:
    """Small random model: integer variables and derived catalog propagators."""
    n = rng.randint(3, 5)
    store = DomainStore()
    vs = [store.int_var_of(rng.sample(range(-3, 7), rng.randint(2, 6)), f"v{i}") for i in range(n)]
    views = [V.identity(), V.minus(), V.offset(1), V.offset(-2), V.scale(2), V.scale(-1), V.permute(PERMUTE)]

    def bind(v):
        view = rng.choice(views)
        if isinstance(view, V.Permute) and not store[v] <= IntDomain.interval(0, 4):
            view = V.identity()
        return Bind(v, view)

    props = []
    for _ in range(rng.randint(2, 5)):
        kind = rng.choice(("max", "linear", "linear_neq", "distinct", "element", "eq"))
        pick = rng.sample(vs, 3 if kind in ("max", "distinct", "linear") else 2)
        if kind == "max":
            base = P.max_ternary(*pick)
        elif kind == "linear":
            base = P.linear_eq_unit(pick, rng.randint(-2, 8), rng.choice(("bounds", "boundsD", "domain")))
        elif kind == "linear_neq":
            base = P.linear_neq_unit(pick, rng.randint(-2, 6))
        elif kind == "distinct":
            base = P.distinct(pick)
        elif kind == "element":
            base = P.element_vals([rng.randint(-3, 6) for _ in range(5)], *pick)
        else:
            base = P.eq(*pick)
        props.append(derive(base, ViewFamily(tuple(bind(v) for v in pick))))
    return store, props


def engine_equivalence(seed: int = 0, instances: int = 1000, orders: int = 10) -> list[CheckReport]:
    """Translated event sets reach the same store as waking on every change,
    and random queue orders reach the same store as FIFO."""
    rng = random.Random(seed)
    wake = order = None
    for k in range(instances):
        store, props = random_instance(rng)
        a = run_fixpoint(store, props)
        b = run_fixpoint(store, props, wake_all=True)
        if wake is None and (a.failed != b.failed or (not a.failed and a.store != b.store)):
            wake = CheckReport("events:engine:translated-vs-dmc", False, k + 1, witness=store.encode(),
                               expected=b.store.encode(), actual=a.store.encode())
        if order is None and k < instances // 10:
            for j in range(orders):
                c = run_fixpoint(store, props, rng=random.Random(seed * 7919 + k * 31 + j))
                if a.failed != c.failed or (not a.failed and a.store != c.store):
                    order = CheckReport("events:engine:schedule-independent", False, k + 1, witness=store.encode(),
                                        expected=a.store.encode(), actual=c.store.encode())
                    break
    if wake is None:
        wake = CheckReport("events:engine:translated-vs-dmc", True, instances, mode="sampled")
    if order is None:
        order = CheckReport("events:engine:schedule-independent", True, (instances // 10) * orders, mode="sampled")
    return [wake, order]


SUITES: dict[str, Callable[..., list[CheckReport]]] = {
    "contracts": suite_contracts,
    "theorems": suite_theorems,
    "table1": suite_table1,
    "lemmas": suite_lemmas,
    "events": suite_events,
}


def run_suite(
    name: str, seed: int = 0, budget: int = DEFAULT_BUDGET, timings: dict[str, float] | None = None
) -> list[CheckReport]:
    """Run one suite, or every suite in order for ``all``. Wall-clock seconds
    per suite go into ``timings`` when given; they never enter the reports."""
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}")
    out = []
    for key in SUITES if name == "all" else (name,):
        t0 = time.perf_counter()
        out.extend(SUITES[key](seed=seed, budget=budget))
        if timings is not None:
            timings[key] = time.perf_counter() - t0
    return out


__all__ = ["BASES", "SUITES", "families", "run_suite", "table1_cells", "witness_checks"]

