"""Brute-force ground truth: associated constraints, completeness checks and
the verifiers for derived propagators.

Everything here enumerates small universes. Above the store budget a check
falls back to seeded random sampling and says so in its report.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction

from .derive import ViewFamily, derive, inherited_level
from .domains import (
    DEFAULT_ENUM_CAP,
    Domain,
    ExtensionalConstraint,
    IntDomain,
    Sort,
    UniverseLike,
    Value,
    VarId,
    covering_substores,
    domain_of_values,
    domain_space,
    encode_domains,
    fixed_domain,
    hull_of_values,
    position_values,
    subdomains,
)
from .errors import CapExceeded, ContractViolation, UsageError
from .kernel import Level, Propagator, ResultTable, Status, doms_subset, normalize, store_space
from .report import CheckReport
from .views import Classification, Const, View, classify, interval_bijective_witness

CompletenessLevel = Level

DEFAULT_BUDGET = 2_000_000
SAMPLE_SIZE = 20_000
SUBSUMPTION_CAP = 20_000


# ------------------------------------------------------------ enumeration


def iter_stores(
    space: Sequence[Sequence[Domain]], budget: int = DEFAULT_BUDGET, seed: int = 0
) -> tuple[Iterable[tuple[Domain, ...]], str, int]:
    """All stores of ``space`` if there are at most ``budget``, else a sample."""
    total = math.prod(len(s) for s in space)
    if total <= budget:
        return itertools.product(*space), "exhaustive", total
    rng = random.Random(seed)
    n = min(SAMPLE_SIZE, budget)
    sample = [tuple(rng.choice(s) for s in space) for _ in range(n)]
    return sample, "sampled", n


def singleton_doms(sorts: Sequence[Sort], values: Sequence[Value]) -> tuple[Domain, ...]:
    return tuple(fixed_domain(s, v) for s, v in zip(sorts, values))


def accepts(p: Propagator, values: Sequence[Value]) -> bool:
    """Whether ``p`` leaves the single-assignment store ``values`` unchanged."""
    doms = singleton_doms(p.sorts, values)
    out, _ = p.filter(doms)
    return normalize(out) == doms


def associated_constraint(
    p: Propagator, universe: UniverseLike, cap: int = DEFAULT_ENUM_CAP
) -> ExtensionalConstraint:
    """The assignments ``p`` accepts as single-assignment stores."""
    vals = position_values(p.vars, universe)
    size = math.prod(len(v) for v in vals)
    if size > cap:
        raise CapExceeded(size, cap)
    return ExtensionalConstraint.of(p.vars, (t for t in itertools.product(*vals) if accepts(p, t)))


def preimage_constraint(
    c: ExtensionalConstraint, family: ViewFamily, vars: Sequence[VarId], universe: UniverseLike
) -> ExtensionalConstraint:
    """``{a : image(a) ∈ c}`` for assignments ``a`` over ``vars``."""
    vals = position_values(vars, universe)
    index = {v: i for i, v in enumerate(vars)}
    tuples = []
    for t in itertools.product(*vals):
        img = []
        for e in family:
            if isinstance(e, Const):
                img.append(e.value)
            else:
                img.append(e.view.map(t[index[e.var]]))
        if tuple(img) in c.tuples:
            tuples.append(t)
    return ExtensionalConstraint.of(vars, tuples)


def image_universe(family: ViewFamily, vars: Sequence[VarId], universe: UniverseLike) -> list[tuple[Value, ...]]:
    """Per base position, the image of the source universe (or the constant)."""
    vals = dict(zip(vars, position_values(vars, universe)))
    out = []
    for e in family:
        if isinstance(e, Const):
            out.append((e.value,))
        else:
            out.append(tuple(dict.fromkeys(e.view.map(v) for v in vals[e.var])))
    return out


# --------------------------------------------------------------- contract


def failure_report(name, count, vars, d, note, expected=None, actual=None, mode="exhaustive", **details):
    enc = lambda x: "failed" if x is None else encode_domains(vars, x)  # noqa: E731
    return CheckReport(
        name,
        False,
        count,
        mode=mode,
        witness=enc(d),
        expected=None if expected is None and actual is None else enc(expected),
        actual=None if actual is None and expected is None else enc(actual),
        note=note,
        details=details,
        counterexample=(d, expected, actual),
    )


def check_contract(
    p: Propagator,
    universe: UniverseLike,
    *,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    name: str | None = None,
    table: ResultTable | None = None,
) -> CheckReport:
    """Contraction and monotonicity of ``p`` on every store of the universe.

    Monotonicity is checked on pairs that differ by one value; all other
    pairs follow by transitivity along chains of such pairs.
    """
    name = name or f"contract:{p!r}"
    table = table or ResultTable(p)
    stores, mode, _ = iter_stores(store_space(p.vars, universe), budget, seed)
    count = 0
    for d in stores:
        count += 1
        r = table(d)
        if not doms_subset(r, d):
            return failure_report(name, count, p.vars, d, "not contracting", d, r, mode)
        for pos, sub in covering_substores(d):
            if sub.is_empty():
                continue
            d2 = d[:pos] + (sub,) + d[pos + 1 :]
            r2 = table(d2)
            if not doms_subset(r2, r):
                return failure_report(name, count, p.vars, d2, f"not monotone below {encode_domains(p.vars, d)}", r, r2, mode)
    return CheckReport(name, True, count, mode=mode)


# ----------------------------------------------------------- completeness


def _project(tuples: Iterable[tuple], sorts: Sequence[Sort], closure) -> tuple[Domain, ...] | None:
    cols = None
    for t in tuples:
        if cols is None:
            cols = [[] for _ in t]
        for col, v in zip(cols, t):
            col.append(v)
    if cols is None:
        return None
    return tuple(closure(s, col) for s, col in zip(sorts, cols))


def _inside(t: tuple, doms: Sequence[Domain]) -> bool:
    return all(v in d for v, d in zip(t, doms))


def expected_result(level: Level, c: ExtensionalConstraint, d: Sequence[Domain], sorts: Sequence[Sort]):
    """The weakest result allowed at ``level`` on store ``d`` (None: must fail)."""
    if level is Level.DOMAIN:
        return _project((t for t in c if _inside(t, d)), sorts, domain_of_values)
    if level is Level.BOUNDS_D:
        return _project((t for t in c if _inside(t, d)), sorts, hull_of_values)
    if level is Level.BOUNDS_Z:
        hull = [x.hull() for x in d]
        return _project((t for t in c if _inside(t, hull)), sorts, hull_of_values)
    raise UsageError(f"no extensional expectation at level {level}")


def relaxed_expected(relax, d: Sequence[Domain]):
    box = [(Fraction(x.min), Fraction(x.max)) for x in d]
    proj = relax(box)
    if proj is None:
        return None
    return tuple(IntDomain.interval(math.ceil(lo), math.floor(hi)) for lo, hi in proj)


def check_complete(
    p: Propagator,
    c: ExtensionalConstraint | None = None,
    level: Level | None = None,
    *,
    universe: UniverseLike,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    name: str | None = None,
    table: ResultTable | None = None,
) -> CheckReport:
    """Verify that ``p`` is complete for ``c`` at ``level`` on the universe.

    ``c`` defaults to the associated constraint of ``p``. The bounds(R)
    level uses the exact rational relaxation of ``p`` and is refused for
    propagators without one.
    """
    level = p.level if level is None else level
    name = name or f"complete:{level}:{p!r}"
    table = table or ResultTable(p)
    relax = None
    if level is Level.BOUNDS_R:
        relax = p.relaxation()
        if relax is None:
            raise UsageError(f"{p!r} has no real relaxation; bounds(R) cannot be checked")
        if any(s is Sort.SET for s in p.sorts):
            raise UsageError("bounds(R) is defined for integer variables only")
    if c is None and level is not Level.BOUNDS_R:
        c = associated_constraint(p, universe)
    sorts = p.sorts
    if level is Level.WEAK:
        vals = position_values(p.vars, universe)
        count = 0
        for t in itertools.product(*vals):
            count += 1
            if t not in c.tuples and accepts(p, t):
                d = singleton_doms(sorts, t)
                return failure_report(name, count, p.vars, d, "accepts an assignment outside the constraint", None, d)
        return CheckReport(name, True, count)
    stores, mode, _ = iter_stores(store_space(p.vars, universe), budget, seed)
    count = 0
    for d in stores:
        count += 1
        r = table(d)
        if r is None:
            continue
        exp = relaxed_expected(relax, d) if relax is not None else expected_result(level, c, d, sorts)
        if not doms_subset(r, exp):
            return failure_report(name, count, p.vars, d, f"result exceeds {level} bound", exp, r, mode)
    return CheckReport(name, True, count, mode=mode)


def check_levels(p: Propagator, universe: UniverseLike, **kw) -> list[CheckReport]:
    """Check ``p`` at its declared level and every weaker one it can be checked at."""
    c = associated_constraint(p, universe)
    table = ResultTable(p)
    out = []
    for level in sorted(Level, reverse=True):
        if level > p.level:
            continue
        if level is Level.BOUNDS_R and (p.relaxation() is None or Sort.SET in p.sorts):
            continue
        out.append(check_complete(p, c, level, universe=universe, table=table, **kw))
    return out


# ---------------------------------------------------------- derived checks


class DerivedCase:
    """A base propagator, a family and the universe of the derived variables."""

    def __init__(self, base: Propagator, family: ViewFamily, universe: UniverseLike, label: str = "") -> None:
        self.base = base
        self.family = family
        self.derived = derive(base, family)
        self.universe = universe
        self.label = label or repr(self.derived)
        self.dvals = position_values(self.derived.vars, universe)
        self.ivals = image_universe(self.derived.family, self.derived.vars, universe)
        self.dtable = ResultTable(self.derived)
        self.btable = ResultTable(self.base)

    def image(self, d: Sequence[Domain]) -> tuple[Domain, ...]:
        return self.derived.image(d)

    def base_constraint(self) -> ExtensionalConstraint:
        return associated_constraint(self.base, self.ivals)

    def stores(self, budget: int = DEFAULT_BUDGET, seed: int = 0):
        return iter_stores(store_space(self.derived.vars, self.universe), budget, seed)


def check_associated(case: DerivedCase, name: str | None = None) -> CheckReport:
    """The derived propagator implements the preimage of the base constraint."""
    name = name or f"thm2:{case.label}"
    dp = case.derived
    expected = preimage_constraint(case.base_constraint(), dp.family, dp.vars, case.universe)
    actual = associated_constraint(dp, case.universe)
    n = math.prod(len(v) for v in case.dvals)
    if expected.tuples == actual.tuples:
        return CheckReport(name, True, n)
    diff = sorted(expected.tuples ^ actual.tuples, key=repr)[0]
    d = singleton_doms(dp.sorts, diff)
    note = "derived accepts" if diff in actual.tuples else "derived rejects"
    return failure_report(name, n, dp.vars, d, f"{note} an assignment against the base constraint")


def check_contraction_preserved(case: DerivedCase, *, budget=DEFAULT_BUDGET, seed=0, name=None) -> CheckReport:
    """Whenever the base contracts the image of ``d``, the derived propagator contracts ``d``."""
    name = name or f"thm3:{case.label}"
    stores, mode, _ = case.stores(budget, seed)
    count = 0
    for d in stores:
        count += 1
        img = case.image(d)
        if case.btable(img) != img and case.dtable(d) == d:
            return failure_report(name, count, case.derived.vars, d, "base contracts the image, derived does not", mode=mode)
    return CheckReport(name, True, count, mode=mode)


def check_domain_inherited(case: DerivedCase, *, budget=DEFAULT_BUDGET, seed=0, name=None) -> CheckReport:
    """A domain complete base yields a domain complete derived propagator."""
    name = name or f"thm4:{case.label}"
    base_c = case.base_constraint()
    premise = check_complete(case.base, base_c, Level.DOMAIN, universe=case.ivals, budget=budget, seed=seed,
                             table=case.btable)
    if not premise:
        return CheckReport(name, None, premise.instances, note="base is not domain complete on the image universe")
    dp = case.derived
    c = preimage_constraint(base_c, dp.family, dp.vars, case.universe)
    rep = check_complete(dp, c, Level.DOMAIN, universe=case.universe, budget=budget, seed=seed,
                         table=case.dtable, name=name)
    return rep


def check_theorems(case: DerivedCase, *, budget=DEFAULT_BUDGET, seed=0) -> list[CheckReport]:
    out = [
        check_contract(case.derived, case.universe, budget=budget, seed=seed, name=f"thm1:{case.label}",
                       table=case.dtable),
        check_associated(case),
        check_contraction_preserved(case, budget=budget, seed=seed),
    ]
    if case.base.level is Level.DOMAIN:
        out.append(check_domain_inherited(case, budget=budget, seed=seed))
    return out


# ------------------------------------------------------ inheritance table


def family_classification(family: ViewFamily, universe_of) -> Classification:
    """Verified classification of a family: the weakest verified view class."""
    out = Classification.INTERVAL_BIJECTIVE
    for b in family.binds:
        out = min(out, classify(b.view, universe_of(b)))
    return out


def check_table1(
    base: Propagator,
    family: ViewFamily,
    universe: UniverseLike,
    *,
    base_universe: UniverseLike | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    name: str | None = None,
) -> CheckReport:
    """Verify the derived propagator reaches the strength the inheritance rule predicts.

    The base's declared level is verified first on ``base_universe``; the
    family's classification is verified on the source universe.
    """
    case = DerivedCase(base, family, universe)
    name = name or f"table1:{base.level}x{family.classification}:{case.label}"
    if base_universe is not None:
        pre = check_complete(base, None, base.level, universe=base_universe, budget=budget, seed=seed)
        if not pre:
            return CheckReport(name, False, pre.instances, witness=pre.witness,
                               note=f"base not {base.level} complete: {pre.note}")
    dvals = dict(zip(case.derived.vars, case.dvals))
    cls = family_classification(case.derived.family, lambda b: dvals[b.var])
    expected = inherited_level(base.level, cls)
    c = associated_constraint(case.derived, universe)
    rep = check_complete(case.derived, c, expected, universe=universe, budget=budget, seed=seed,
                         table=case.dtable, name=name)
    rep.details.update(base=str(base.level), views=str(cls), expected=str(expected))
    return rep


# ------------------------------------------------------------------- lemmas


def _random_constraint(rng: random.Random, cols: Sequence[Sequence[Value]], density: float) -> set[tuple]:
    return {t for t in itertools.product(*cols) if rng.random() < density}


def check_view_lemmas(
    view: View,
    values: Sequence[Value],
    *,
    samples: int = 200,
    seed: int = 0,
    label: str | None = None,
) -> list[CheckReport]:
    """Injectivity, round trip, dom-injectivity, intersection and classification."""
    label = label or repr(view)
    values = list(values)
    dummy = [_pseudo_var(view.source, 0)]
    out = []

    seen: dict = {}
    bad = None
    for v in values:
        w = view.map(v)
        if w in seen or view.unmap(w) != v:
            bad = v
            break
        seen[w] = v
    if bad is None:
        out.append(CheckReport(f"lemma:injective:{label}", True, len(values)))
    else:
        d = (fixed_domain(view.source, bad),)
        out.append(failure_report(f"lemma:injective:{label}", len(values), dummy, d, "map is not injective"))

    doms = list(_source_domains(view, values))
    rep = CheckReport(f"lemma:roundtrip:{label}", True, len(doms))
    for d in doms:
        if view.preimage(view.image(d)) != d or (view.exact_image and _size(view.image(d)) != _size(d)):
            rep = failure_report(f"lemma:roundtrip:{label}", len(doms), dummy, (d,), "preimage(image(d)) != d")
            break
    out.append(rep)

    # constraints over two positions both read through the view
    rng = random.Random(seed)
    images = [view.map(v) for v in values]
    targets = _target_values(view, images)
    name = f"lemma:dom-injective:{label}"
    rep = CheckReport(name, True, samples, mode="sampled")
    for _ in range(samples):
        c = _random_constraint(rng, (images, images), rng.choice((0.2, 0.5, 0.8)))
        lhs = _preimage_store(view, _project(c, (view.target,) * 2, domain_of_values))
        pre = [(view.unmap(a), view.unmap(b)) for a, b in c]
        rhs = _project(pre, (view.source,) * 2, domain_of_values)
        if lhs != rhs:
            rep = failure_report(name, samples, dummy * 2, rhs, f"preimage of dom differs on {sorted(c, key=repr)}",
                        rhs, lhs, mode="sampled")
            break
    out.append(rep)

    name = f"lemma:intersection:{label}"
    rep = CheckReport(name, True, samples, mode="sampled")
    for _ in range(samples):
        c1 = _random_constraint(rng, (targets, targets), 0.5)
        c2 = _random_constraint(rng, (targets, targets), 0.5)
        lhs = _preimage_tuples(view, c1 & c2)
        rhs = _preimage_tuples(view, c1) & _preimage_tuples(view, c2)
        if lhs != rhs:
            t = sorted(lhs ^ rhs, key=repr)[0]
            d = tuple(fixed_domain(view.source, v) for v in t)
            rep = failure_report(name, samples, dummy * 2, d, "preimage does not commute with intersection", mode="sampled")
            break
    out.append(rep)

    name = f"lemma:classification:{label}"
    try:
        verified = classify(view, values)
    except ContractViolation as exc:  # declared class too strong
        out.append(CheckReport(name, False, 1, witness=label, note=str(exc)))
        return out
    rep = CheckReport(name, verified == view.classification, 1, witness=None if verified == view.classification
                      else label, details={"declared": str(view.classification), "verified": str(verified)})
    if verified < Classification.INTERVAL_BIJECTIVE:
        w = interval_bijective_witness(view, values)
        if w is not None:
            rep.details["bijective_witness"] = repr(w)
    out.append(rep)
    return out


def _pseudo_var(sort: Sort, i: int) -> VarId:
    return VarId(i, sort, f"v{i}")


def _size(d: Domain) -> int:
    return d.size


def _source_domains(view: View, values: Sequence[Value]) -> Iterator[Domain]:
    yield from domain_space(view.source, values)


def _target_values(view: View, images: Sequence[Value]) -> list[Value]:
    """Image values plus non-image neighbours, so constraints need not lie inside the image."""
    if view.target is Sort.SET:
        u = sorted(frozenset().union(*images) | {max(frozenset().union(*images), default=0) + 1})
        return [frozenset(c) for k in range(len(u) + 1) for c in itertools.combinations(u, k)]
    lo, hi = min(images), max(images)
    return list(range(lo - 1, hi + 2))


def _preimage_store(view: View, doms):
    if doms is None:
        return None
    return tuple(view.preimage(d) for d in doms)


def _preimage_tuples(view: View, c: set[tuple]) -> set[tuple]:
    out = set()
    for t in c:
        pre = tuple(view.unmap(w) for w in t)
        if all(v is not None for v in pre):
            out.add(pre)
    return out


# -------------------------------------------------- idempotence/subsumption


class SubsumptionOracle:
    """Decides subsumption by brute force over sub-stores, memoized.

    ``d`` is subsumed iff it is a fixpoint and every store obtained by
    removing one value is subsumed; by induction this covers every
    sub-store.
    """

    def __init__(self, table: ResultTable, cap: int = SUBSUMPTION_CAP) -> None:
        self.table = table
        self.cap = cap
        self.memo: dict[tuple, bool] = {}

    def substore_count(self, d: Sequence[Domain]) -> int:
        return math.prod(sum(1 for _ in subdomains(x)) for x in d)

    def __call__(self, d: tuple[Domain, ...]) -> bool:
        hit = self.memo.get(d)
        if hit is not None:
            return hit
        if any(x.is_empty() for x in d):
            res = True
        elif self.table(d) != d:
            res = False
        else:
            res = True
            for pos, sub in covering_substores(d):
                if not self(d[:pos] + (sub,) + d[pos + 1 :]):
                    res = False
                    break
        self.memo[d] = res
        return res


def check_idempotence_subsumption(
    case: DerivedCase, *, budget: int = DEFAULT_BUDGET, seed: int = 0
) -> list[CheckReport]:
    """Idempotence transfer and the subsumption biconditional, exhaustively.

    Idempotence transfers at ``d`` when the base is idempotent at the image
    of ``d`` and the derived result maps back onto the base result; stores
    where the views drop values of the base result are counted, not
    checked. A reported SUBSUMED status must hold for the returned store.
    """
    dp = case.derived
    stores, mode, _ = case.stores(budget, seed)
    stores = list(stores)
    base_sub = SubsumptionOracle(case.btable)
    der_sub = SubsumptionOracle(case.dtable)
    idem_name = f"idempotence:{case.label}"
    sub_name = f"subsumption:{case.label}"
    idem: CheckReport | None = None
    sub: CheckReport | None = None
    checked = skipped = refused = 0
    for d in stores:
        img = case.image(d)
        b = case.btable(img)
        r = case.dtable(d)
        if idem is None and b is not None and case.btable(b) == b:
            if r is None or case.image(r) == b:
                checked += 1
                if r is not None and case.dtable(r) != r:
                    idem = failure_report(idem_name, len(stores), dp.vars, d, "base idempotent on the image, derived not",
                                 r, case.dtable(r), mode)
            else:
                skipped += 1
        if sub is not None:
            continue
        if der_sub.substore_count(d) > SUBSUMPTION_CAP:
            refused += 1
            continue
        bs, ds = base_sub(img), der_sub(d)
        if bs != ds:
            sub = failure_report(sub_name, len(stores), dp.vars, d,
                        f"base subsumed={bs} on the image but derived subsumed={ds}", mode=mode)
        elif r is not None and case.dtable.run(d)[1] is Status.SUBSUMED and not der_sub(r):
            sub = failure_report(sub_name, len(stores), dp.vars, d, "derived reports SUBSUMED but its result is not",
                                 mode=mode)
        elif b is not None and case.btable.run(img)[1] is Status.SUBSUMED and not base_sub(b):
            sub = failure_report(sub_name, len(stores), dp.vars, d,
                                 "base reports SUBSUMED on the image but its result is not", mode=mode)
    if idem is None:
        idem = CheckReport(idem_name, True, len(stores), mode=mode,
                           details={"transfers_checked": checked, "views_drop_values": skipped})
    if sub is None:
        verdict = True if refused == 0 else None
        sub = CheckReport(sub_name, verdict, len(stores) - refused, mode=mode,
                          note=f"{refused} stores above the sub-store cap refused" if refused else None)
    if not dp.idempotent and case.base.idempotent:
        idem.details["flag"] = "dropped"
    return [idem, sub]


# --------------------------------------------------------- exact oracles


def dom_propagator_result(c: ExtensionalConstraint, d: Sequence[Domain]):
    """``dom(c ∩ d)``: the output of an ideal domain complete propagator."""
    return _project((t for t in c if _inside(t, d)), [v.sort for v in c.vars], domain_of_values)


def check_equals_dom(
    p: Propagator, c: ExtensionalConstraint, universe: UniverseLike, *, name: str,
    budget: int = DEFAULT_BUDGET, seed: int = 0,
) -> CheckReport:
    """``p(d) = dom(c ∩ d)`` on every store: ``p`` is exactly domain consistent for ``c``."""
    if c.vars != p.vars:
        raise UsageError("constraint and propagator range over different variables")
    stores, mode, _ = iter_stores(store_space(p.vars, universe), budget, seed)
    count = 0
    table = ResultTable(p)
    for d in stores:
        count += 1
        exp = dom_propagator_result(c, d)
        r = table(d)
        if r != exp:
            return failure_report(name, count, p.vars, d, "result differs from dom(c ∩ d)", exp, r, mode)
    return CheckReport(name, True, count, mode=mode)


__all__ = [
    "CompletenessLevel",
    "DerivedCase",
    "SubsumptionOracle",
    "accepts",
    "associated_constraint",
    "check_associated",
    "check_complete",
    "check_contract",
    "check_contraction_preserved",
    "check_domain_inherited",
    "check_equals_dom",
    "check_idempotence_subsumption",
    "check_levels",
    "check_table1",
    "check_theorems",
    "check_view_lemmas",
    "dom_propagator_result",
    "expected_result",
    "image_universe",
    "iter_stores",
    "preimage_constraint",
]
