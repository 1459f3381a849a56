"""Propagator contract, events and the event-driven fixpoint engine."""

from __future__ import annotations

import copy
import enum
import itertools
import random
from collections import defaultdict, deque
from collections.abc import Collection, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .domains import (
    Domain,
    DomainStore,
    IntDomain,
    SetDomain,
    Sort,
    UniverseLike,
    VarId,
    covering_substores,
    domain_space,
    empty_domain,
    encode_domains,
    position_values,
)
from .errors import ContractViolation, UsageError
from .report import CheckReport


class EventKind(enum.IntFlag):
    FIX = 1
    LBC = 2
    UBC = 4
    DMC = 8


NO_EVENTS = EventKind(0)
BOUNDS = EventKind.LBC | EventKind.UBC

_KIND_NAMES = {EventKind.FIX: "fix", EventKind.LBC: "lbc", EventKind.UBC: "ubc", EventKind.DMC: "dmc"}


def kinds_of(mask: EventKind) -> list[EventKind]:
    return [k for k in _KIND_NAMES if k & mask]


class Event(NamedTuple):
    kind: EventKind
    var: VarId

    def __str__(self) -> str:
        return f"{_KIND_NAMES[self.kind]}({self.var})"


class Status(enum.Enum):
    """Outcome of one propagator execution.

    FIXPOINT promises the returned domains are a fixpoint of the propagator;
    PROGRESS makes no such promise. SUBSUMED promises every stronger store is
    a fixpoint. FAILED means the result is the empty domain.
    """

    FAILED = "failed"
    FIXPOINT = "fixpoint"
    PROGRESS = "progress"
    SUBSUMED = "subsumed"


class Level(enum.IntEnum):
    """Propagation strength, ordered weakest to strongest."""

    WEAK = 0
    BOUNDS_R = 1
    BOUNDS_Z = 2
    BOUNDS_D = 3
    DOMAIN = 4

    def __str__(self) -> str:
        return {0: "weak", 1: "boundsR", 2: "boundsZ", 3: "boundsD", 4: "domain"}[int(self)]


Doms = tuple  # tuple of Domain aligned with a propagator's vars
FilterResult = tuple  # (Doms | None, Status)


_FIX, _LBC, _UBC, _DMC = (int(k) for k in (EventKind.FIX, EventKind.LBC, EventKind.UBC, EventKind.DMC))


def event_bits(old: Domain, new: Domain) -> int:
    """:func:`domain_events` as a plain int, for the engine's inner loop."""
    if new is old or new == old:
        return 0
    mask = _DMC
    if isinstance(new, SetDomain):
        if new.lb != old.lb:
            mask |= _LBC
        if new.ub != old.ub:
            mask |= _UBC
    else:
        if new.ranges[0][0] != old.ranges[0][0]:
            mask |= _LBC
        if new.ranges[-1][1] != old.ranges[-1][1]:
            mask |= _UBC
    if new.is_fixed() and not old.is_fixed():
        mask |= _FIX
    return mask


def domain_events(old: Domain, new: Domain) -> EventKind:
    """Events raised by shrinking ``old`` to the non-empty ``new``."""
    return EventKind(event_bits(old, new))


def events_between(d: DomainStore, d2: DomainStore) -> set[Event]:
    """Events describing the change from ``d`` to the stronger ``d2``."""
    if set(d.vars) != set(d2.vars):
        raise UsageError("stores range over different variables")
    out: set[Event] = set()
    for v in d:
        old, new = d[v], d2[v]
        if not new <= old:
            raise UsageError(f"{v}: {new!r} is not a subset of {old!r}")
        if new.is_empty():
            continue
        for k in kinds_of(domain_events(old, new)):
            out.add(Event(k, v))
    return out


class Propagator:
    """Base class for propagators.

    Subclasses implement :meth:`filter`, which maps the domains of ``vars``
    (in order) to new domains. It must be contracting and monotone. A filter
    returns ``(None, Status.FAILED)`` on failure.
    """

    name = "propagator"
    level = Level.WEAK
    idempotent = False

    def __init__(self, vars: Sequence[VarId]) -> None:
        self.vars: tuple[VarId, ...] = tuple(vars)

    @property
    def sorts(self) -> tuple[Sort, ...]:
        return tuple(v.sort for v in self.vars)

    def position_events(self) -> tuple[EventKind, ...]:
        return (EventKind.DMC,) * len(self.vars)

    @property
    def events(self) -> frozenset[Event]:
        out = set()
        for v, mask in zip(self.vars, self.position_events()):
            out.update(Event(k, v) for k in kinds_of(mask))
        return frozenset(out)

    def var_masks(self) -> dict[VarId, EventKind]:
        masks: dict[VarId, EventKind] = {}
        for v, m in zip(self.vars, self.position_events()):
            masks[v] = masks.get(v, NO_EVENTS) | m
        return masks

    def filter(self, doms: Doms) -> FilterResult:
        raise NotImplementedError

    def propagate(self, store: DomainStore) -> tuple[DomainStore, Status]:
        """Run once on ``store``; return the store restricted to ``vars``."""
        doms = tuple(store[v] for v in self.vars)
        out, status = self.filter(doms)
        result: dict[VarId, Domain] = {}
        if out is None:
            for v in self.vars:
                result[v] = store[v]
            result[self.vars[0]] = empty_domain(self.vars[0].sort)
            return DomainStore(result), Status.FAILED
        for v, d in zip(self.vars, out):
            result[v] = result[v] & d if v in result else d
        return store.restrict(self.vars).updated(result), status

    def with_vars(self, vars: Sequence[VarId]) -> Propagator:
        """Same propagator on other variables of the same sorts."""
        vars = tuple(vars)
        if tuple(v.sort for v in vars) != self.sorts:
            raise UsageError(f"{self.name}: sorts {[v.sort for v in vars]} do not match {self.sorts}")
        other = copy.copy(self)
        other.vars = vars
        return other

    def relaxation(self):
        """Real relaxation of the implemented constraint, if it has one."""
        return None

    def __repr__(self) -> str:
        return f"{self.name}({', '.join(str(v) for v in self.vars)})"


class Outcome(enum.Enum):
    STABLE = "stable"
    FAILED = "failed"


@dataclass
class FixpointStats:
    executions: int = 0
    events: int = 0
    subsumed: int = 0


@dataclass
class FixpointResult:
    store: DomainStore
    outcome: Outcome
    stats: FixpointStats
    # indices of propagators that reported Subsumed, including earlier ones
    dead: frozenset[int] = frozenset()

    @property
    def failed(self) -> bool:
        return self.outcome is Outcome.FAILED


class Engine:
    """Event-driven propagation over a fixed propagator list.

    Subscriptions are computed once, so repeated runs (one per search node)
    only pay for the propagators they wake. Scheduling is a FIFO queue with
    a queued bit per propagator. A propagator is woken when a change on one
    of its variables raises an event in its event set (every change when
    ``wake_all``). With ``rng`` the initial queue is shuffled and the next
    propagator is drawn at random.
    """

    def __init__(self, props: Sequence[Propagator], *, wake_all: bool = False, check_contract: bool = True) -> None:
        self.props = list(props)
        self.check_contract = check_contract
        self.subs: dict[VarId, list[tuple[int, int]]] = defaultdict(list)
        for i, p in enumerate(self.props):
            for v, mask in p.var_masks().items():
                self.subs[v].append((i, _DMC if wake_all else int(mask)))
        self.needed = frozenset(self.subs)

    def run(
        self,
        store: DomainStore,
        *,
        changed: Collection[VarId] | None = None,
        dead: Collection[int] = frozenset(),
        rng: random.Random | None = None,
    ) -> FixpointResult:
        """Propagate to a fixpoint. With ``changed`` only propagators
        subscribed to those variables start queued; ``dead`` propagators
        (earlier Subsumed) are never run."""
        props = self.props
        subs = self.subs
        check_contract = self.check_contract
        doms = store.as_dict()
        stats = FixpointStats()
        n = len(props)
        if not self.needed <= doms.keys():
            missing = min(self.needed - doms.keys(), key=lambda v: v.index)
            raise UsageError(f"variable {missing} not in store")
        alive = [True] * n
        for i in dead:
            alive[i] = False
        if changed is None:
            order = [i for i in range(n) if alive[i]]
        else:
            order = list(dict.fromkeys(i for v in changed for i, _ in subs.get(v, ()) if alive[i]))
        queued = [False] * n
        for i in order:
            queued[i] = True
        if rng is not None:
            rng.shuffle(order)
            pending: list[int] | deque[int] = order
        else:
            pending = deque(order)

        def done(outcome: Outcome) -> FixpointResult:
            gone = frozenset(i for i in range(n) if not alive[i])
            return FixpointResult(store._with(doms), outcome, stats, gone)

        def fail(var: VarId) -> FixpointResult:
            doms[var] = empty_domain(var.sort)
            return done(Outcome.FAILED)

        for v, d in doms.items():
            if d.is_empty():
                return fail(v)

        while pending:
            if rng is None:
                i = pending.popleft()
            else:
                j = rng.randrange(len(pending))
                pending[j], pending[-1] = pending[-1], pending[j]
                i = pending.pop()
            queued[i] = False
            if not alive[i]:
                continue
            p = props[i]
            pvars = p.vars
            before = tuple(doms[v] for v in pvars)
            out, status = p.filter(before)
            stats.executions += 1
            if out is None:
                return fail(pvars[0])
            if status is Status.SUBSUMED:
                alive[i] = False
                stats.subsumed += 1
            wake_self = not (p.idempotent or status is Status.FIXPOINT or status is Status.SUBSUMED)
            delta: dict[VarId, Domain] = {}
            for v, b, a in zip(pvars, before, out):
                if a is b or a == b:
                    continue
                if check_contract and not a <= b:
                    raise ContractViolation(f"{p!r} is not contracting on {v}: {b!r} -> {a!r}")
                cur = delta.get(v)
                delta[v] = a if cur is None else cur & a
            for v, new in delta.items():
                old = doms[v]
                if new.is_empty():
                    return fail(v)
                mask = event_bits(old, new)
                if not mask:
                    continue
                doms[v] = new
                stats.events += bin(mask).count("1")
                for j, m in subs[v]:
                    if m & mask and alive[j] and not queued[j] and (j != i or wake_self):
                        queued[j] = True
                        pending.append(j)
        return done(Outcome.STABLE)


def run_fixpoint(
    store: DomainStore,
    props: Sequence[Propagator],
    *,
    rng: random.Random | None = None,
    wake_all: bool = False,
    check_contract: bool = True,
) -> FixpointResult:
    """Propagate ``props`` on ``store`` until no propagator can contract it."""
    return Engine(props, wake_all=wake_all, check_contract=check_contract).run(store, rng=rng)


# exhaustive helpers shared with the oracle


def store_space(vars: Sequence[VarId], universe: UniverseLike) -> list[list[Domain]]:
    """Per-position lists of every non-empty domain over the universe."""
    return [domain_space(v.sort, vals) for v, vals in zip(vars, position_values(vars, universe))]


def normalize(out: Doms | None) -> Doms | None:
    """Canonical result: ``None`` for any failed store."""
    if out is None or any(d.is_empty() for d in out):
        return None
    return tuple(out)


def doms_subset(a: Doms | None, b: Doms | None) -> bool:
    if a is None:
        return True
    if b is None:
        return False
    return all(x <= y for x, y in zip(a, b))


def position_events_between(a: Doms, b: Doms) -> tuple[EventKind, ...]:
    return tuple(domain_events(x, y) for x, y in zip(a, b))


class ResultTable:
    """Memoized ``filter`` results for a propagator over small stores."""

    def __init__(self, prop: Propagator) -> None:
        self.prop = prop
        self.cache: dict[Doms, tuple[Doms | None, Status]] = {}
        self.calls = 0

    def run(self, doms: Doms) -> tuple[Doms | None, Status]:
        hit = self.cache.get(doms)
        if hit is None:
            out, status = self.prop.filter(doms)
            self.calls += 1
            out = normalize(out)
            hit = (out, Status.FAILED if out is None else status)
            self.cache[doms] = hit
        return hit

    def __call__(self, doms: Doms) -> Doms | None:
        return self.run(doms)[0]


def check_event_set(
    p: Propagator,
    universe: UniverseLike,
    es: Sequence[EventKind] | None = None,
    *,
    name: str | None = None,
) -> CheckReport:
    """Verify both event-set conditions for ``p`` by exhaustive enumeration.

    Condition 2 ranges over all pairs ``d' ⊆ d``; it is checked on pairs
    that differ by one value, which is equivalent because events compose
    along chains and the first non-fixpoint on any chain has a fixpoint
    parent.
    """
    es = tuple(es) if es is not None else p.position_events()
    table = ResultTable(p)
    space = store_space(p.vars, universe)
    label = name or f"events:{p!r}"
    count = 0

    def hits(a: Doms, b: Doms) -> bool:
        return any(m & e for m, e in zip(position_events_between(a, b), es))

    for d in itertools.product(*space):
        count += 1
        r = table(d)
        if r is not None and r != d:
            rr = table(r)
            if rr != r and not hits(d, r):
                return CheckReport(
                    label, False, count, witness=encode_domains(p.vars, d),
                    note="condition 1: p(d) != p(p(d)) without a subscribed event",
                )
        if r != d:
            continue
        for pos, sub in covering_substores(d):
            if sub.is_empty():
                continue
            d2 = d[:pos] + (sub,) + d[pos + 1 :]
            if table(d2) != d2 and not hits(d, d2):
                return CheckReport(
                    label, False, count, witness=encode_domains(p.vars, d2),
                    expected=encode_domains(p.vars, d),
                    note="condition 2: fixpoint destroyed without a subscribed event",
                )
    return CheckReport(label, True, count)
