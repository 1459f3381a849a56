"""Decomposition of a derived propagator into fresh variables, one
domain complete view constraint per position, and the renamed base."""

from __future__ import annotations

from dataclasses import dataclass

from .derive import Bind, DerivedPropagator, ViewFamily, derive
from .domains import DomainStore, UniverseLike, VarId
from .kernel import Propagator, run_fixpoint, store_space
from .oracle import DEFAULT_BUDGET, failure_report, iter_stores
from .propagators import view_channel
from .report import CheckReport
from .views import Const


@dataclass
class DecompositionModel:
    original: tuple[VarId, ...]
    # one variable per base position: fresh, or the original for identity views
    fresh: tuple[VarId, ...]
    channels: list[Propagator]
    base: Propagator
    store: DomainStore

    @property
    def propagators(self) -> list[Propagator]:
        return [*self.channels, self.base]

    def is_berge_acyclic(self) -> bool:
        """The variable/constraint incidence graph is a forest."""
        parent: dict = {}

        def find(a):
            while parent.setdefault(a, a) != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, p in enumerate(self.propagators):
            node = ("con", i)
            for v in dict.fromkeys(p.vars):
                ra, rb = find(node), find(("var", v))
                if ra == rb:
                    return False
                parent[ra] = rb
        return True


def _as_derived(p: Propagator, family: ViewFamily | None) -> DerivedPropagator:
    if family is not None:
        return derive(p, family)
    if not isinstance(p, DerivedPropagator):
        return derive(p, ViewFamily.identity(p.vars))
    return p


def decompose(
    p: Propagator, family: ViewFamily | None, store: DomainStore, *, keep_identity: bool = True
) -> DecompositionModel:
    """Replace the views of ``p`` (read through ``family``) by fresh variables.

    Each viewed position gets a fresh variable whose domain is the image of
    the bound variable's domain, tied to it by a view constraint; constants
    become fixed fresh variables. Identity positions keep their variable
    unless ``keep_identity`` is off or the variable already occurs. The base
    runs on the resulting position variables.
    """
    dp = _as_derived(p, family)
    next_index = max((v.index for v in store), default=-1) + 1
    fresh: list[VarId] = []
    channels: list[Propagator] = []
    doms = {}
    used: set[VarId] = set()
    for i, (entry, sort) in enumerate(zip(dp.family, dp.base.sorts)):
        if keep_identity and isinstance(entry, Bind) and entry.view.is_identity and entry.var not in used:
            v = entry.var
        elif isinstance(entry, Const):
            v = VarId(next_index + i, sort, f"k{i}'")
            doms[v] = entry.domain()
        else:
            v = VarId(next_index + i, sort, f"{entry.var}'{i}")
            doms[v] = entry.view.image(store[entry.var], store.int_universe)
            channels.append(view_channel(entry.var, v, entry.view))
        used.add(v)
        fresh.append(v)
    return DecompositionModel(
        original=dp.vars,
        fresh=tuple(fresh),
        channels=channels,
        base=dp.base.with_vars(fresh),
        store=store.extended(doms),
    )


def check_decomposition_equiv(
    p: Propagator,
    family: ViewFamily | None,
    universe: UniverseLike,
    *,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    name: str | None = None,
) -> CheckReport:
    """Fixpoint of the decomposition, projected to the original variables,
    equals the fixpoint of the derived propagator on every store."""
    dp = _as_derived(p, family)
    name = name or f"decompose:{dp!r}"
    stores, mode, _ = iter_stores(store_space(dp.vars, universe), budget, seed)
    count = 0
    for d in stores:
        count += 1
        store = DomainStore(dict(zip(dp.vars, d)))
        a = run_fixpoint(store, [dp])
        model = decompose(dp, None, store)
        b = run_fixpoint(model.store, model.propagators)
        if a.failed != b.failed or (not a.failed and b.store.restrict(dp.vars) != a.store):
            ra = None if a.failed else tuple(a.store[v] for v in dp.vars)
            rb = None if b.failed else tuple(b.store[v] for v in dp.vars)
            return failure_report(name, count, dp.vars, d, "decomposed fixpoint differs from derived", ra, rb, mode)
    return CheckReport(name, True, count, mode=mode)


__all__ = ["DecompositionModel", "check_decomposition_equiv", "decompose"]
