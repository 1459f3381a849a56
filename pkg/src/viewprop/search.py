"""Plain depth-first search over a propagated store.

Branching picks the unfixed branch variable with the smallest domain (ties
go to the earlier variable) and tries ``x = min`` before ``x != min``.
Only the caller's branch variables are branched on, so a derived model and
its decomposition explore the same tree.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .domains import DomainStore, IntDomain, SetDomain, VarId
from .kernel import Engine, Propagator


@dataclass
class SearchStats:
    nodes: int = 0
    failures: int = 0
    executions: int = 0
    solutions: int = 0
    peak_cells: int = 0


@dataclass
class SearchResult:
    solutions: list[dict[VarId, object]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    root: DomainStore | None = None
    root_failed: bool = False


def _choose(store: DomainStore, branch: Sequence[VarId]) -> VarId | None:
    best = None
    best_size = None
    for v in branch:
        d = store[v]
        if d.is_fixed():
            continue
        size = d.size
        if best_size is None or size < best_size:
            best, best_size = v, size
    return best


def _split(d):
    """(left, right) domains for the branch x = min | x != min."""
    if isinstance(d, SetDomain):
        # include the smallest undecided element first
        e = min(d.ub - d.lb)
        return SetDomain(d.lb | {e}, d.ub), SetDomain(d.lb, d.ub - {e})
    v = d.min
    return IntDomain.single(v), d.remove(v)


def solve(
    store: DomainStore,
    props: Sequence[Propagator],
    branch: Sequence[VarId],
    *,
    limit: int | None = None,
    search: bool = True,
) -> SearchResult:
    """Propagate, then enumerate up to ``limit`` solutions (all if None).

    Solutions are reported on ``branch``; with ``search`` off only the root
    propagation runs.
    """
    engine = Engine(props, check_contract=False)
    result = SearchResult()
    stats = result.stats
    root = engine.run(store)
    stats.nodes = 1
    stats.executions += root.stats.executions
    stats.peak_cells = root.store.cells()
    result.root = root.store
    if root.failed:
        result.root_failed = True
        stats.failures += 1
        return result
    if not search:
        return result

    # pending children as (parent store, dead propagators, variable, domain)
    stack: list = []

    def expand(cur: DomainStore, dead) -> bool:
        var = _choose(cur, branch)
        if var is None:
            stats.solutions += 1
            result.solutions.append({v: cur[v].value for v in branch})
            return limit is not None and stats.solutions >= limit
        left, right = _split(cur[var])
        stack.append((cur, dead, var, right))
        stack.append((cur, dead, var, left))
        return False

    stop = expand(root.store, root.dead)
    while stack and not stop:
        cur, dead, var, d = stack.pop()
        stats.nodes += 1
        r = engine.run(cur.updated({var: d}), changed=(var,), dead=dead)
        stats.executions += r.stats.executions
        if r.failed:
            stats.failures += 1
            continue
        stats.peak_cells = max(stats.peak_cells, r.store.cells())
        stop = expand(r.store, r.dead)
    return result


__all__ = ["SearchResult", "SearchStats", "solve"]
