"""Catalog of generic propagators that seed derivations.

Every constructor returns a :class:`~viewprop.kernel.Propagator` with a
declared strength, event set and idempotence flag; the oracle checks all
three on small universes.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Sequence
from fractions import Fraction

from .domains import BOOL_FULL, EMPTY_INT, IntDomain, SetDomain, Sort, VarId
from .errors import UsageError
from .kernel import BOUNDS, EventKind, Level, Propagator, Status
from .views import View

Box = list  # list of (Fraction, Fraction), one per position
Relaxation = Callable[[Box], "Box | None"]

ZERO = IntDomain.single(0)
ONE = IntDomain.single(1)


def _need(vars: Sequence[VarId], sort: Sort, what: str) -> None:
    for v in vars:
        ok = v.sort is sort or (sort is Sort.INT and v.sort is Sort.BOOL)
        if not ok:
            raise UsageError(f"{what}: {v} is {v.sort.value}, expected {sort.value}")


def _status(doms) -> Status:
    return Status.SUBSUMED if all(d.is_fixed() for d in doms) else Status.FIXPOINT


# ---------------------------------------------------------------- equality


class Eq(Propagator):
    """Domain complete ``x = y``."""

    name = "eq"
    level = Level.DOMAIN
    idempotent = True

    def filter(self, doms):
        x, y = doms
        m = x & y
        if m.is_empty():
            return None, Status.FAILED
        return (m, m), Status.SUBSUMED if m.is_fixed() else Status.FIXPOINT


def eq(x: VarId, y: VarId) -> Propagator:
    if (x.sort is Sort.SET) != (y.sort is Sort.SET):
        raise UsageError("eq needs two variables of the same kind")
    return Eq((x, y))


# ----------------------------------------------------------------- maximum


def _max_projections(x, y, z):
    lx, ux, ly, uy, lz, uz = x.min, x.max, y.min, y.max, z.min, z.max
    zr = [(max(lx, ly, lz), min(max(ux, uy), uz))]

    def side(lo_other, hi_other):
        # own value v with v = z >= other, or v < other = z
        out = [(max(lo_other, lz), uz)]
        if max(lo_other, lz) <= min(hi_other, uz):
            out.append((-math.inf, min(hi_other, uz) - 1))
        return out

    return side(ly, uy), side(lx, ux), zr


def _cut(d: IntDomain, ranges) -> IntDomain:
    lo, hi = d.min, d.max
    mask = IntDomain.from_ranges((max(a, lo), min(b, hi)) for a, b in ranges)
    return d & mask


class MaxTernary(Propagator):
    """``max(x, y) = z`` by exact box projections, iterated until the bounds settle."""

    name = "max"
    level = Level.BOUNDS_Z
    idempotent = True

    def position_events(self):
        return (BOUNDS,) * 3

    def filter(self, doms):
        x, y, z = doms
        while True:
            px, py, pz = _max_projections(x, y, z)
            nx, ny, nz = _cut(x, px), _cut(y, py), _cut(z, pz)
            if nx.is_empty() or ny.is_empty() or nz.is_empty():
                return None, Status.FAILED
            if (nx.min, nx.max, ny.min, ny.max, nz.min, nz.max) == (x.min, x.max, y.min, y.max, z.min, z.max):
                x, y, z = nx, ny, nz
                break
            x, y, z = nx, ny, nz
        return (x, y, z), _status((x, y, z))


def max_ternary(x: VarId, y: VarId, z: VarId) -> Propagator:
    _need((x, y, z), Sort.INT, "max")
    return MaxTernary((x, y, z))


# ------------------------------------------------------------ linear (sum)


def linear_relaxation(c: int) -> Relaxation:
    """Exact real projection of ``sum = c`` on a box."""
    c = Fraction(c)

    def relax(box):
        slo = sum(lo for lo, _ in box)
        shi = sum(hi for _, hi in box)
        if slo > c or shi < c:
            return None
        return [(max(lo, c - (shi - hi)), min(hi, c - (slo - lo))) for lo, hi in box]

    return relax


def _reachable_sums(doms) -> list[set[int]]:
    """For every position, the set of sums reachable by the other positions."""
    n = len(doms)
    prefix = [{0}]
    for d in doms:
        prefix.append({s + v for s in prefix[-1] for v in d})
    suffix = [{0}]
    for d in reversed(doms):
        suffix.append({s + v for s in suffix[-1] for v in d})
    suffix.reverse()
    out = []
    for i in range(n):
        out.append({a + b for a in prefix[i] for b in suffix[i + 1]})
    return out


class LinearEqUnit(Propagator):
    """``sum(xs) = c`` with unit coefficients.

    ``bounds`` applies the interval rule once, every bound computed from the
    input; ``boundsD`` shaves bounds without support in the actual domains;
    ``domain`` removes every value without support.
    """

    name = "linear"

    MODES = {"bounds": Level.BOUNDS_Z, "boundsD": Level.BOUNDS_D, "domain": Level.DOMAIN}

    def __init__(self, vars, c: int, mode: str = "bounds") -> None:
        super().__init__(vars)
        if mode not in self.MODES:
            raise UsageError(f"linear mode {mode!r} not in {sorted(self.MODES)}")
        self.c = c
        self.mode = mode
        self.level = self.MODES[mode]
        self.idempotent = mode != "bounds"
        if mode != "bounds":
            self.name = f"linear_{mode}"

    def position_events(self):
        ev = BOUNDS if self.mode == "bounds" else EventKind.DMC
        return (ev,) * len(self.vars)

    def relaxation(self):
        return linear_relaxation(self.c)

    def filter(self, doms):
        if self.mode == "bounds":
            return self._bounds(doms)
        return self._support(doms)

    def _bounds(self, doms):
        c = self.c
        slo = sum(d.min for d in doms)
        shi = sum(d.max for d in doms)
        if slo > c or shi < c:
            return None, Status.FAILED
        out = []
        for d in doms:
            nd = d.restrict(c - (shi - d.max), c - (slo - d.min))
            if nd.is_empty():
                return None, Status.FAILED
            out.append(nd)
        if all(d.is_fixed() for d in out) and sum(d.min for d in out) == c:
            return tuple(out), Status.SUBSUMED
        return tuple(out), Status.PROGRESS

    def _support(self, doms):
        c = self.c
        doms = list(doms)
        while True:
            sums = _reachable_sums(doms)
            changed = False
            for i, d in enumerate(doms):
                s = sums[i]
                if self.mode == "domain":
                    nd = IntDomain.of(v for v in d if c - v in s)
                else:
                    vals = [v for v in d if c - v in s]
                    nd = d.restrict(vals[0], vals[-1]) if vals else EMPTY_INT
                if nd.is_empty():
                    return None, Status.FAILED
                if nd != d:
                    doms[i] = nd
                    changed = True
            # a supporting tuple supports all of its own values, so one
            # domain pass is exact; shaved bounds may expose new bounds
            if not changed or self.mode == "domain":
                break
        return tuple(doms), _status(doms)


def linear_eq_unit(xs: Sequence[VarId], c: int, mode: str = "bounds") -> Propagator:
    if not xs:
        raise UsageError("linear needs at least one variable")
    _need(xs, Sort.INT, "linear")
    return LinearEqUnit(tuple(xs), c, mode)


class LinearNeqUnit(Propagator):
    """Domain complete ``sum(xs) != c``; wakes only when a variable is fixed."""

    name = "linear_neq"
    level = Level.DOMAIN
    idempotent = True

    def __init__(self, vars, c: int) -> None:
        super().__init__(vars)
        self.c = c

    def position_events(self):
        return (EventKind.FIX,) * len(self.vars)

    def filter(self, doms):
        free = [i for i, d in enumerate(doms) if not d.is_fixed()]
        if len(free) > 1:
            return doms, Status.FIXPOINT
        fixed_sum = sum(d.min for i, d in enumerate(doms) if i not in free)
        if not free:
            if fixed_sum == self.c:
                return None, Status.FAILED
            return doms, Status.SUBSUMED
        i = free[0]
        nd = doms[i].remove(self.c - fixed_sum)
        out = doms[:i] + (nd,) + doms[i + 1 :]
        return out, Status.SUBSUMED


def linear_neq_unit(xs: Sequence[VarId], c: int) -> Propagator:
    if not xs:
        raise UsageError("linear needs at least one variable")
    _need(xs, Sort.INT, "linear_neq")
    return LinearNeqUnit(tuple(xs), c)


# ---------------------------------------------------------------- Booleans


class BoolCardGeq(Propagator):
    """``sum(xs) >= c`` on Booleans.

    Looks for ``c + 1`` variables that can still be 1, the watched-literal
    invariant; only when fewer exist does it prune or fail.
    """

    name = "card_geq"
    level = Level.DOMAIN
    idempotent = True

    def __init__(self, vars, c: int) -> None:
        super().__init__(vars)
        self.c = c

    def position_events(self):
        return (EventKind.UBC,) * len(self.vars)

    def filter(self, doms):
        c = self.c
        if c <= 0:
            return doms, Status.SUBSUMED
        watches = []
        for i, d in enumerate(doms):
            if d.max == 1:
                watches.append(i)
                if len(watches) > c:
                    return doms, Status.FIXPOINT
        if len(watches) < c:
            return None, Status.FAILED
        out = tuple(ONE if d.max == 1 else d for d in doms)
        return out, Status.SUBSUMED


def bool_card_geq(xs: Sequence[VarId], c: int) -> Propagator:
    _need(xs, Sort.BOOL, "card")
    if not 0 <= c <= len(xs):
        raise UsageError(f"card threshold {c} outside 0..{len(xs)}")
    return BoolCardGeq(tuple(xs), c)


class BoolOrN(Propagator):
    """Domain complete ``or(xs) = y``."""

    name = "or"
    level = Level.DOMAIN
    idempotent = True

    def position_events(self):
        return (EventKind.FIX,) * len(self.vars)

    def filter(self, doms):
        *xs, y = doms
        if any(d.min == 1 for d in xs):
            if y.max == 0:
                return None, Status.FAILED
            return tuple(xs) + (ONE,), Status.SUBSUMED
        if y.max == 0:
            return (ZERO,) * len(xs) + (ZERO,), Status.SUBSUMED
        free = [i for i, d in enumerate(xs) if d.max == 1]
        if not free:
            if y.min == 1:
                return None, Status.FAILED
            return tuple(xs) + (ZERO,), Status.SUBSUMED
        if y.min == 1 and len(free) == 1:
            xs[free[0]] = ONE
            return tuple(xs) + (y,), Status.SUBSUMED
        return doms, Status.FIXPOINT


def bool_or_n(xs: Sequence[VarId], y: VarId) -> Propagator:
    if not xs:
        raise UsageError("or needs at least one input")
    _need((*xs, y), Sort.BOOL, "or")
    return BoolOrN((*xs, y))


class BoolTable(Propagator):
    """Domain complete propagation of a small Boolean relation by enumeration."""

    level = Level.DOMAIN
    idempotent = True

    def __init__(self, vars, name: str, relation: frozenset[tuple[int, ...]]) -> None:
        super().__init__(vars)
        self.name = name
        self.relation = relation

    def position_events(self):
        return (EventKind.FIX,) * len(self.vars)

    def filter(self, doms):
        support = [set() for _ in doms]
        for t in self.relation:
            if all(v in d for v, d in zip(t, doms)):
                for s, v in zip(support, t):
                    s.add(v)
        if not support[0]:
            return None, Status.FAILED
        out = tuple(d if len(s) == d.size else IntDomain.of(s) for d, s in zip(doms, support))
        return out, _status(out)


def bool_eqv(x: VarId, y: VarId, z: VarId) -> Propagator:
    """``(x <-> y) = z``."""
    _need((x, y, z), Sort.BOOL, "eqv")
    rel = frozenset((a, b, int(a == b)) for a in (0, 1) for b in (0, 1))
    return BoolTable((x, y, z), "eqv", rel)


def bool_and(x: VarId, y: VarId, z: VarId) -> Propagator:
    """Reference ``x and y = z`` used by the oracle; not a derivation seed."""
    _need((x, y, z), Sort.BOOL, "and")
    rel = frozenset((a, b, a & b) for a in (0, 1) for b in (0, 1))
    return BoolTable((x, y, z), "and", rel)


# ---------------------------------------------------------------- distinct


def _has_sdr(doms, taken: frozenset) -> bool:
    # system of distinct representatives by backtracking, smallest domain first
    if not doms:
        return True
    i = min(range(len(doms)), key=lambda k: doms[k].size)
    rest = doms[:i] + doms[i + 1 :]
    return any(_has_sdr(rest, taken | {v}) for v in doms[i] if v not in taken)


class Distinct(Propagator):
    """Pairwise different values.

    ``domain`` mode removes every value with no extension to a full
    distinct assignment (exhaustive, meant for small n); ``weak`` mode only
    removes values of fixed variables from the others.
    """

    name = "distinct"
    idempotent = True

    def __init__(self, vars, mode: str) -> None:
        super().__init__(vars)
        if mode not in ("domain", "weak"):
            raise UsageError(f"distinct mode {mode!r}")
        self.mode = mode
        self.level = Level.DOMAIN if mode == "domain" else Level.WEAK
        self.name = "distinct" if mode == "domain" else "distinct_weak"

    def position_events(self):
        ev = EventKind.DMC if self.mode == "domain" else EventKind.FIX
        return (ev,) * len(self.vars)

    def filter(self, doms):
        doms = self._eliminate(list(doms))
        if doms is None:
            return None, Status.FAILED
        if self.mode == "domain":
            out = []
            for i, d in enumerate(doms):
                others = doms[:i] + doms[i + 1 :]
                keep = [v for v in d if _has_sdr(others, frozenset((v,)))]
                if not keep:
                    return None, Status.FAILED
                out.append(d if len(keep) == d.size else IntDomain.of(keep))
            doms = out
        return tuple(doms), _status(doms)

    @staticmethod
    def _eliminate(doms):
        seen: dict[int, int] = {}
        queue = [i for i, d in enumerate(doms) if d.is_fixed()]
        while queue:
            i = queue.pop()
            v = doms[i].min
            if seen.get(v, i) != i:
                return None
            seen[v] = i
            for j, d in enumerate(doms):
                if j != i and v in d:
                    nd = d.remove(v)
                    if nd.is_empty():
                        return None
                    doms[j] = nd
                    if nd.is_fixed():
                        queue.append(j)
        return doms


DISTINCT_DOMAIN_MAX = 6


def distinct(xs: Sequence[VarId], mode: str | None = None) -> Propagator:
    if not xs:
        raise UsageError("distinct needs at least one variable")
    _need(xs, Sort.INT, "distinct")
    if mode is None:
        mode = "domain" if len(xs) <= DISTINCT_DOMAIN_MAX else "weak"
    return Distinct(tuple(xs), mode)


# ----------------------------------------------------------------- element


class ElementVals(Propagator):
    """Domain complete ``cs[x] = y`` with 1-based indices."""

    name = "element"
    level = Level.DOMAIN
    idempotent = True

    def __init__(self, vars, cs: Sequence[int]) -> None:
        super().__init__(vars)
        self.cs = tuple(cs)

    def filter(self, doms):
        x, y = doms
        n = len(self.cs)
        idx = [i for i in x if 1 <= i <= n and self.cs[i - 1] in y]
        if not idx:
            return None, Status.FAILED
        nx = x if len(idx) == x.size else IntDomain.of(idx)
        vals = IntDomain.of(self.cs[i - 1] for i in idx)
        ny = y & vals
        return (nx, ny), Status.SUBSUMED if nx.is_fixed() else Status.FIXPOINT


def element_vals(cs: Sequence[int], x: VarId, y: VarId) -> Propagator:
    if not cs:
        raise UsageError("element needs a non-empty array")
    _need((x, y), Sort.INT, "element")
    return ElementVals((x, y), cs)


# ---------------------------------------------------------- multiplication


def mult_relaxation() -> Relaxation:
    """Exact real projection of ``x*y = z`` on a strictly positive box."""

    def relax(box):
        (lx, ux), (ly, uy), (lz, uz) = box
        nz = (max(lz, lx * ly), min(uz, ux * uy))
        nx = (max(lx, lz / uy), min(ux, uz / ly))
        ny = (max(ly, lz / ux), min(uy, uz / lx))
        if any(lo > hi for lo, hi in (nx, ny, nz)):
            return None
        return [nx, ny, nz]

    return relax


def _cdiv(a: int, b: int) -> int:
    return -((-a) // b)


def _x_support(v: int, ly: int, uy: int, lz: int, uz: int) -> bool:
    return max(ly, _cdiv(lz, v)) <= min(uy, uz // v)


def _z_support(w: int, lx: int, ux: int, ly: int, uy: int) -> bool:
    lo, hi = max(lx, _cdiv(w, uy)), min(ux, w // ly)
    if lo > hi:
        return False
    if hi - lo <= math.isqrt(w):
        return any(w % a == 0 for a in range(lo, hi + 1))
    for a in range(1, math.isqrt(w) + 1):
        if w % a == 0 and (lo <= a <= hi or lo <= w // a <= hi):
            return True
    return False


def _shave(d: IntDomain, ok) -> IntDomain:
    while d and not ok(d.min):
        d = d.remove(d.min)
    while d and not ok(d.max):
        d = d.remove(d.max)
    return d


class MultPPP(Propagator):
    """``x*y = z`` on strictly positive domains, bounds(Z) complete and idempotent.

    The division rules narrow the box; bounds that still lack an integer
    support inside the box are shaved off one value at a time.
    """

    name = "mult"
    level = Level.BOUNDS_Z
    idempotent = True

    def position_events(self):
        return (BOUNDS,) * 3

    def relaxation(self):
        return mult_relaxation()

    def filter(self, doms):
        x, y, z = doms
        for v, d in zip(self.vars, doms):
            if d and d.min <= 0:
                raise UsageError(f"mult needs strictly positive domains, {v} has {d!r}")
        while True:
            box = (x.min, x.max, y.min, y.max, z.min, z.max)
            z = z.restrict(x.min * y.min, x.max * y.max)
            if not z:
                return None, Status.FAILED
            x = x.restrict(_cdiv(z.min, y.max), z.max // y.min)
            if not x:
                return None, Status.FAILED
            y = y.restrict(_cdiv(z.min, x.max), z.max // x.min)
            if not y:
                return None, Status.FAILED
            x = _shave(x, lambda v: _x_support(v, y.min, y.max, z.min, z.max))
            if not x:
                return None, Status.FAILED
            y = _shave(y, lambda v: _x_support(v, x.min, x.max, z.min, z.max))
            if not y:
                return None, Status.FAILED
            z = _shave(z, lambda w: _z_support(w, x.min, x.max, y.min, y.max))
            if not z:
                return None, Status.FAILED
            if (x.min, x.max, y.min, y.max, z.min, z.max) == box:
                break
        return (x, y, z), _status((x, y, z))


def mult_ppp(x: VarId, y: VarId, z: VarId) -> Propagator:
    _need((x, y, z), Sort.INT, "mult")
    return MultPPP((x, y, z))


# -------------------------------------------------------------------- sets


def _set_state(d: SetDomain, e: int) -> tuple[int, ...]:
    if e in d.lb:
        return (1,)
    if e in d.ub:
        return (0, 1)
    return (0,)


def _set_from(d: SetDomain, keep: dict[int, set[int]]) -> SetDomain:
    lb, ub = set(d.lb), set(d.ub)
    for e, vals in keep.items():
        if vals == {1}:
            lb.add(e)
        elif vals == {0}:
            ub.discard(e)
    return SetDomain(lb, ub)


class SetElementwise(Propagator):
    """Set constraint that decomposes into one Boolean relation per element."""

    level = Level.DOMAIN
    idempotent = True
    relation: frozenset[tuple[int, ...]] = frozenset()

    def position_events(self):
        return (BOUNDS,) * len(self.vars)

    def filter(self, doms):
        elems = frozenset().union(*(d.ub | d.lb for d in doms))
        keep = [dict() for _ in doms]
        for e in sorted(elems):
            states = [_set_state(d, e) for d in doms]
            support = [set() for _ in doms]
            for t in self.relation:
                if all(v in s for v, s in zip(t, states)):
                    for sup, v in zip(support, t):
                        sup.add(v)
            if not support[0]:
                return None, Status.FAILED
            for k, sup in zip(keep, support):
                k[e] = sup
        out = tuple(_set_from(d, k) for d, k in zip(doms, keep))
        return out, self.status(out)

    def status(self, doms) -> Status:
        return _status(doms)


class SetIntersect(SetElementwise):
    """Domain complete ``x ∩ y = z`` on set intervals."""

    name = "intersect"
    relation = frozenset((a, b, a & b) for a in (0, 1) for b in (0, 1))


def set_intersect(x: VarId, y: VarId, z: VarId) -> Propagator:
    _need((x, y, z), Sort.SET, "intersect")
    return SetIntersect((x, y, z))


class Subset(SetElementwise):
    """Domain complete ``x ⊆ y``; subsumed once ``ub(x) ⊆ lb(y)``."""

    name = "subset"
    relation = frozenset((a, b) for a in (0, 1) for b in (0, 1) if a <= b)

    def position_events(self):
        return (EventKind.LBC, EventKind.UBC)

    def status(self, doms) -> Status:
        x, y = doms
        return Status.SUBSUMED if x.ub <= y.lb else Status.FIXPOINT


def subset(x: VarId, y: VarId) -> Propagator:
    _need((x, y), Sort.SET, "subset")
    return Subset((x, y))


# ----------------------------------------------------------- reification


class ReifiedEq(Propagator):
    """Domain complete ``(x = y) <-> b``."""

    name = "reified_eq"
    level = Level.DOMAIN
    idempotent = True

    def position_events(self):
        return (EventKind.DMC, EventKind.DMC, EventKind.FIX)

    def filter(self, doms):
        x, y, b = doms
        if b.max == 1 and (x & y).is_empty():
            b = b & ZERO
        elif b.min == 0 and x.is_fixed() and x == y:
            b = b & ONE
        if b.is_empty():
            return None, Status.FAILED
        if b.min == 1:
            m = x & y
            return (m, m, b), Status.SUBSUMED if m.is_fixed() else Status.FIXPOINT
        if b.max == 0:
            if x.is_fixed():
                y = y.remove(x.min)
            elif y.is_fixed():
                x = x.remove(y.min)
            if x.is_empty() or y.is_empty():
                return None, Status.FAILED
            done = (x & y).is_empty()
            return (x, y, b), Status.SUBSUMED if done else Status.FIXPOINT
        return (x, y, b), Status.FIXPOINT


def reified_eq(x: VarId, y: VarId, b: VarId) -> Propagator:
    _need((x, y), Sort.INT, "reified_eq")
    _need((b,), Sort.BOOL, "reified_eq")
    return ReifiedEq((x, y, b))


# ---------------------------------------------------------- view channels


class ViewChannel(Propagator):
    """Domain complete ``view(x) = x2``: the view constraint of a decomposition."""

    name = "channel"
    level = Level.DOMAIN
    idempotent = True

    def __init__(self, vars, view: View) -> None:
        super().__init__(vars)
        self.view = view

    def filter(self, doms):
        x, x2 = doms
        nx = x & self.view.preimage(x2)
        if nx.is_empty():
            return None, Status.FAILED
        nx2 = x2 & self.view.image(nx)
        if nx2.is_empty():
            return None, Status.FAILED
        return (nx, nx2), Status.SUBSUMED if nx.is_fixed() else Status.FIXPOINT

    def __repr__(self) -> str:
        return f"channel({self.view!r}[{self.vars[0]}] = {self.vars[1]})"


def view_channel(x: VarId, x2: VarId, view: View) -> Propagator:
    return ViewChannel((x, x2), view)


CATALOG = {
    "eq": eq,
    "max": max_ternary,
    "linear": linear_eq_unit,
    "linear_neq": linear_neq_unit,
    "card_geq": bool_card_geq,
    "or": bool_or_n,
    "eqv": bool_eqv,
    "distinct": distinct,
    "element": element_vals,
    "mult": mult_ppp,
    "intersect": set_intersect,
    "subset": subset,
    "reified_eq": reified_eq,
}

__all__ = [
    "BOOL_FULL",
    "CATALOG",
    "bool_and",
    "bool_card_geq",
    "bool_eqv",
    "bool_or_n",
    "distinct",
    "element_vals",
    "eq",
    "linear_eq_unit",
    "linear_neq_unit",
    "linear_relaxation",
    "max_ternary",
    "mult_ppp",
    "mult_relaxation",
    "reified_eq",
    "set_intersect",
    "subset",
    "view_channel",
]
