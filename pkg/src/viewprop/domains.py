"""Values, variable domains and domain stores.

Integer and Boolean variables share :class:`IntDomain`, a normalized list of
disjoint closed ranges; a Boolean domain is an ``IntDomain`` inside ``{0, 1}``.
Set variables use :class:`SetDomain`, the interval ``{s : lb <= s <= ub}``.
"""

from __future__ import annotations

import bisect
import enum
import itertools
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Union

from .errors import CapExceeded, UniverseOverflow, UsageError

DEFAULT_INT_UNIVERSE = (-(2**24), 2**24)
DEFAULT_ENUM_CAP = 2_000_000


class Sort(enum.Enum):
    INT = "int"
    BOOL = "bool"
    SET = "set"


@dataclass(frozen=True, slots=True)
class VarId:
    index: int
    sort: Sort
    name: str | None = field(default=None, compare=False)

    def __hash__(self) -> int:
        # the index alone; hashing the sort enum dominates store lookups otherwise
        return self.index

    def __str__(self) -> str:
        return self.name if self.name is not None else f"x{self.index}"

    def __repr__(self) -> str:
        return f"VarId({self}, {self.sort.value})"


class IntDomain:
    """Finite set of integers stored as sorted, disjoint, non-adjacent ranges."""

    __slots__ = ("ranges", "_size", "_hash")

    def __init__(self, ranges: tuple[tuple[int, int], ...] = ()) -> None:
        # trusted: callers pass normalized ranges; use from_ranges otherwise
        self.ranges = ranges
        self._size = -1
        self._hash = -1

    # construction

    @classmethod
    def interval(cls, lo: int, hi: int) -> IntDomain:
        return cls(((lo, hi),)) if lo <= hi else EMPTY_INT

    @classmethod
    def single(cls, v: int) -> IntDomain:
        return cls(((v, v),))

    @classmethod
    def of(cls, values: Iterable[int]) -> IntDomain:
        vals = sorted(set(values))
        if not vals:
            return EMPTY_INT
        out = []
        lo = hi = vals[0]
        for v in vals[1:]:
            if v == hi + 1:
                hi = v
            else:
                out.append((lo, hi))
                lo = hi = v
        out.append((lo, hi))
        return cls(tuple(out))

    @classmethod
    def from_ranges(cls, ranges: Iterable[tuple[int, int]]) -> IntDomain:
        rs = sorted((lo, hi) for lo, hi in ranges if lo <= hi)
        if not rs:
            return EMPTY_INT
        out = [rs[0]]
        for lo, hi in rs[1:]:
            plo, prev_hi = out[-1]
            if lo <= prev_hi + 1:
                if hi > prev_hi:
                    out[-1] = (plo, hi)
            else:
                out.append((lo, hi))
        return cls(tuple(out))

    # queries

    def is_empty(self) -> bool:
        return not self.ranges

    def is_fixed(self) -> bool:
        return len(self.ranges) == 1 and self.ranges[0][0] == self.ranges[0][1]

    def is_interval(self) -> bool:
        return len(self.ranges) == 1

    @property
    def min(self) -> int:
        return self.ranges[0][0]

    @property
    def max(self) -> int:
        return self.ranges[-1][1]

    @property
    def value(self) -> int:
        if not self.is_fixed():
            raise UsageError(f"domain {self} is not fixed")
        return self.ranges[0][0]

    @property
    def size(self) -> int:
        if self._size < 0:
            self._size = sum(hi - lo + 1 for lo, hi in self.ranges)
        return self._size

    def __len__(self) -> int:
        return self.size

    def __bool__(self) -> bool:
        return bool(self.ranges)

    def __contains__(self, v: object) -> bool:
        rs = self.ranges
        if not rs or not isinstance(v, int):
            return False
        i = bisect.bisect_right(rs, (v, math.inf)) - 1
        return i >= 0 and rs[i][1] >= v

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.ranges:
            yield from range(lo, hi + 1)

    def values(self) -> list[int]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if isinstance(other, IntDomain):
            return self.ranges == other.ranges
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash == -1:
            self._hash = hash(self.ranges)
        return self._hash

    def __le__(self, other: IntDomain) -> bool:
        """Subset test."""
        a, b = self.ranges, other.ranges
        if not a:
            return True
        if not b or a[0][0] < b[0][0] or a[-1][1] > b[-1][1]:
            return False
        j = 0
        nb = len(b)
        for lo, hi in a:
            while j < nb and b[j][1] < lo:
                j += 1
            if j == nb or b[j][0] > lo or b[j][1] < hi:
                return False
        return True

    def __lt__(self, other: IntDomain) -> bool:
        return self != other and self <= other

    def __and__(self, other: IntDomain) -> IntDomain:
        a, b = self.ranges, other.ranges
        if not a or not b:
            return EMPTY_INT
        if a == b:
            return self
        if a[-1][1] < b[0][0] or b[-1][1] < a[0][0]:
            return EMPTY_INT
        out = []
        i = j = 0
        na, nb = len(a), len(b)
        while i < na and j < nb:
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        t = tuple(out)
        if t == a:
            return self
        if t == b:
            return other
        return IntDomain(t)

    def __or__(self, other: IntDomain) -> IntDomain:
        return IntDomain.from_ranges(self.ranges + other.ranges)

    def __sub__(self, other: IntDomain) -> IntDomain:
        return IntDomain.of(v for v in self if v not in other)

    # pruning

    def adj_min(self, n: int) -> IntDomain:
        """Remove all values below ``n``."""
        rs = self.ranges
        if not rs or rs[0][0] >= n:
            return self
        if rs[-1][1] < n:
            return EMPTY_INT
        i = bisect.bisect_right(rs, (n, math.inf)) - 1
        if i >= 0 and rs[i][1] >= n:
            return IntDomain(((n, rs[i][1]),) + rs[i + 1 :])
        return IntDomain(rs[i + 1 :])

    def adj_max(self, n: int) -> IntDomain:
        """Remove all values above ``n``."""
        rs = self.ranges
        if not rs or rs[-1][1] <= n:
            return self
        if rs[0][0] > n:
            return EMPTY_INT
        i = bisect.bisect_right(rs, (n, math.inf)) - 1
        if rs[i][1] >= n:
            return IntDomain(rs[:i] + ((rs[i][0], n),))
        return IntDomain(rs[: i + 1])

    def restrict(self, lo: int, hi: int) -> IntDomain:
        return self.adj_min(lo).adj_max(hi)

    def remove(self, v: int) -> IntDomain:
        if v not in self:
            return self
        out = []
        for lo, hi in self.ranges:
            if lo <= v <= hi:
                if lo < v:
                    out.append((lo, v - 1))
                if v < hi:
                    out.append((v + 1, hi))
            else:
                out.append((lo, hi))
        return IntDomain(tuple(out))

    def hull(self) -> IntDomain:
        if len(self.ranges) <= 1:
            return self
        return IntDomain(((self.ranges[0][0], self.ranges[-1][1]),))

    # value transforms used by integer views

    def shift(self, o: int) -> IntDomain:
        if o == 0 or not self.ranges:
            return self
        return IntDomain(tuple((lo + o, hi + o) for lo, hi in self.ranges))

    def negate(self) -> IntDomain:
        return IntDomain(tuple((-hi, -lo) for lo, hi in reversed(self.ranges)))

    def __repr__(self) -> str:
        return "{" + ",".join(f"{lo}" if lo == hi else f"{lo}..{hi}" for lo, hi in self.ranges) + "}"


EMPTY_INT = IntDomain(())
BOOL_FULL = IntDomain(((0, 1),))


class SetDomain:
    """Interval of finite integer sets ``{s : lb <= s <= ub}``."""

    __slots__ = ("lb", "ub")

    def __init__(self, lb: Iterable[int] = (), ub: Iterable[int] = ()) -> None:
        self.lb = lb if isinstance(lb, frozenset) else frozenset(lb)
        self.ub = ub if isinstance(ub, frozenset) else frozenset(ub)

    @classmethod
    def fixed(cls, s: Iterable[int]) -> SetDomain:
        s = frozenset(s)
        return cls(s, s)

    def is_empty(self) -> bool:
        return not self.lb <= self.ub

    def __bool__(self) -> bool:
        return self.lb <= self.ub

    def is_fixed(self) -> bool:
        return self.lb == self.ub

    @property
    def value(self) -> frozenset[int]:
        if not self.is_fixed():
            raise UsageError(f"domain {self} is not fixed")
        return self.lb

    @property
    def size(self) -> int:
        if self.is_empty():
            return 0
        return 2 ** len(self.ub - self.lb)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, s: object) -> bool:
        return isinstance(s, frozenset) and self.lb <= s <= self.ub

    def __iter__(self) -> Iterator[frozenset[int]]:
        if self.is_empty():
            return
        free = sorted(self.ub - self.lb)
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                yield self.lb | frozenset(extra)

    def values(self) -> list[frozenset[int]]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetDomain):
            return NotImplemented
        e1, e2 = self.is_empty(), other.is_empty()
        if e1 or e2:
            return e1 and e2
        return self.lb == other.lb and self.ub == other.ub

    def __hash__(self) -> int:
        if self.is_empty():
            return hash("empty-set-domain")
        return hash((self.lb, self.ub))

    def __le__(self, other: SetDomain) -> bool:
        if self.is_empty():
            return True
        if other.is_empty():
            return False
        return other.lb <= self.lb and self.ub <= other.ub

    def __lt__(self, other: SetDomain) -> bool:
        return self != other and self <= other

    def __and__(self, other: SetDomain) -> SetDomain:
        if self == other:
            return self
        return SetDomain(self.lb | other.lb, self.ub & other.ub)

    def __or__(self, other: SetDomain) -> SetDomain:
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        return SetDomain(self.lb & other.lb, self.ub | other.ub)

    def hull(self) -> SetDomain:
        return self

    def __repr__(self) -> str:
        if self.is_empty():
            return "<empty>"
        return f"[{_fmt_set(self.lb)}..{_fmt_set(self.ub)}]"


EMPTY_SET = SetDomain(frozenset({0}), frozenset())

Domain = Union[IntDomain, SetDomain]
Value = Union[int, frozenset]


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def empty_domain(sort: Sort) -> Domain:
    return EMPTY_SET if sort is Sort.SET else EMPTY_INT


def fixed_domain(sort: Sort, value: Value) -> Domain:
    if sort is Sort.SET:
        return SetDomain.fixed(value)
    return IntDomain.single(value)


def domain_of_values(sort: Sort, values: Iterable[Value]) -> Domain:
    """Strongest variable domain containing ``values`` (interval hull for sets)."""
    if sort is not Sort.SET:
        return IntDomain.of(values)
    vals = list(values)
    if not vals:
        return EMPTY_SET
    return SetDomain(frozenset.intersection(*vals), frozenset.union(*vals))


def hull_of_values(sort: Sort, values: Iterable[Value]) -> Domain:
    """Strongest convex domain containing ``values``."""
    if sort is Sort.SET:
        return domain_of_values(sort, values)
    vals = list(values)
    if not vals:
        return EMPTY_INT
    return IntDomain.interval(min(vals), max(vals))


def domain_space(sort: Sort, values: Sequence[Value]) -> list[Domain]:
    """All non-empty variable domains drawn from ``values``.

    For integer sorts these are all non-empty subsets; for sets, all intervals
    whose bounds lie inside the union of ``values``.
    """
    if sort is Sort.SET:
        universe = sorted(frozenset().union(*values)) if values else []
        out: list[Domain] = []
        # each element is out, free, or in
        for states in itertools.product((0, 1, 2), repeat=len(universe)):
            lb = frozenset(e for e, s in zip(universe, states) if s == 2)
            ub = frozenset(e for e, s in zip(universe, states) if s >= 1)
            out.append(SetDomain(lb, ub))
        return out
    vals = sorted(set(values))
    out = []
    for k in range(1, len(vals) + 1):
        for combo in itertools.combinations(vals, k):
            out.append(IntDomain.of(combo))
    return out


def value_space(sort: Sort, ints: Iterable[int] = range(5), set_universe: Iterable[int] = (1, 2, 3)) -> tuple[Value, ...]:
    """Small value universe for a sort, used by the brute-force oracles."""
    if sort is Sort.BOOL:
        return (0, 1)
    if sort is Sort.INT:
        return tuple(sorted(set(ints)))
    u = sorted(set(set_universe))
    return tuple(frozenset(c) for k in range(len(u) + 1) for c in itertools.combinations(u, k))


def covering_substores(doms: Sequence[Domain]) -> Iterator[tuple[int, Domain]]:
    """Yield ``(position, domain)`` for every store that removes exactly one
    value (or, for sets, decides exactly one element) at one position."""
    for i, d in enumerate(doms):
        if isinstance(d, SetDomain):
            for e in d.ub - d.lb:
                yield i, SetDomain(d.lb | {e}, d.ub)
                yield i, SetDomain(d.lb, d.ub - {e})
        else:
            for v in d:
                yield i, d.remove(v)


def subdomains(d: Domain) -> Iterator[Domain]:
    """All sub-domains of ``d``, including the empty one."""
    if isinstance(d, SetDomain):
        if d.is_empty():
            yield d
            return
        free = sorted(d.ub - d.lb)
        for states in itertools.product((0, 1, 2), repeat=len(free)):
            lb = d.lb | {e for e, s in zip(free, states) if s == 2}
            ub = d.lb | {e for e, s in zip(free, states) if s >= 1}
            yield SetDomain(lb, ub)
        yield EMPTY_SET
        return
    vals = list(d)
    for k in range(len(vals) + 1):
        for combo in itertools.combinations(vals, k):
            yield IntDomain.of(combo)


def encode_domains(vars: Sequence[VarId], doms: Sequence[Domain]) -> str:
    return ";".join(f"{v}={d!r}" for v, d in zip(vars, doms))


class DomainStore:
    """Map from variables to variable domains; the propagation state.

    Stores are values: operations return new stores. The ``new_var`` helpers
    mutate and are meant for building a store before it is shared.
    """

    __slots__ = ("_doms", "int_universe", "set_universe")

    def __init__(
        self,
        doms: Mapping[VarId, Domain] | None = None,
        *,
        int_universe: tuple[int, int] = DEFAULT_INT_UNIVERSE,
        set_universe: Iterable[int] | None = None,
    ) -> None:
        self._doms: dict[VarId, Domain] = dict(doms or {})
        self.int_universe = int_universe
        self.set_universe = frozenset(set_universe) if set_universe is not None else None

    # building

    def new_var(self, sort: Sort, domain: Domain | None = None, name: str | None = None) -> VarId:
        var = VarId(len(self._doms), sort, name)
        if domain is None:
            if sort is Sort.BOOL:
                domain = BOOL_FULL
            elif sort is Sort.SET:
                domain = SetDomain((), self.set_universe or ())
            else:
                domain = IntDomain.interval(*self.int_universe)
        self._check_domain(var, domain)
        self._doms[var] = domain
        return var

    def int_var(self, lo: int, hi: int, name: str | None = None) -> VarId:
        return self.new_var(Sort.INT, IntDomain.interval(lo, hi), name)

    def int_var_of(self, values: Iterable[int], name: str | None = None) -> VarId:
        return self.new_var(Sort.INT, IntDomain.of(values), name)

    def bool_var(self, name: str | None = None) -> VarId:
        return self.new_var(Sort.BOOL, BOOL_FULL, name)

    def set_var(self, ub: Iterable[int], lb: Iterable[int] = (), name: str | None = None) -> VarId:
        return self.new_var(Sort.SET, SetDomain(lb, ub), name)

    def _check_domain(self, var: VarId, d: Domain) -> None:
        if var.sort is Sort.SET:
            if not isinstance(d, SetDomain):
                raise UsageError(f"{var} needs a set domain, got {d!r}")
            if self.set_universe is not None and not d.is_empty() and not d.ub <= self.set_universe:
                raise UniverseOverflow(f"{var}: {d!r} exceeds set universe")
            return
        if not isinstance(d, IntDomain):
            raise UsageError(f"{var} needs an integer domain, got {d!r}")
        if d.is_empty():
            return
        if var.sort is Sort.BOOL and not d <= BOOL_FULL:
            raise UsageError(f"{var}: Boolean domain {d!r} not inside {{0,1}}")
        lo, hi = self.int_universe
        if d.min < lo or d.max > hi:
            raise UniverseOverflow(f"{var}: {d!r} exceeds integer universe [{lo}, {hi}]")

    # mapping interface

    def __getitem__(self, var: VarId) -> Domain:
        return self._doms[var]

    def __contains__(self, var: object) -> bool:
        return var in self._doms

    def __len__(self) -> int:
        return len(self._doms)

    def __iter__(self) -> Iterator[VarId]:
        return iter(self._doms)

    @property
    def vars(self) -> tuple[VarId, ...]:
        return tuple(self._doms)

    def items(self):
        return self._doms.items()

    def as_dict(self) -> dict[VarId, Domain]:
        return dict(self._doms)

    def var_named(self, name: str) -> VarId:
        for v in self._doms:
            if v.name == name:
                return v
        raise KeyError(name)

    # value semantics

    def _with(self, doms: Mapping[VarId, Domain]) -> DomainStore:
        s = DomainStore.__new__(DomainStore)
        s._doms = dict(doms)
        s.int_universe = self.int_universe
        s.set_universe = self.set_universe
        return s

    def copy(self) -> DomainStore:
        return self._with(self._doms)

    def updated(self, changes: Mapping[VarId, Domain]) -> DomainStore:
        doms = dict(self._doms)
        for v, d in changes.items():
            if v not in doms:
                raise UsageError(f"unknown variable {v}")
            doms[v] = d
        return self._with(doms)

    def restrict(self, vars: Iterable[VarId]) -> DomainStore:
        return self._with({v: self._doms[v] for v in vars})

    def extended(self, doms: Mapping[VarId, Domain]) -> DomainStore:
        out = self._with(self._doms)
        out._doms.update(doms)
        return out

    @property
    def failed(self) -> bool:
        return any(d.is_empty() for d in self._doms.values())

    def is_assigned(self) -> bool:
        return all(d.is_fixed() for d in self._doms.values())

    def cells(self) -> int:
        """Platform-neutral size proxy: total number of domain cells."""
        total = 0
        for d in self._doms.values():
            if isinstance(d, SetDomain):
                total += len(d.lb) + len(d.ub)
            else:
                total += d.size
        return total

    def __le__(self, other: DomainStore) -> bool:
        return is_stronger(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainStore):
            return NotImplemented
        if self.failed and other.failed and set(self._doms) == set(other._doms):
            return True
        return self._doms == other._doms

    def __hash__(self) -> int:
        return hash(tuple(self._doms.items()))

    def encode(self) -> str:
        return encode_domains(list(self._doms), list(self._doms.values()))

    def __repr__(self) -> str:
        return f"DomainStore({self.encode()})"


def _same_vars(d1: DomainStore, d2: DomainStore) -> None:
    if set(d1.vars) != set(d2.vars):
        raise UsageError("stores range over different variables")


def is_stronger(d1: DomainStore, d2: DomainStore) -> bool:
    """True iff ``d1`` is pointwise a subset of ``d2``."""
    _same_vars(d1, d2)
    if d1.failed:
        return True
    if d2.failed:
        return False
    return all(d1[v] <= d2[v] for v in d1)


def meet(d1: DomainStore, d2: DomainStore) -> DomainStore:
    """Pointwise intersection, the greatest lower bound under ``is_stronger``."""
    _same_vars(d1, d2)
    return d1._with({v: d1[v] & d2[v] for v in d1})


@dataclass(frozen=True)
class ExtensionalConstraint:
    """A constraint given as the explicit set of its solutions.

    Tuples are aligned with ``vars``.
    """

    vars: tuple[VarId, ...]
    tuples: frozenset[tuple[Value, ...]]

    def __post_init__(self) -> None:
        n = len(self.vars)
        for t in self.tuples:
            if len(t) != n:
                raise UsageError(f"tuple {t} is not total over {n} variables")

    @classmethod
    def of(cls, vars: Sequence[VarId], tuples: Iterable[Sequence[Value]]) -> ExtensionalConstraint:
        return cls(tuple(vars), frozenset(tuple(t) for t in tuples))

    @classmethod
    def from_predicate(cls, vars: Sequence[VarId], universes: Sequence[Sequence[Value]], pred) -> ExtensionalConstraint:
        return cls(tuple(vars), frozenset(t for t in itertools.product(*universes) if pred(*t)))

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[tuple[Value, ...]]:
        return iter(self.tuples)

    def __contains__(self, t: object) -> bool:
        return t in self.tuples

    def __and__(self, other: ExtensionalConstraint) -> ExtensionalConstraint:
        if self.vars != other.vars:
            raise UsageError("constraints over different variable lists")
        return ExtensionalConstraint(self.vars, self.tuples & other.tuples)

    def assignments(self) -> Iterator[dict[VarId, Value]]:
        for t in sorted(self.tuples, key=_tuple_key):
            yield dict(zip(self.vars, t))

    def within(self, doms: Sequence[Domain]) -> ExtensionalConstraint:
        """``c ∩ d`` for a domain given position-wise."""
        return ExtensionalConstraint(
            self.vars, frozenset(t for t in self.tuples if all(v in d for v, d in zip(t, doms)))
        )


def _tuple_key(t: tuple) -> tuple:
    return tuple((sorted(v), 1) if isinstance(v, frozenset) else ((), v) for v in t)


def dom_of(c: ExtensionalConstraint) -> DomainStore:
    """Strongest store containing every tuple of ``c`` (failed if ``c`` is empty)."""
    cols = list(zip(*c.tuples)) if c.tuples else [() for _ in c.vars]
    return DomainStore({v: domain_of_values(v.sort, col) for v, col in zip(c.vars, cols)})


def conv_of(c: ExtensionalConstraint) -> DomainStore:
    """Strongest convex store containing every tuple of ``c``."""
    if any(v.sort is Sort.SET for v in c.vars):
        raise UsageError("conv is defined for integer and Boolean variables only")
    cols = list(zip(*c.tuples)) if c.tuples else [() for _ in c.vars]
    return DomainStore({v: hull_of_values(v.sort, col) for v, col in zip(c.vars, cols)})


def enumerate_assignments(
    d: DomainStore, vars: Sequence[VarId] | None = None, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[tuple[Value, ...]]:
    """Cartesian product of the variable domains, each assignment once.

    Raises :class:`CapExceeded` before yielding anything if the product is
    larger than ``cap``.
    """
    vars = d.vars if vars is None else tuple(vars)
    if any(d[v].is_empty() for v in vars):
        return iter(())
    size = math.prod(d[v].size for v in vars)
    if size > cap:
        raise CapExceeded(size, cap)
    return itertools.product(*(list(d[v]) for v in vars))


@dataclass(frozen=True)
class Universe:
    """Small per-sort value universes for exhaustive checking.

    ``overrides`` pins explicit value lists for individual variables.
    """

    ints: tuple[int, ...] = (0, 1, 2, 3)
    sets: tuple[int, ...] = (1, 2, 3)
    overrides: Mapping[VarId, tuple[Value, ...]] = field(default_factory=dict, hash=False, compare=False)

    def values_for(self, var: VarId) -> tuple[Value, ...]:
        if var in self.overrides:
            return tuple(self.overrides[var])
        return value_space(var.sort, self.ints, self.sets)

    def with_values(self, var: VarId, values: Iterable[Value]) -> Universe:
        ov = dict(self.overrides)
        ov[var] = tuple(values)
        return Universe(self.ints, self.sets, ov)


UniverseLike = Union[Universe, Sequence[Sequence[Value]]]


def position_values(vars: Sequence[VarId], universe: UniverseLike) -> list[tuple[Value, ...]]:
    """Resolve a universe into one value tuple per variable position."""
    if isinstance(universe, Universe):
        return [universe.values_for(v) for v in vars]
    vals = [tuple(u) for u in universe]
    if len(vals) != len(vars):
        raise UsageError(f"universe has {len(vals)} positions, expected {len(vars)}")
    return vals
