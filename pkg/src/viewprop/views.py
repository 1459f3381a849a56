"""Injective variable views and their domain image/preimage transforms."""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .domains import (
    DEFAULT_INT_UNIVERSE,
    EMPTY_INT,
    EMPTY_SET,
    Domain,
    IntDomain,
    SetDomain,
    Sort,
    Value,
    domain_space,
    fixed_domain,
    hull_of_values,
)
from .errors import ContractViolation, UniverseOverflow, UsageError


class Classification(enum.IntEnum):
    """How a view commutes with the convex hull; larger is stronger."""

    ARBITRARY = 0
    INTERVAL_INJECTIVE = 1
    INTERVAL_BIJECTIVE = 2

    def __str__(self) -> str:
        return {0: "arbitrary", 1: "interval-injective", 2: "interval-bijective"}[int(self)]


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NONE = "none"


class View:
    """An injective value map ``source -> target`` applied to one variable."""

    source: Sort
    target: Sort
    classification = Classification.ARBITRARY
    monotonicity = Monotonicity.NONE
    exact_image = True
    # (scale, offset) when the map is v -> scale*v + offset on the reals
    affine: tuple[int, int] | None = None

    def map(self, v: Value) -> Value:
        raise NotImplementedError

    def unmap(self, w: Value) -> Value | None:
        raise NotImplementedError

    def image(self, d: Domain, universe: tuple[int, int] = DEFAULT_INT_UNIVERSE) -> Domain:
        raise NotImplementedError

    def preimage(self, d: Domain) -> Domain:
        raise NotImplementedError

    @property
    def is_identity(self) -> bool:
        return False


@dataclass(frozen=True)
class Identity(View):
    sort: Sort = Sort.INT

    classification = Classification.INTERVAL_BIJECTIVE
    monotonicity = Monotonicity.INCREASING

    @property
    def source(self) -> Sort:
        return self.sort

    @property
    def target(self) -> Sort:
        return self.sort

    @property
    def affine(self):
        return None if self.sort is Sort.SET else (1, 0)

    @property
    def is_identity(self) -> bool:
        return True

    def map(self, v):
        return v

    def unmap(self, w):
        return w

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        return d

    def preimage(self, d):
        return d

    def __repr__(self) -> str:
        return "identity"


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _check_universe(d: IntDomain, universe: tuple[int, int]) -> IntDomain:
    if d.ranges and (d.min < universe[0] or d.max > universe[1]):
        raise UniverseOverflow(f"view image {d!r} leaves integer universe {universe}")
    return d


@dataclass(frozen=True)
class Linear(View):
    """``v -> scale*v + offset`` on integer or Boolean values."""

    scale: int
    offset: int = 0
    sort: Sort = Sort.INT

    def __post_init__(self) -> None:
        if self.scale == 0:
            raise UsageError("scale view needs a non-zero factor")
        if self.sort is Sort.SET:
            raise UsageError("linear views act on integer or Boolean values")

    @property
    def source(self) -> Sort:
        return self.sort

    @property
    def target(self) -> Sort:
        return self.sort

    @property
    def classification(self) -> Classification:
        if abs(self.scale) == 1:
            return Classification.INTERVAL_BIJECTIVE
        return Classification.INTERVAL_INJECTIVE

    @property
    def monotonicity(self) -> Monotonicity:
        return Monotonicity.INCREASING if self.scale > 0 else Monotonicity.DECREASING

    @property
    def affine(self) -> tuple[int, int]:
        return (self.scale, self.offset)

    def map(self, v):
        return self.scale * v + self.offset

    def unmap(self, w):
        q, r = divmod(w - self.offset, self.scale)
        return q if r == 0 else None

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        if not d.ranges:
            return d
        s, o = self.scale, self.offset
        if s == 1:
            out = d.shift(o)
        elif s == -1:
            out = d.negate().shift(o)
        elif s > 0:
            out = IntDomain(tuple((s * v + o, s * v + o) for v in d))
        else:
            out = IntDomain(tuple((s * v + o, s * v + o) for v in reversed(list(d))))
        if self.sort is Sort.BOOL:
            return out
        return _check_universe(out, universe)

    def preimage(self, d):
        if not d.ranges:
            return d
        s, o = self.scale, self.offset
        if s == 1:
            return d.shift(-o)
        if s == -1:
            return d.shift(-o).negate()
        ranges = []
        for lo, hi in d.ranges:
            if s > 0:
                a, b = _ceil_div(lo - o, s), _floor_div(hi - o, s)
            else:
                a, b = _ceil_div(hi - o, s), _floor_div(lo - o, s)
            if a <= b:
                ranges.append((a, b))
        return IntDomain.from_ranges(ranges)

    def __repr__(self) -> str:
        s, o = self.scale, self.offset
        if self.sort is Sort.BOOL and (s, o) == (-1, 1):
            return "bool_neg"
        if s == -1 and o == 0:
            return "minus"
        if s == 1:
            return f"offset({o})"
        if o == 0:
            return f"scale({s})"
        return f"linear({s},{o})"


@dataclass(frozen=True)
class SetComplement(View):
    """``s -> U \\ s`` on sets inside the universe ``U``."""

    universe: frozenset

    classification = Classification.INTERVAL_BIJECTIVE
    monotonicity = Monotonicity.DECREASING
    source = Sort.SET
    target = Sort.SET

    def map(self, v):
        if not v <= self.universe:
            raise UniverseOverflow(f"{set(v)} is not inside the set universe")
        return self.universe - v

    def unmap(self, w):
        return self.universe - w if w <= self.universe else None

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        if d.is_empty():
            return d
        if not d.ub <= self.universe:
            raise UniverseOverflow(f"{d!r} is not inside the set universe")
        return SetDomain(self.universe - d.ub, self.universe - d.lb)

    def preimage(self, d):
        if d.is_empty() or not d.lb <= self.universe:
            return EMPTY_SET
        return SetDomain(self.universe - d.ub, self.universe - d.lb)

    def __repr__(self) -> str:
        return "complement"


@dataclass(frozen=True)
class Singleton(View):
    """Channels an integer variable to the set variable ``{v}``.

    The image of an integer domain ``D`` is encoded as ``(lb, ub)`` with
    ``ub = D`` and ``lb = D`` only when ``D`` is fixed; the exact image is not
    an interval of sets. The preimage is exact, so preimage∘image is the
    identity.
    """

    classification = Classification.ARBITRARY
    monotonicity = Monotonicity.NONE
    exact_image = False
    source = Sort.INT
    target = Sort.SET

    def map(self, v):
        return frozenset((v,))

    def unmap(self, w):
        if len(w) != 1:
            return None
        (v,) = w
        return v

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        if not d.ranges:
            return EMPTY_SET
        ub = frozenset(d)
        return SetDomain(ub if len(ub) == 1 else frozenset(), ub)

    def preimage(self, d):
        if d.is_empty() or len(d.lb) > 1:
            return EMPTY_INT
        if d.lb:
            (v,) = d.lb
            return IntDomain.single(v) if v in d.ub else EMPTY_INT
        return IntDomain.of(d.ub)

    def __repr__(self) -> str:
        return "singleton"


class Permute(View):
    """Injective lookup table on a finite set of integers.

    Values outside the table have no image. Tables carry no order
    guarantee, so the view is classified arbitrary.
    """

    classification = Classification.ARBITRARY
    monotonicity = Monotonicity.NONE
    source = Sort.INT
    target = Sort.INT

    def __init__(self, table: Mapping[int, int]) -> None:
        self.table = dict(sorted(table.items()))
        self.inverse = {w: v for v, w in self.table.items()}
        if len(self.inverse) != len(self.table):
            raise UsageError("permutation view must be injective")

    def map(self, v):
        try:
            return self.table[v]
        except KeyError:
            raise UniverseOverflow(f"{v} is outside the permutation table") from None

    def unmap(self, w):
        return self.inverse.get(w)

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        return _check_universe(IntDomain.of(self.map(v) for v in d), universe)

    def preimage(self, d):
        return IntDomain.of(v for v, w in self.table.items() if w in d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permute) and self.table == other.table

    def __hash__(self) -> int:
        return hash(tuple(self.table.items()))

    def __repr__(self) -> str:
        return "permute(" + ",".join(f"{v}:{w}" for v, w in self.table.items()) + ")"


_MONO = {
    (Monotonicity.INCREASING, Monotonicity.INCREASING): Monotonicity.INCREASING,
    (Monotonicity.DECREASING, Monotonicity.DECREASING): Monotonicity.INCREASING,
    (Monotonicity.INCREASING, Monotonicity.DECREASING): Monotonicity.DECREASING,
    (Monotonicity.DECREASING, Monotonicity.INCREASING): Monotonicity.DECREASING,
}


class Composed(View):
    """``outer ∘ inner``: apply ``inner`` first."""

    def __init__(self, outer: View, inner: View) -> None:
        self.outer = outer
        self.inner = inner
        self.source = inner.source
        self.target = outer.target
        self.classification = min(outer.classification, inner.classification)
        self.monotonicity = _MONO.get((outer.monotonicity, inner.monotonicity), Monotonicity.NONE)
        self.exact_image = outer.exact_image and inner.exact_image
        if outer.affine is not None and inner.affine is not None:
            (s1, o1), (s2, o2) = outer.affine, inner.affine
            self.affine = (s1 * s2, s1 * o2 + o1)
        else:
            self.affine = None

    def map(self, v):
        return self.outer.map(self.inner.map(v))

    def unmap(self, w):
        u = self.outer.unmap(w)
        return None if u is None else self.inner.unmap(u)

    def image(self, d, universe=DEFAULT_INT_UNIVERSE):
        return self.outer.image(self.inner.image(d, universe), universe)

    def preimage(self, d):
        return self.inner.preimage(self.outer.preimage(d))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Composed) and (self.outer, self.inner) == (other.outer, other.inner)

    def __hash__(self) -> int:
        return hash((self.outer, self.inner))

    def __repr__(self) -> str:
        return f"{self.outer!r}∘{self.inner!r}"


@dataclass(frozen=True)
class Const:
    """A constant view: a pseudo-variable fixed to ``value``."""

    value: Value
    sort: Sort = Sort.INT

    def domain(self) -> Domain:
        return fixed_domain(self.sort, self.value)

    def __repr__(self) -> str:
        if self.sort is Sort.SET:
            return "const({" + ",".join(map(str, sorted(self.value))) + "})"
        return f"const({self.value})"


# constructors


def identity(sort: Sort = Sort.INT) -> View:
    return Identity(sort)


def linear(scale: int, offset: int = 0, sort: Sort = Sort.INT) -> View:
    if scale == 1 and offset == 0:
        return Identity(sort)
    return Linear(scale, offset, sort)


def bool_neg() -> View:
    return Linear(-1, 1, Sort.BOOL)


def minus() -> View:
    return Linear(-1, 0)


def offset(o: int) -> View:
    return linear(1, o)


def scale(a: int) -> View:
    return linear(a, 0)


def set_complement(universe: Iterable[int]) -> View:
    return SetComplement(frozenset(universe))


def singleton() -> View:
    return Singleton()


def permute(table: Mapping[int, int]) -> View:
    return Permute(table)


def constant(value: Value, sort: Sort | None = None) -> Const:
    if sort is None:
        sort = Sort.SET if isinstance(value, frozenset) else Sort.INT
    if sort is Sort.SET:
        value = frozenset(value)
    return Const(value, sort)


def compose(outer: View, inner: View) -> View:
    """View that applies ``inner`` and then ``outer``."""
    bool_into_int = inner.target is Sort.BOOL and outer.source is Sort.INT
    if inner.target is not outer.source and not bool_into_int:
        raise UsageError(f"cannot compose {outer!r} after {inner!r}: sort mismatch")
    if inner.is_identity and not bool_into_int:
        return outer
    if outer.is_identity and not bool_into_int:
        return inner
    if isinstance(outer, Linear) and isinstance(inner, Linear) and outer.sort is inner.sort:
        (s1, o1), (s2, o2) = outer.affine, inner.affine
        return linear(s1 * s2, s1 * o2 + o1, inner.sort)
    return Composed(outer, inner)


def image_domain(view: View, d: Domain, universe: tuple[int, int] = DEFAULT_INT_UNIVERSE) -> Domain:
    return view.image(d, universe)


def preimage_domain(view: View, d: Domain) -> Domain:
    return view.preimage(d)


# classification


def _nonempty_subsets(values: Sequence[Value]):
    for k in range(1, len(values) + 1):
        yield from itertools.combinations(values, k)


def interval_injective_witness(view: View, values: Sequence[Value]):
    """First value set ``c`` inside the image whose hull does not pull back
    to the hull of its preimage, or None."""
    image_vals = [view.map(v) for v in values]
    for c in _nonempty_subsets(image_vals):
        lhs = view.preimage(hull_of_values(view.target, c))
        rhs = hull_of_values(view.source, [view.unmap(w) for w in c])
        if lhs != rhs:
            return c
    return None


def interval_bijective_witness(view: View, values: Sequence[Value]):
    """First domain ``d`` whose hull maps to something other than the hull
    of its image, or None."""
    for d in domain_space(view.source, values):
        lhs = view.image(d.hull())
        img = view.image(d)
        rhs = img.hull()
        if lhs != rhs:
            return d
    return None


def classify(view: View, values: Sequence[Value]) -> Classification:
    """Strongest classification that verifiably holds on ``values``.

    Raises :class:`ContractViolation` if the view declares a stronger class.
    """
    values = list(values)
    if interval_injective_witness(view, values) is not None:
        verified = Classification.ARBITRARY
    elif interval_bijective_witness(view, values) is not None:
        verified = Classification.INTERVAL_INJECTIVE
    else:
        verified = Classification.INTERVAL_BIJECTIVE
    if view.classification > verified:
        raise ContractViolation(f"{view!r} declares {view.classification} but only {verified} holds")
    return verified


def check_injective(view: View, values: Sequence[Value]) -> tuple[Value, Value] | None:
    """Return two values with the same image, or None if ``map`` is injective."""
    seen: dict = {}
    for v in values:
        w = view.map(v)
        if w in seen:
            return seen[w], v
        seen[w] = v
    return None


EMPTY_FOR = {Sort.INT: EMPTY_INT, Sort.BOOL: EMPTY_INT, Sort.SET: EMPTY_SET}
