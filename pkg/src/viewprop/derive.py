"""Derived propagators: a base propagator composed with a family of views."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .domains import Domain, Sort, VarId
from .errors import UsageError
from .kernel import BOUNDS, NO_EVENTS, Event, EventKind, Level, Propagator, Status, kinds_of
from .views import Classification, Const, Identity, Monotonicity, View, compose


@dataclass(frozen=True)
class Bind:
    """A family position reading store variable ``var`` through ``view``."""

    var: VarId
    view: View

    def __repr__(self) -> str:
        if self.view.is_identity:
            return str(self.var)
        return f"{self.view!r}[{self.var}]"


Entry = Union[Bind, Const]


@dataclass(frozen=True)
class ViewFamily:
    """One entry per base-propagator position."""

    entries: tuple[Entry, ...]

    @classmethod
    def of(cls, *entries: Entry | VarId) -> ViewFamily:
        return cls(tuple(Bind(e, Identity(e.sort)) if isinstance(e, VarId) else e for e in entries))

    @classmethod
    def uniform(cls, vars: Sequence[VarId], view: View) -> ViewFamily:
        return cls(tuple(Bind(v, view) for v in vars))

    @classmethod
    def identity(cls, vars: Sequence[VarId]) -> ViewFamily:
        return cls(tuple(Bind(v, Identity(v.sort)) for v in vars))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def binds(self) -> list[Bind]:
        return [e for e in self.entries if isinstance(e, Bind)]

    @property
    def vars(self) -> tuple[VarId, ...]:
        return tuple(dict.fromkeys(b.var for b in self.binds))

    @property
    def has_constants(self) -> bool:
        return any(isinstance(e, Const) for e in self.entries)

    @property
    def has_repeats(self) -> bool:
        return len(self.vars) != len(self.binds)

    @property
    def classification(self) -> Classification:
        """Weakest classification among the bound views; constants count as bijective."""
        return min((b.view.classification for b in self.binds), default=Classification.INTERVAL_BIJECTIVE)

    @property
    def is_identity(self) -> bool:
        return not self.has_constants and all(b.view.is_identity for b in self.binds)

    @property
    def exact(self) -> bool:
        """Images are exact and no variable repeats, so image∘preimage is
        the identity on every base result."""
        return all(b.view.exact_image for b in self.binds) and not self.has_repeats

    def __repr__(self) -> str:
        return "[" + ", ".join(repr(e) for e in self.entries) + "]"


def inherited_level(base: Level, classification: Classification) -> Level:
    """Strength a derived propagator inherits from its base and views."""
    if base is Level.DOMAIN:
        return Level.DOMAIN
    if classification is Classification.ARBITRARY or base is Level.WEAK:
        return Level.WEAK
    if base is Level.BOUNDS_Z and classification is Classification.INTERVAL_INJECTIVE:
        return Level.BOUNDS_R
    return base


def translate_mask(mask: EventKind, monotonicity: Monotonicity) -> EventKind:
    """Safe event translation for one position read through a view."""
    out = mask & EventKind.FIX
    rest = mask & ~EventKind.FIX
    if not rest:
        return out
    if monotonicity is Monotonicity.INCREASING:
        return out | rest
    if monotonicity is Monotonicity.DECREASING:
        swapped = rest & EventKind.DMC
        if rest & EventKind.LBC:
            swapped |= EventKind.UBC
        if rest & EventKind.UBC:
            swapped |= EventKind.LBC
        return out | swapped
    return out | EventKind.DMC


def translate_events(
    es: Sequence[EventKind] | Iterable[Event],
    family: ViewFamily,
    base_vars: Sequence[VarId] | None = None,
) -> frozenset[Event]:
    """Translate a base event set into events on the family's store variables.

    ``es`` is either one mask per family position or a set of events on
    ``base_vars``. Constant positions produce no events.
    """
    es = list(es)
    if es and isinstance(es[0], Event):
        if base_vars is None:
            raise UsageError("event sets over variables need the base variable list")
        masks = []
        for v in base_vars:
            m = NO_EVENTS
            for e in es:
                if e.var == v:
                    m |= e.kind
            masks.append(m)
    else:
        masks = [EventKind(m) for m in es]
    if len(masks) != len(family):
        raise UsageError(f"{len(masks)} event masks for {len(family)} family positions")
    out: set[Event] = set()
    for entry, m in zip(family, masks):
        if isinstance(entry, Const):
            continue
        for k in kinds_of(translate_mask(m, entry.view.monotonicity)):
            out.add(Event(k, entry.var))
    return frozenset(out)


class DerivedPropagator(Propagator):
    """``preimage ∘ base ∘ image`` over a view family.

    The base sees one domain per family position: the image of the bound
    variable's domain, or the fixed domain of a constant. Results are pulled
    back through the preimage and met per store variable.
    """

    def __init__(self, base: Propagator, family: ViewFamily) -> None:
        if len(family) != len(base.vars):
            raise UsageError(f"{base.name} has {len(base.vars)} positions, family has {len(family)}")
        entries = []
        for i, (e, s) in enumerate(zip(family, base.sorts)):
            if isinstance(e, Const):
                if (e.sort is Sort.SET) != (s is Sort.SET):
                    raise UsageError(f"position {i}: constant {e!r} does not fit sort {s.value}")
                if e.sort is not s:
                    e = Const(e.value, s)
                if s is Sort.BOOL and e.value not in (0, 1):
                    raise UsageError(f"position {i}: Boolean constant {e.value}")
            else:
                if not _sort_fits(e.view.target, s):
                    raise UsageError(f"position {i}: view {e.view!r} yields {e.view.target.value}, base needs {s.value}")
                if not _sort_fits(e.var.sort, e.view.source):
                    raise UsageError(f"position {i}: {e.var} is {e.var.sort.value}, view reads {e.view.source.value}")
            entries.append(e)
        family = ViewFamily(tuple(entries))
        super().__init__(family.vars)
        self.base = base
        self.family = family
        self.name = f"derived:{base.name}"
        self.level = inherited_level(base.level, family.classification)
        self.idempotent = base.idempotent and family.exact
        index = {v: i for i, v in enumerate(self.vars)}
        self._slots = tuple(None if isinstance(e, Const) else index[e.var] for e in family)
        self._const_doms = tuple(e.domain() if isinstance(e, Const) else None for e in family)
        self._identity = tuple(isinstance(e, Bind) and e.view.is_identity for e in family)
        counts = Counter(slot for slot in self._slots if slot is not None)
        self._repeated = tuple(slot is not None and counts[slot] > 1 for slot in self._slots)

    def position_events(self) -> tuple[EventKind, ...]:
        masks = [NO_EVENTS] * len(self.vars)
        for slot, entry, m in zip(self._slots, self.family, self.base.position_events()):
            if slot is not None:
                masks[slot] |= translate_mask(m, entry.view.monotonicity)
        return tuple(masks)

    def image(self, doms: Sequence[Domain]) -> tuple[Domain, ...]:
        out = []
        for slot, entry, cd, ident in zip(self._slots, self.family, self._const_doms, self._identity):
            if slot is None:
                out.append(cd)
            elif ident:
                out.append(doms[slot])
            else:
                out.append(entry.view.image(doms[slot]))
        return tuple(out)

    def preimage(
        self, doms: Sequence[Domain], base_out: Sequence[Domain], img: Sequence[Domain] | None = None
    ) -> list[Domain] | None:
        """Pull ``base_out`` back onto ``doms``. With ``img`` (the image the
        base ran on) unchanged positions are skipped: preimage∘image is the
        identity on every view."""
        res = list(doms)
        for i, (slot, entry, o) in enumerate(zip(self._slots, self.family, base_out)):
            if o.is_empty():
                return None
            if slot is None or (img is not None and (o is img[i] or o == img[i])):
                continue
            cur = res[slot]
            if self._identity[i] and not self._repeated[i]:
                # a contracting base already stays inside cur
                res[slot] = o
            else:
                pre = o if self._identity[i] else entry.view.preimage(o)
                res[slot] = cur & pre
            if res[slot].is_empty():
                return None
        return res

    def filter(self, doms):
        img = self.image(doms)
        out, status = self.base.filter(img)
        if out is None:
            return None, Status.FAILED
        res = self.preimage(doms, out, img)
        if res is None:
            return None, Status.FAILED
        if status is Status.SUBSUMED:
            return tuple(res), Status.SUBSUMED
        if status is Status.FIXPOINT and not self._image_matches(res, out):
            status = Status.PROGRESS
        return tuple(res), status

    def _image_matches(self, res: Sequence[Domain], base_out: Sequence[Domain]) -> bool:
        # the base fixpoint carries over iff the result maps back onto it
        if self.family.exact:
            return True
        for slot, entry, o in zip(self._slots, self.family, base_out):
            if slot is not None and entry.view.image(res[slot]) != o:
                return False
        return True

    def relaxation(self):
        base_relax = self.base.relaxation()
        if base_relax is None or self.family.has_repeats:
            return None
        if any(b.view.affine is None for b in self.family.binds):
            return None
        slots = self._slots
        family = self.family
        n = len(self.vars)

        def relax(box):
            ibox = []
            for slot, entry in zip(slots, family):
                if slot is None:
                    k = Fraction(entry.value)
                    ibox.append((k, k))
                else:
                    ibox.append(_affine_box(entry.view.affine, box[slot]))
            proj = base_relax(ibox)
            if proj is None:
                return None
            out = [None] * n
            for slot, entry, iv in zip(slots, family, proj):
                if slot is not None:
                    out[slot] = _affine_unbox(entry.view.affine, iv)
            return out

        return relax

    def __repr__(self) -> str:
        return f"{self.base.name}{self.family!r}"


def _sort_fits(have: Sort, want: Sort) -> bool:
    # Booleans are integers in {0,1}; a Boolean view may read an Int position
    if have is want:
        return True
    return {have, want} == {Sort.INT, Sort.BOOL} and have is Sort.BOOL


def _affine_box(affine: tuple[int, int], iv: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    s, o = affine
    a, b = s * iv[0] + o, s * iv[1] + o
    return (a, b) if a <= b else (b, a)


def _affine_unbox(affine: tuple[int, int], iv: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    s, o = affine
    a, b = Fraction(iv[0] - o, s), Fraction(iv[1] - o, s)
    return (a, b) if a <= b else (b, a)


def derive(base: Propagator, family: ViewFamily | Sequence[Entry | VarId]) -> DerivedPropagator:
    """Build the derived propagator for ``base`` read through ``family``.

    A derived base is flattened: its views are composed with the outer
    family so that only one wrapper layer remains.
    """
    if not isinstance(family, ViewFamily):
        family = ViewFamily.of(*family)
    if isinstance(base, DerivedPropagator):
        if len(family) != len(base.vars):
            raise UsageError(f"{base!r} has {len(base.vars)} positions, family has {len(family)}")
        outer = dict(zip(base.vars, family))
        entries: list[Entry] = []
        for e in base.family:
            if isinstance(e, Const):
                entries.append(e)
                continue
            o = outer[e.var]
            if isinstance(o, Const):
                entries.append(Const(e.view.map(o.value), e.view.target))
            else:
                entries.append(Bind(o.var, compose(e.view, o.view)))
        return DerivedPropagator(base.base, ViewFamily(tuple(entries)))
    return DerivedPropagator(base, family)


__all__ = [
    "BOUNDS",
    "Bind",
    "DerivedPropagator",
    "Entry",
    "ViewFamily",
    "derive",
    "inherited_level",
    "translate_events",
    "translate_mask",
]
