"""Line-oriented model files.

A model file is a Jinja2 template (rendered with ``n``) whose lines follow::

    var int <name> <lo> <hi>
    var bool <name>
    var set <name> of <lo>..<hi>
    con linear <c> <coef>*<name> ... eq|neq
    con distinct <offset>+<name> ...
    con max <x> <y> <z>
    con element <label> idx <x> [+<o>] val <y> of <c1,...,cn>
    con or <name> ... = <name>
    con card geq|leq <c> <name> ...
    con intersect <x> <y> <z>
    con member <intvar> <setvar>
    solve none|all|first

Blank lines and ``#`` comments are ignored. Every constraint is a catalog
propagator over placeholder positions plus a view family binding the
positions to model variables; coefficients and offsets become views.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import jinja2

from . import propagators as P
from . import views as V
from .decompose import decompose
from .derive import Bind, ViewFamily, derive
from .domains import DomainStore, Sort, VarId
from .errors import ModelError, UsageError
from .kernel import Propagator

SOLVE_MODES = ("none", "all", "first")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_\[\]]*\Z")
_INT = re.compile(r"[+-]?\d+\Z")


@dataclass
class ModelConstraint:
    kind: str
    base: Propagator
    family: ViewFamily
    line: int

    def derived(self) -> Propagator:
        # identity families run the base directly; there is nothing to derive
        fam = self.family
        if fam.is_identity and not fam.has_repeats and tuple(v.sort for v in fam.vars) == self.base.sorts:
            return self.base.with_vars(fam.vars)
        return derive(self.base, fam)


@dataclass
class Model:
    store: DomainStore
    constraints: list[ModelConstraint] = field(default_factory=list)
    solve: str = "none"
    source: str = "<model>"

    @property
    def variables(self) -> tuple[VarId, ...]:
        return self.store.vars

    def compile(self, mode: str) -> tuple[DomainStore, list[Propagator]]:
        """Store and propagators for ``derived`` or ``decomposed`` mode."""
        if mode == "derived":
            return self.store, [c.derived() for c in self.constraints]
        if mode != "decomposed":
            raise UsageError(f"unknown mode {mode!r}")
        store = self.store
        props: list[Propagator] = []
        for c in self.constraints:
            if c.family.is_identity:
                props.append(c.derived())
                continue
            dm = decompose(c.base, c.family, store)
            store = dm.store
            props.extend(dm.propagators)
        return store, props


def _positions(sorts: list[Sort]) -> list[VarId]:
    return [VarId(i, s, f"p{i}") for i, s in enumerate(sorts)]


class _Parser:
    def __init__(self, source: str) -> None:
        self.model = Model(DomainStore(), source=source)
        self.names: dict[str, VarId] = {}
        self.solve_line: int | None = None

    def var(self, name: str, line: int, sort: Sort | None = None) -> VarId:
        v = self.names.get(name)
        if v is None:
            raise ModelError(f"unknown variable {name!r}", line)
        if sort is not None and not (v.sort is sort or (sort is Sort.INT and v.sort is Sort.BOOL)):
            raise ModelError(f"{name} is {v.sort.value}, expected {sort.value}", line)
        return v

    def parse_line(self, toks: list[str], line: int) -> None:
        head = toks[0]
        if head == "var":
            self.declare(toks[1:], line)
        elif head == "con":
            if len(toks) < 2:
                raise ModelError("constraint kind missing", line)
            handler = getattr(self, "con_" + toks[1], None)
            if handler is None:
                raise ModelError(f"unknown constraint {toks[1]!r}", line)
            base, fam = handler(toks[2:], line)
            self.model.constraints.append(ModelConstraint(toks[1], base, fam, line))
        elif head == "solve":
            if len(toks) != 2 or toks[1] not in SOLVE_MODES:
                raise ModelError("expected: solve none|all|first", line)
            if self.solve_line is not None:
                raise ModelError(f"second solve line (first on line {self.solve_line})", line)
            self.solve_line = line
            self.model.solve = toks[1]
        else:
            raise ModelError(f"unexpected {head!r}", line)

    def declare(self, toks: list[str], line: int) -> None:
        if len(toks) < 2:
            raise ModelError("incomplete variable declaration", line)
        kind, name = toks[0], toks[1]
        if not _NAME.match(name):
            raise ModelError(f"bad variable name {name!r}", line)
        if name in self.names:
            raise ModelError(f"variable {name!r} declared twice", line)
        store = self.model.store
        try:
            if kind == "int" and len(toks) == 4:
                lo, hi = _ints(toks[2:], line)
                if lo > hi:
                    raise ModelError(f"empty domain {lo}..{hi}", line)
                v = store.int_var(lo, hi, name)
            elif kind == "bool" and len(toks) == 2:
                v = store.bool_var(name)
            elif kind == "set" and len(toks) == 4 and toks[2] == "of":
                m = re.fullmatch(r"([+-]?\d+)\.\.([+-]?\d+)", toks[3])
                if not m:
                    raise ModelError(f"expected <lo>..<hi>, got {toks[3]!r}", line)
                v = store.set_var(range(int(m[1]), int(m[2]) + 1), name=name)
            else:
                raise ModelError(f"bad declaration: var {' '.join(toks)}", line)
        except UsageError as e:
            raise ModelError(str(e), line) from e
        self.names[name] = v

    # constraints: each returns (base over placeholder positions, family)

    def con_linear(self, toks, line):
        if len(toks) < 3 or toks[-1] not in ("eq", "neq"):
            raise ModelError("expected: con linear <c> <coef>*<name>... eq|neq", line)
        (c,) = _ints(toks[:1], line)
        binds = []
        for term in toks[1:-1]:
            m = re.fullmatch(r"([+-]?\d+)\*(\S+)", term)
            if not m:
                raise ModelError(f"expected <coef>*<name>, got {term!r}", line)
            a = int(m[1])
            if a == 0:
                raise ModelError("zero coefficient", line)
            binds.append(Bind(self.var(m[2], line, Sort.INT), V.scale(a)))
        pos = _positions([Sort.INT] * len(binds))
        base = P.linear_eq_unit(pos, c) if toks[-1] == "eq" else P.linear_neq_unit(pos, c)
        return base, ViewFamily(tuple(binds))

    def con_distinct(self, toks, line):
        if len(toks) < 2:
            raise ModelError("distinct needs at least two terms", line)
        binds = []
        for term in toks:
            m = re.fullmatch(r"([+-]?\d+)\+(\S+)", term)
            if not m:
                raise ModelError(f"expected <offset>+<name>, got {term!r}", line)
            binds.append(Bind(self.var(m[2], line, Sort.INT), V.offset(int(m[1]))))
        base = P.distinct(_positions([Sort.INT] * len(binds)), "weak" if len(binds) > 6 else "domain")
        return base, ViewFamily(tuple(binds))

    def con_max(self, toks, line):
        if len(toks) != 3:
            raise ModelError("expected: con max <x> <y> <z>", line)
        vs = [self.var(t, line, Sort.INT) for t in toks]
        return P.max_ternary(*_positions([Sort.INT] * 3)), ViewFamily.of(*vs)

    def con_element(self, toks, line):
        # <label> idx <x> [+<o>] val <y> of <c1,...,cn>
        if len(toks) < 6 or toks[1] != "idx":
            raise ModelError("expected: con element <label> idx <x> [+<o>] val <y> of <c1,...,cn>", line)
        x = self.var(toks[2], line, Sort.INT)
        rest = toks[3:]
        off = 0
        if rest and rest[0].startswith("+"):
            (off,) = _ints([rest[0][1:]], line)
            rest = rest[1:]
        if len(rest) != 4 or rest[0] != "val" or rest[2] != "of":
            raise ModelError("expected: val <y> of <c1,...,cn>", line)
        y = self.var(rest[1], line, Sort.INT)
        cs = _ints(rest[3].split(","), line)
        pos = _positions([Sort.INT] * 2)
        fam = ViewFamily((Bind(x, V.offset(off)), Bind(y, V.identity())))
        return P.element_vals(cs, *pos), fam

    def con_or(self, toks, line):
        if len(toks) < 3 or toks[-2] != "=":
            raise ModelError("expected: con or <name>... = <name>", line)
        xs = [self.var(t, line, Sort.BOOL) for t in toks[:-2]]
        y = self.var(toks[-1], line, Sort.BOOL)
        pos = _positions([Sort.BOOL] * (len(xs) + 1))
        return P.bool_or_n(pos[:-1], pos[-1]), ViewFamily.of(*xs, y)

    def con_card(self, toks, line):
        if len(toks) < 3 or toks[0] not in ("geq", "leq"):
            raise ModelError("expected: con card geq|leq <c> <name>...", line)
        (c,) = _ints(toks[1:2], line)
        xs = [self.var(t, line, Sort.BOOL) for t in toks[2:]]
        n = len(xs)
        if not 0 <= c <= n:
            raise ModelError(f"cardinality {c} outside 0..{n}", line)
        pos = _positions([Sort.BOOL] * n)
        if toks[0] == "geq":
            return P.bool_card_geq(pos, c), ViewFamily.of(*xs)
        # at most c true is at least n-c false
        return P.bool_card_geq(pos, n - c), ViewFamily.uniform(xs, V.bool_neg())

    def con_intersect(self, toks, line):
        if len(toks) != 3:
            raise ModelError("expected: con intersect <x> <y> <z>", line)
        vs = [self.var(t, line, Sort.SET) for t in toks]
        return P.set_intersect(*_positions([Sort.SET] * 3)), ViewFamily.of(*vs)

    def con_member(self, toks, line):
        if len(toks) != 2:
            raise ModelError("expected: con member <intvar> <setvar>", line)
        x = self.var(toks[0], line, Sort.INT)
        s = self.var(toks[1], line, Sort.SET)
        pos = _positions([Sort.SET, Sort.SET])
        return P.subset(*pos), ViewFamily((Bind(x, V.singleton()), Bind(s, V.identity(Sort.SET))))


def _ints(toks, line: int) -> list[int]:
    out = []
    for t in toks:
        if not _INT.match(t):
            raise ModelError(f"expected an integer, got {t!r}", line)
        out.append(int(t))
    return out


def render(text: str, n: int | None = None) -> str:
    try:
        tpl = jinja2.Environment(undefined=jinja2.StrictUndefined, keep_trailing_newline=True).from_string(text)
        return tpl.render(n=n)
    except jinja2.TemplateSyntaxError as e:
        raise ModelError(f"template: {e.message}", e.lineno) from e
    except jinja2.UndefinedError as e:
        raise ModelError(f"template: {e.message} (pass --n?)") from e
    except TypeError as e:
        # undefined names used as numbers, e.g. range(m)
        raise ModelError(f"template: {e} (pass --n?)") from e


def parse_model(text: str, n: int | None = None, source: str = "<model>") -> Model:
    """Render the template with ``n`` and parse the result."""
    parser = _Parser(source)
    for lineno, raw in enumerate(render(text, n).splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        try:
            parser.parse_line(toks, lineno)
        except ModelError:
            raise
        except UsageError as e:
            raise ModelError(str(e), lineno) from e
    return parser.model


def load_model(path: str | Path, n: int | None = None) -> Model:
    path = Path(path)
    return parse_model(path.read_text(), n, source=str(path))


__all__ = ["Model", "ModelConstraint", "SOLVE_MODES", "load_model", "parse_model", "render"]
