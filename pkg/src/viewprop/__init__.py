"""Finite-domain propagation with propagators derived through views."""

from __future__ import annotations

from .derive import Bind, DerivedPropagator, ViewFamily, derive
from .domains import DomainStore, IntDomain, SetDomain, Sort, Universe, VarId
from .kernel import Engine, EventKind, Level, Propagator, Status, run_fixpoint
from .report import CheckReport

__all__ = [
    "Bind",
    "CheckReport",
    "DerivedPropagator",
    "DomainStore",
    "Engine",
    "EventKind",
    "IntDomain",
    "Level",
    "Propagator",
    "SetDomain",
    "Sort",
    "Status",
    "Universe",
    "VarId",
    "ViewFamily",
    "derive",
    "run_fixpoint",
]
