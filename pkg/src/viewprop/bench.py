"""Derived versus decomposed benchmarks on model files."""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .model import Model
from .search import solve

MODES = ("derived", "decomposed")
CSV_FIELDS = (
    "model", "mode", "n", "reps", "time_ms", "variables", "propagators",
    "space", "executions", "nodes", "failures", "solutions",
)


@dataclass
class Metrics:
    """One benchmark run. ``space`` is domain cells at the largest store
    seen plus the number of propagators; ``time_ms`` is the median over the
    measured reps (a warmup run is discarded)."""

    model: str
    mode: str
    n: int | None
    reps: int
    time_ms: float
    variables: int
    propagators: int
    space: int
    executions: int
    nodes: int
    failures: int
    solutions: int
    times_ms: list[float] = field(default_factory=list)
    # projected root store and solutions, for comparing modes
    root: str = ""
    found: list[str] = field(default_factory=list)

    def row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_FIELDS}


def run_benchmark(model: Model, mode: str, reps: int = 11, *, n: int | None = None) -> Metrics:
    store, props = model.compile(mode)
    limit = {"none": 0, "first": 1, "all": None}[model.solve]
    originals = model.variables
    times = []
    result = None
    for k in range(reps + 1):
        t0 = time.perf_counter()
        result = solve(store, props, originals, limit=limit, search=limit != 0)
        elapsed = (time.perf_counter() - t0) * 1000
        if k:
            times.append(elapsed)
    stats = result.stats
    root = "failed" if result.root_failed else result.root.restrict(originals).encode()
    found = [";".join(f"{v}={s[v]}" for v in originals) for s in result.solutions]
    return Metrics(
        model=Path(model.source).stem,
        mode=mode,
        n=n,
        reps=reps,
        time_ms=round(statistics.median(times), 3),
        variables=len(store),
        propagators=len(props),
        space=stats.peak_cells + len(props),
        executions=stats.executions,
        nodes=stats.nodes,
        failures=stats.failures,
        solutions=stats.solutions,
        times_ms=[round(t, 3) for t in times],
        root=root,
        found=found,
    )


@dataclass
class Comparison:
    derived: Metrics
    decomposed: Metrics

    @property
    def relative_time(self) -> float:
        return 100.0 * self.decomposed.time_ms / max(self.derived.time_ms, 1e-9)

    @property
    def relative_space(self) -> float:
        return 100.0 * self.decomposed.space / self.derived.space

    @property
    def same_tree(self) -> bool:
        return self.derived.nodes == self.decomposed.nodes and self.derived.failures == self.decomposed.failures

    @property
    def same_results(self) -> bool:
        return self.derived.root == self.decomposed.root and self.derived.found == self.decomposed.found

    def summary(self) -> dict:
        return {
            "relative_time_pct": round(self.relative_time, 2),
            "relative_space_pct": round(self.relative_space, 2),
            "same_search_tree": self.same_tree,
            "same_results": self.same_results,
        }


def compare(model: Model, reps: int = 11, *, n: int | None = None) -> Comparison:
    return Comparison(run_benchmark(model, "derived", reps, n=n), run_benchmark(model, "decomposed", reps, n=n))


# rendering


def render_metrics(runs: list[Metrics], comparison: Comparison | None, fmt: str) -> str:
    if fmt == "json":
        obj = {"runs": [_public(m) for m in runs]}
        if comparison is not None:
            obj["comparison"] = comparison.summary()
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for m in runs:
            w.writerow(m.row())
        return buf.getvalue()
    lines = []
    for m in runs:
        lines.append(
            f"BENCH {m.model} mode={m.mode} time_ms={m.time_ms} space={m.space} vars={m.variables} "
            f"props={m.propagators} executions={m.executions} nodes={m.nodes} solutions={m.solutions}"
        )
    if comparison is not None:
        s = comparison.summary()
        lines.append(
            f"RELATIVE time={s['relative_time_pct']}% space={s['relative_space_pct']}% "
            f"same_tree={s['same_search_tree']} same_results={s['same_results']}"
        )
    return "\n".join(lines) + "\n"


def _public(m: Metrics) -> dict:
    d = asdict(m)
    d.pop("root")
    d.pop("found")
    return d


def plot_metrics(runs: list[Metrics], path: str | Path) -> None:
    """Bar chart of median time and space proxy per mode."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{m.model}\n{m.mode}" for m in runs]
    colors = ["tab:blue" if m.mode == "derived" else "tab:orange" for m in runs]
    fig, (ax_t, ax_s) = plt.subplots(1, 2, figsize=(max(6, 1.6 * len(runs) + 2), 3.8))
    ax_t.bar(labels, [m.time_ms for m in runs], color=colors)
    ax_t.set_ylabel("median time (ms)")
    ax_s.bar(labels, [m.space for m in runs], color=colors)
    ax_s.set_ylabel("space proxy (cells + propagators)")
    for ax in (ax_t, ax_s):
        ax.tick_params(axis="x", labelsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


__all__ = ["Comparison", "MODES", "Metrics", "compare", "plot_metrics", "render_metrics", "run_benchmark"]
