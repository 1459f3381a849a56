from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from viewprop.bench import compare, plot_metrics, render_metrics, run_benchmark
from viewprop.model import load_model

MODELS = Path(__file__).resolve().parents[1] / "models"


def test_queens_small_comparison():
    model = load_model(MODELS / "queens.mod", 8)
    cmp = compare(model, reps=1, n=8)
    assert cmp.same_tree and cmp.same_results
    assert cmp.decomposed.propagators > cmp.derived.propagators
    assert cmp.relative_space > 100
    assert cmp.derived.solutions == 1


def test_metrics_fields():
    model = load_model(MODELS / "eq20.mod")
    m = run_benchmark(model, "derived", reps=2)
    assert m.reps == 2 and len(m.times_ms) == 2
    assert m.variables == 7 and m.propagators == 20
    assert m.space > m.propagators
    assert m.solutions == 1 and m.nodes >= 1


def test_render_formats():
    model = load_model(MODELS / "queens.mod", 5)
    cmp = compare(model, reps=1, n=5)
    runs = [cmp.derived, cmp.decomposed]
    text = render_metrics(runs, cmp, "text")
    assert text.count("BENCH ") == 2 and "RELATIVE time=" in text
    obj = json.loads(render_metrics(runs, cmp, "json"))
    assert obj["comparison"]["same_search_tree"] is True
    assert "root" not in obj["runs"][0]
    rows = list(csv.DictReader(io.StringIO(render_metrics(runs, None, "csv"))))
    assert [r["mode"] for r in rows] == ["derived", "decomposed"]


def test_plot_writes_png(tmp_path):
    model = load_model(MODELS / "queens.mod", 5)
    cmp = compare(model, reps=1, n=5)
    out = tmp_path / "bench.png"
    plot_metrics([cmp.derived, cmp.decomposed], out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
