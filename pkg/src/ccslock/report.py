"""Corpus measurement: detector precision/recall and refactoring effectiveness."""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from dataclasses import asdict
from pathlib import Path

from .analysis import Detected, analyze
from .core import size, unparse
from .corpus import GenParams, generate
from .oracle import DEFAULT_BUDGET, classify
from .refactor import Strategy, refactor

FIELDS = [
    "seed", "process", "prefixes", "complete", "lock_free", "psl",
    "detected", "detected_strict",
    "d1_linear", "d1_lock_free", "d2_linear", "d2_lock_free",
]


def measure(params: GenParams, count: int, budget: int = DEFAULT_BUDGET) -> list[dict]:
    rows = []
    for i, p in enumerate(generate(params, count)):
        cls = classify(p, budget)
        detected = isinstance(analyze(p), Detected)
        row = {
            "seed": params.seed + i,
            "process": unparse(p),
            "prefixes": size(p),
            "complete": cls.complete,
            "lock_free": cls.lock_free,
            "psl": cls.potentially_self_locking,
            "detected": detected,
            "detected_strict": isinstance(analyze(p, "strict"), Detected),
        }
        for s in Strategy:
            res = refactor(p, s, budget=budget) if detected else None
            row[f"{s.value}_linear"] = res.still_linear if res else ""
            row[f"{s.value}_lock_free"] = res.output_lock_free if res else ""
        rows.append(row)
    return rows


def _frac(num: int, den: int) -> float:
    return num / den if den else 0.0


def summarize(rows: list[dict]) -> dict:
    psl = [r for r in rows if r["psl"]]
    detected = [r for r in rows if r["detected"]]
    summary = {
        "samples": len(rows),
        "complete": sum(r["complete"] for r in rows),
        "psl": len(psl),
        "detected": len(detected),
        "detected_strict": sum(r["detected_strict"] for r in rows),
        # a detection on a complete process that the oracle says is not PSL
        "unsound": sum(1 for r in detected if r["complete"] and not r["psl"]),
        "unsound_strict": sum(1 for r in rows if r["detected_strict"] and r["complete"] and not r["psl"]),
        "missed": sum(1 for r in psl if not r["detected"]),
        "recall": _frac(sum(r["detected"] for r in psl), len(psl)),
        "recall_strict": _frac(sum(r["detected_strict"] for r in psl), len(psl)),
    }
    for s in Strategy:
        k = s.value
        summary[f"{k}_linear_rate"] = _frac(sum(r[f"{k}_linear"] is True for r in detected), len(detected))
        summary[f"{k}_lock_free_rate"] = _frac(sum(r[f"{k}_lock_free"] is True for r in detected), len(detected))
    return summary


def _recall_series(rows: list[dict]) -> dict[str, dict[int, float]]:
    by_size: dict[int, list[dict]] = defaultdict(list)
    for r in rows:
        if r["psl"]:
            by_size[r["prefixes"]].append(r)
    series: dict[str, dict[int, float]] = {"relaxed": {}, "strict": {}}
    for n, group in by_size.items():
        series["relaxed"][n] = _frac(sum(r["detected"] for r in group), len(group))
        series["strict"][n] = _frac(sum(r["detected_strict"] for r in group), len(group))
    return series


def corpus_report(params: GenParams, count: int, out: Path, budget: int = DEFAULT_BUDGET) -> dict:
    """Write ``corpus.csv``, ``summary.json`` and two PNG figures into ``out``."""
    from .plotting import rate_bars, recall_by_size

    out.mkdir(parents=True, exist_ok=True)
    rows = measure(params, count, budget)
    with open(out / "corpus.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    summary = summarize(rows)
    summary["params"] = asdict(params)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    rate_bars(
        {
            "PSL": _frac(summary["psl"], summary["samples"]),
            "recall": summary["recall"],
            "recall (strict)": summary["recall_strict"],
            "d1 lock-free": summary["d1_lock_free_rate"],
            "d2 lock-free": summary["d2_lock_free_rate"],
        },
        out / "summary.png",
        title=f"{summary['samples']} processes, seed {params.seed}",
    )
    recall_by_size(_recall_series(rows), out / "recall_by_size.png")
    return summary
