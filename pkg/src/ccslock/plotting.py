"""Figure helpers for corpus reports. Uses the Agg backend; nothing is shown."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def figsize(width: float = 6.0, height: float | None = None) -> tuple[float, float]:
    if height is None:
        height = width * (math.sqrt(5) - 1.0) / 2.0
    return width, height


def rate_bars(rates: dict[str, float], path: Path, title: str = "") -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        labels = list(rates)
        values = [rates[k] for k in labels]
        bars = ax.bar(range(len(values)), values, color="#4c72b0")
        for bar, v in zip(bars, values):
            ax.text(bar.get_x() + bar.get_width() / 2, v + 0.01, f"{v:.2f}", ha="center", va="bottom")
        ax.set_xticks(range(len(values)))
        ax.set_xticklabels(labels, rotation=30, ha="right")
        ax.set_ylim(0, 1.1)
        ax.set_ylabel("fraction")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path


def recall_by_size(series: dict[str, dict[int, float]], path: Path) -> Path:
    """One line per series, x = number of prefixes, y = fraction."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        for label, points in series.items():
            xs = sorted(points)
            ax.plot(xs, [points[x] for x in xs], marker="o", label=label)
        ax.set_xlabel("prefixes in process")
        ax.set_ylabel("detected / PSL")
        ax.set_ylim(0, 1.05)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path
