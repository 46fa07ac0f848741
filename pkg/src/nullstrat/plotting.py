"""Figures for ``nullstrat run --report``.  Uses the non-interactive Agg backend."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _planar(coords: Sequence) -> tuple[float, float]:
    # orthonormal-ish chart of the plane x1 + x2 + x3 = 0
    x1, x2, x3 = (float(c) for c in coords)
    return (x1 - x2) / 2 ** 0.5, (x1 + x2 - 2 * x3) / 6 ** 0.5


def plot_weight_diagram(weights: Sequence, candidates: Sequence, components: Sequence[int], path: Path,
                        title: str = "") -> Path:
    """Weights of an SL_3 module with the candidate points c; components ringed."""
    fig, ax = plt.subplots(figsize=(5, 5))
    pts = [_planar(w) for w in weights]
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=18, c="0.4", label="weights")
    cs = [_planar(c) for c in candidates]
    ax.scatter([p[0] for p in cs], [p[1] for p in cs], s=22, c="tab:blue", marker="x", label="candidates")
    comp = [cs[i] for i in components]
    ax.scatter([p[0] for p in comp], [p[1] for p in comp], s=90, facecolors="none", edgecolors="tab:red",
               label="components")
    ax.set_aspect("equal")
    ax.axis("off")
    ax.legend(loc="lower left", fontsize=7)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_series(xs: Sequence, series: dict, path: Path, xlabel: str, ylabel: str, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, ys in series.items():
        ax.plot(xs, ys, marker="o", label=name)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_verdicts(claims: Sequence[str], verdicts: Sequence[str], runtimes: Sequence[float], path: Path,
                  title: str = "") -> Path:
    colors = {"pass": "tab:green", "fail": "tab:red", "undetermined": "tab:orange"}
    fig, ax = plt.subplots(figsize=(6, 0.3 * len(claims) + 1.2))
    ys = range(len(claims))
    ax.barh(list(ys), [max(r, 1e-4) for r in runtimes], color=[colors[v] for v in verdicts])
    ax.set_yticks(list(ys))
    ax.set_yticklabels(claims, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("runtime [s]")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
