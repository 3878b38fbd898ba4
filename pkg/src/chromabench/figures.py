"""Matplotlib figures rendered next to the delimited reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import MetricReport, SweepPoint

__all__ = ["render_report_figure", "render_sweep_figure"]

_DPI = 110


def render_report_figure(report: MetricReport, path: str | Path) -> None:
    """One bar chart per metric, methods on the x axis.

    Cells holding errors or infinities are left out of their chart.
    """
    metrics = list(report.metrics)
    ncols = min(3, max(1, len(metrics)))
    nrows = math.ceil(len(metrics) / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.0 * ncols, 3.2 * nrows), squeeze=False
    )
    for i, metric in enumerate(metrics):
        ax = axes[i // ncols][i % ncols]
        names = []
        values = []
        for row in report.rows:
            v = row.values[metric]
            if isinstance(v, float) and math.isfinite(v):
                names.append(row.method)
                values.append(v)
        ax.set_title(metric.value)
        if values:
            ax.bar(range(len(values)), values, color="#4878a8")
            ax.set_xticks(range(len(values)))
            ax.set_xticklabels(names, rotation=20, ha="right", fontsize=8)
        else:
            ax.text(0.5, 0.5, "no finite values", ha="center", va="center", fontsize=9)
            ax.set_xticks([])
        ax.grid(axis="y", alpha=0.3)
    for j in range(len(metrics), nrows * ncols):
        axes[j // ncols][j % ncols].axis("off")
    fig.suptitle(f"{report.dataset_name} ({report.n_images} images)")
    fig.tight_layout(rect=(0, 0, 1, 0.95))
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_sweep_figure(points: list[SweepPoint], path: str | Path) -> None:
    """FID against mean colorfulness as chroma scaling moves the set."""
    fig, ax = plt.subplots(figsize=(5.0, 3.8))
    xs = [p.mean_cf for p in points]
    ys = [p.fid for p in points]
    order = sorted(range(len(points)), key=lambda i: points[i].alpha)
    ax.plot([xs[i] for i in order], [ys[i] for i in order], "o-", color="#4878a8")
    for p in points:
        ax.annotate(
            f"{p.alpha:g}",
            (p.mean_cf, p.fid),
            textcoords="offset points",
            xytext=(4, 4),
            fontsize=8,
        )
    ax.set_xlabel("mean colorfulness")
    ax.set_ylabel("FID vs. original set")
    ax.set_title("saturation sweep")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
