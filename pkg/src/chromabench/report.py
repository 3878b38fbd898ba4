"""Render a MetricReport as RFC-4180 CSV or Markdown, deterministically.

The same report always renders to the same bytes: no timestamps, no
environment-dependent fields, stable column order.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .harness import Metric, MetricReport, OutputFormat, SweepPoint

__all__ = [
    "render_csv",
    "render_markdown",
    "render_sweep_csv",
    "write_report",
    "write_sweep",
]

_ALPHA_COLUMNS = ("alpha_star", "alpha_residual", "alpha_iterations", "alpha_clipped_fraction")


def _fmt_metric(value: float | str) -> str:
    if isinstance(value, str):
        return value
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.2f}"


def _alpha_cells(report: MetricReport, row_alpha) -> list[str]:
    if row_alpha is None:
        return [""] * len(_ALPHA_COLUMNS)
    return [
        f"{row_alpha.alpha_star:.6f}",
        f"{row_alpha.residual:.6g}",
        str(row_alpha.iterations),
        f"{row_alpha.clipped_fraction:.6f}",
    ]


def _table(report: MetricReport) -> tuple[list[str], list[list[str]]]:
    with_alpha = Metric.HI_FID in report.metrics
    header = ["method"] + [m.value for m in report.metrics]
    if with_alpha:
        header += list(_ALPHA_COLUMNS)
    header.append("luminance_replace")

    body: list[list[str]] = []
    for row in report.rows:
        cells = [row.method] + [_fmt_metric(row.values[m]) for m in report.metrics]
        if with_alpha:
            cells += _alpha_cells(report, row.alpha)
        cells.append("on" if report.luminance_replace else "off")
        body.append(cells)
    return header, body


def render_csv(report: MetricReport) -> str:
    """One header row plus one row per method, RFC-4180 (CRLF, quoted as needed)."""
    header, body = _table(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(body)
    return buf.getvalue()


def render_markdown(report: MetricReport) -> str:
    """A titled Markdown report: provenance lines, the metric table, warnings."""
    header, body = _table(report)
    lines = [
        f"# {report.dataset_name}",
        "",
        f"- images: {report.n_images}",
        f"- extractor: {report.extractor.value}",
        f"- luminance replacement: {'on' if report.luminance_replace else 'off'}",
        f"- ground-truth mean CF: {report.gt_mean_cf:.2f}",
        "",
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for cells in body:
        lines.append("| " + " | ".join(cells) + " |")
    if report.warnings:
        lines.append("")
        lines.append("## Warnings")
        lines.append("")
        lines.extend(f"- {w}" for w in report.warnings)
    lines.append("")
    return "\n".join(lines)


def render_sweep_csv(points: list[SweepPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["alpha", "mean_cf", "fid"])
    for p in points:
        writer.writerow([f"{p.alpha:.10g}", f"{p.mean_cf:.10g}", f"{p.fid:.10g}"])
    return buf.getvalue()


def write_report(
    report: MetricReport,
    path: str | Path,
    fmt: OutputFormat = OutputFormat.CSV,
    figure: bool = True,
) -> list[Path]:
    """Write the rendered table, and by default a bar-chart figure next to it.

    Returns the paths written. The figure lands at the table path with a
    .png suffix.
    """
    path = Path(path)
    text = render_csv(report) if fmt is OutputFormat.CSV else render_markdown(report)
    path.write_bytes(text.encode("utf-8"))
    written = [path]
    if figure:
        from .figures import render_report_figure

        fig_path = path.with_suffix(".png")
        render_report_figure(report, fig_path)
        written.append(fig_path)
    return written


def write_sweep(points: list[SweepPoint], path: str | Path, figure: bool = True) -> list[Path]:
    """Write sweep points as CSV, and by default the CF-vs-FID curve next to it."""
    path = Path(path)
    path.write_bytes(render_sweep_csv(points).encode("utf-8"))
    written = [path]
    if figure:
        from .figures import render_sweep_figure

        fig_path = path.with_suffix(".png")
        render_sweep_figure(points, fig_path)
        written.append(fig_path)
    return written
