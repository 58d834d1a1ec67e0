"""Figure rendering for Grundy tables and verification reports.

Figures are written straight to files (Agg backend); the CLI offers them
alongside the CSV/JSON output. Block-structured rulesets get the value table
wrapped at the block width so the repeating column pattern is visible at a
glance.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .arith import BlockPrediction, PeriodReport
from .consecutive import ConsecutiveReport
from .engine import GrundyTable


def _block_grid(values: np.ndarray, width: int) -> np.ndarray:
    rows = math.ceil(values.size / width)
    grid = np.full((rows, width), np.nan)
    grid.ravel()[: values.size] = values
    return grid


def _draw_block_panel(ax, values: np.ndarray, width: int, title: str) -> None:
    grid = _block_grid(values, width)
    im = ax.imshow(grid, aspect="auto", interpolation="nearest", cmap="viridis")
    ax.set_title(title)
    ax.set_xlabel("offset within block")
    ax.set_ylabel("block")
    if width <= 60 and grid.shape[0] <= 14:
        for r in range(grid.shape[0]):
            for col in range(width):
                v = grid[r, col]
                if not np.isnan(v):
                    ax.text(col, r, str(int(v)), ha="center", va="center", fontsize=6, color="white")
    plt.colorbar(im, ax=ax, shrink=0.8)


def save_table_figure(table: GrundyTable, path: str, block_width: int | None = None) -> None:
    """Render a table to an image file.

    With ``block_width`` the base row is wrapped into blocks of that width
    (the complement row, which grows without bound, stays a line plot);
    otherwise both rows are step plots over the heap size.
    """
    fig, axes = plt.subplots(2, 1, figsize=(10, 7))
    ns = np.arange(table.n_max + 1)
    if block_width:
        _draw_block_panel(axes[0], np.asarray(table.base), block_width,
                          f"base-side values, wrapped at {block_width}")
    else:
        axes[0].step(ns, table.base, where="mid")
        axes[0].set_title("base-side values")
        axes[0].set_xlabel("heap size")
        axes[0].set_ylabel("value")
    axes[1].step(ns, table.complement, where="mid", color="tab:orange")
    axes[1].set_title("complement-side values")
    axes[1].set_xlabel("heap size")
    axes[1].set_ylabel("value")
    fig.suptitle(f"Grundy table for {table.rules.text}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_consecutive_figure(report: ConsecutiveReport, table: GrundyTable, path: str) -> None:
    """Engine rows with any closed-form mismatches marked."""
    fig, axes = plt.subplots(2, 1, figsize=(10, 7), sharex=True)
    ns = np.arange(table.n_max + 1)
    axes[0].step(ns, table.base, where="mid", label="engine")
    axes[0].set_title(f"base side, k={report.k}")
    axes[1].step(ns, table.complement, where="mid", color="tab:orange", label="engine")
    axes[1].set_title(f"complement side, k={report.k}")
    for m in report.mismatches:
        ax = axes[0] if m.side.value == "base" else axes[1]
        ax.plot([m.n], [m.actual], "rx", markersize=8)
        ax.plot([m.n], [m.expected], "k+", markersize=8)
    status = "exact match" if report.passed else f"{len(report.mismatches)} mismatches"
    fig.suptitle(f"closed form vs engine, k={report.k}: {status}")
    for ax in axes:
        ax.set_ylabel("value")
    axes[1].set_xlabel("heap size")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_period_figure(report: PeriodReport, table: GrundyTable, path: str) -> None:
    """Base-row blocks with conflicted offsets shaded, plus the complement row."""
    p = report.predicted_period
    fig, axes = plt.subplots(2, 1, figsize=(10, 7))
    _draw_block_panel(axes[0], np.asarray(table.base), p,
                      f"base-side values, block width p={p}")
    for e in report.block_check:
        if e.prediction is BlockPrediction.CONFLICT:
            axes[0].axvspan(e.offset - 0.5, e.offset + 0.5, color="red", alpha=0.15)
    ns = np.arange(table.n_max + 1)
    axes[1].step(ns, table.complement, where="mid", color="tab:orange")
    axes[1].axhline(2 * report.i_max, color="gray", linestyle="--",
                    label=f"2*i_max = {2 * report.i_max}")
    axes[1].set_title("complement-side values vs lower bound")
    axes[1].set_xlabel("heap size")
    axes[1].legend()
    verdict = "PASS" if report.passed else "FAIL"
    fig.suptitle(
        f"{table.rules.text}: period {report.detected_period} "
        f"(predicted {p}), preperiod {report.detected_preperiod} [{verdict}]"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
