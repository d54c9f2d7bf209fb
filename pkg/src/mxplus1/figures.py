"""Matplotlib renderings of survey reports, ruin tables, and degree plots.

Every function writes a PNG next to the delimited output and returns
the path.  The Agg backend is forced so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = [
    "save_degree_plot",
    "save_lambda_figure",
    "save_ruin_figure",
    "save_sigma_histogram_figure",
]

_FIGSIZE = (7.0, 4.2)


def save_sigma_histogram_figure(rows, path, title="Stopping-time distribution"):
    """Bar chart of sigma_distribution_rows; timeout drawn as the last bar."""
    labels = [f"{lo}-{hi}" if hi != "" else str(lo) for lo, hi, _ in rows]
    counts = [count for _, _, count in rows]
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    bars = ax.bar(range(len(rows)), counts, color="steelblue")
    if rows and rows[-1][0] == "timeout":
        bars[-1].set_color("firebrick")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    if max(counts, default=0) > 0:
        ax.set_yscale("symlog")
    ax.set_xlabel("stopping time")
    ax.set_ylabel("elements")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_lambda_figure(header, rows, path, title="Cycle lengths by starting degree"):
    """Fraction of elements with period 2^k, one line per k, against degree."""
    degrees = [int(name.split("_", 1)[1]) for name in header[2:]]
    power_rows = [row for row in rows if isinstance(row[0], int)]
    totals = [0] * len(degrees)
    for row in rows:
        for i, count in enumerate(row[2:]):
            totals[i] += count
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for row in power_rows:
        counts = row[2:]
        if not any(counts):
            continue
        fractions = [c / totals[i] if totals[i] else 0.0 for i, c in enumerate(counts)]
        ax.plot(degrees, fractions, marker="o", label=f"period {row[1]}")
    ax.set_xlabel("starting degree")
    ax.set_ylabel("fraction of elements")
    ax.set_title(title)
    ax.legend(fontsize="small", ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_ruin_figure(table, path, title="Ruin probability by multiplier degree"):
    """P_d against d for a psigma_table result."""
    ds = [d for d, _ in table]
    probs = [result.probability for _, result in table]
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(ds, probs, marker="s", color="steelblue")
    ax.set_xlabel("d")
    ax.set_ylabel("ruin probability")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_degree_plot(degrees, path, title="Trajectory degree"):
    """Degree against step index for one trajectory."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(range(len(degrees)), degrees, lw=0.8, color="steelblue")
    ax.set_xlabel("step")
    ax.set_ylabel("degree")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
