"""Headless matplotlib rendering for CLI report output.

Figures are written next to the delimited data files; the Agg backend is
forced so rendering works without a display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["render_curves", "render_region", "render_paths"]


def render_curves(path, x, series, xlabel: str, ylabel: str, title: str) -> str:
    """Line plot of one or more (label, values) series against x."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, y in series:
        ax.plot(x, y, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def render_region(path, xs, ys, indicator, title: str,
                  min_abscissa=None) -> str:
    """Filled map of a boolean constraint region over the s-plane window."""
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.pcolormesh(xs, ys, np.asarray(indicator, dtype=float).T,
                  shading="auto", cmap="Blues", vmin=0.0, vmax=1.3)
    if min_abscissa is not None:
        ax.axvline(min_abscissa, color="crimson", linestyle="--",
                   label=f"min abscissa = {min_abscissa:.3g}")
        ax.legend()
    ax.set_xlabel("Re s")
    ax.set_ylabel("Im s")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def render_paths(path, paths, horizon: float, title: str, max_shown: int = 25) -> str:
    """Staircase plot of counting-process paths."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for p in paths[:max_shown]:
        t = np.concatenate(([0.0], p.event_times, [horizon]))
        n = np.concatenate(([0], np.arange(1, p.event_times.size + 1),
                            [p.event_times.size]))
        ax.step(t, n, where="post", alpha=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("N(t)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
