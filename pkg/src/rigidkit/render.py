"""Figure rendering for frameworks and suite reports (headless matplotlib)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .frameworks import Framework
from .io import edge_colour_name
from .polytope import FrameworkColouring


def draw_framework(
    framework: Framework,
    path: str,
    colouring: FrameworkColouring | None = None,
    flex=None,
    title: str | None = None,
):
    """Draw the placement: edges colour-coded by framework colour when a
    colouring is given, flex velocities as arrows when a flex is given.
    The output format follows the file extension (svg, png, pdf)."""
    fig, ax = plt.subplots(figsize=(5, 5))
    pts = framework.placement
    for e in framework.graph.edges:
        colour = "#7f7f7f"
        if colouring is not None:
            colour = edge_colour_name(colouring.colours.get(e))
        ax.plot(pts[list(e), 0], pts[list(e), 1], color=colour, lw=2, zorder=1)
    ax.scatter(pts[:, 0], pts[:, 1], s=60, color="black", zorder=2)
    for v in range(framework.n):
        ax.annotate(str(v), pts[v], textcoords="offset points", xytext=(6, 6), fontsize=9)
    if flex is not None:
        u = np.asarray(flex, dtype=float).reshape(framework.n, framework.d)
        scale = 0.25 * max(np.ptp(pts, axis=0).max(), 1e-9)
        norm = np.abs(u).max()
        if norm > 0:
            u = u / norm * scale
        ax.quiver(
            pts[:, 0], pts[:, 1], u[:, 0], u[:, 1],
            angles="xy", scale_units="xy", scale=1, color="#17becf", width=0.006, zorder=3,
        )
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def draw_suite_summary(name: str, checks, path: str):
    """Bar chart of pass/fail per check of a suite run."""
    labels = [c.label for c in checks]
    values = [1 if c.passed else 0 for c in checks]
    colours = ["#2ca02c" if v else "#d62728" for v in values]
    fig, ax = plt.subplots(figsize=(7, 0.6 * max(len(labels), 2) + 1.2))
    y = np.arange(len(labels))
    ax.barh(y, [1] * len(labels), color=colours, alpha=0.85)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=8)
    ax.set_xticks([])
    ax.invert_yaxis()
    for i, c in enumerate(checks):
        ax.text(0.02, i, "pass" if c.passed else "FAIL", va="center", fontsize=8, color="white")
    ax.set_title(f"suite {name}: {sum(values)}/{len(values)} checks passed")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
