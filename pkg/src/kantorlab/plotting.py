"""Figures for the ``report`` command (matplotlib, file output only)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lie import DEGREES, GradedSuperalgebra  # noqa: E402


def plot_grading_dims(dims: dict, path) -> None:
    """Grouped bars of dim g_i for each named algebra."""
    names = list(dims)
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(names)), 4))
    width = 0.8 / len(DEGREES)
    x = np.arange(len(names))
    for k, deg in enumerate(DEGREES):
        ax.bar(x + (k - 2) * width, [dims[n][k] for n in names], width, label=f"degree {deg:+d}")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("dimension")
    ax.set_title("5-grading dimensions")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def plot_bracket_sparsity(g: GradedSuperalgebra, path) -> None:
    """Number of nonzero structure constants in each [v_i, v_j]."""
    counts = np.array([[sum(1 for c in g.bracket[i, j] if c != 0) for j in range(g.dim)]
                       for i in range(g.dim)])
    fig, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(counts, cmap="Greys", interpolation="nearest")
    ticks = range(g.dim)
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    tick_labels = [f"{d:+d}" for d in g.degrees]
    ax.set_xticklabels(tick_labels, fontsize=6)
    ax.set_yticklabels(tick_labels, fontsize=6)
    ax.set_xlabel("degree of v_j")
    ax.set_ylabel("degree of v_i")
    ax.set_title(f"{g.label}: nonzero entries of [v_i, v_j]")
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
