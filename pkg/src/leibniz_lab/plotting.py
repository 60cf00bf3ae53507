"""Bar charts of classification component sizes, rendered straight to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def component_bar_chart(labels, counts, path, title=None):
    """Write a bar chart of ``counts`` (one bar per label) to ``path``; format follows the suffix."""
    width = max(4.0, 0.6 * len(labels) + 1.5)
    fig, ax = plt.subplots(figsize=(width, 3.5))
    bars = ax.bar(range(len(counts)), counts, color="#4c72b0")
    ax.bar_label(bars, labels=[str(c) for c in counts], padding=2, fontsize=8)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30 if len(labels) > 4 else 0, ha="right" if len(labels) > 4 else "center")
    ax.set_ylabel("classes")
    ax.margins(y=0.15)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
