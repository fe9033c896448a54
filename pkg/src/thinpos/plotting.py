"""Figure rendering for level profiles and per-sphere reports.

Uses the Agg backend so figures render headlessly to files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .core import THICK, THIN, LevelProfile  # noqa: E402

_CLASS_COLORS = {THIN: "tab:blue", THICK: "tab:red"}


def plot_profile(profile: LevelProfile, path: str) -> None:
    """Bar chart of gap widths, thin gaps blue and thick gaps red."""
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(profile.gap_counts)), 3))
    colors = [_CLASS_COLORS.get(c, "tab:gray") for c in profile.gap_classes]
    ax.bar(range(len(profile.gap_counts)), profile.gap_counts, color=colors)
    ax.set_xlabel("gap")
    ax.set_ylabel("strand count")
    ax.set_title(f"width {profile.width}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_report(profile: LevelProfile, reports: dict, path: str) -> None:
    """Profile bars with each thin gap annotated by its verdict count."""
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(profile.gap_counts)), 3.5))
    colors = [_CLASS_COLORS.get(c, "tab:gray") for c in profile.gap_classes]
    ax.bar(range(len(profile.gap_counts)), profile.gap_counts, color=colors)
    for g, rep in reports.items():
        ax.annotate(f"r{rep.rank}: {len(rep.verdicts)}",
                    (g, profile.gap_counts[g]),
                    textcoords="offset points", xytext=(0, 4),
                    ha="center", fontsize=8)
    ax.set_xlabel("gap")
    ax.set_ylabel("strand count")
    ax.set_title("thin-gap verdicts (rank: count)")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
