"""Analysis reports: CSV tables plus matplotlib figures rendered to files.

Used by the ``analyze`` CLI path.  Figures are rendered with the Agg
backend and fixed metadata so identical inputs produce identical bytes.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import ValueProfile
from .heuristics import average_value, shift_solution
from .model import Instance, evaluate

_PNG_META = {"Software": "bapkit"}


def write_profile_report(profile: ValueProfile, average: float, outdir: str) -> list[str]:
    """Write profile.csv (sorted values) and profile.png (histogram)."""
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, "profile.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("rank,value\n")
        for idx, value in enumerate(profile.values):
            fh.write(f"{idx},{value!r}\n")

    png_path = os.path.join(outdir, "profile.png")
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    bins = min(40, max(5, int(np.sqrt(len(profile.values))) * 2))
    ax.hist(profile.values, bins=bins, color="#4878a8", edgecolor="white")
    ax.axvline(average, color="#c44e52", lw=1.5, label=f"average = {average:.6g}")
    ax.axvline(profile.median, color="#55a868", lw=1.5, ls="--",
               label=f"median = {profile.median:.6g}")
    ax.set_xlabel("objective value")
    ax.set_ylabel("solutions")
    ax.set_title(f"objective distribution over {len(profile.values)} solutions")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(png_path, dpi=110, metadata=_PNG_META)
    plt.close(fig)
    return [csv_path, png_path]


def write_shift_report(instance: Instance, outdir: str) -> list[str]:
    """Write shifts.csv and shifts.png: the m x n cyclic-shift value grid."""
    os.makedirs(outdir, exist_ok=True)
    m, n = instance.m, instance.n
    grid = np.empty((m, n))
    for a in range(m):
        for b in range(n):
            grid[a, b] = evaluate(instance, shift_solution(instance, a, b)).total

    csv_path = os.path.join(outdir, "shifts.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("a,b,value\n")
        for a in range(m):
            for b in range(n):
                fh.write(f"{a},{b},{grid[a, b]!r}\n")

    avg = average_value(instance)
    png_path = os.path.join(outdir, "shifts.png")
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    im = ax.imshow(grid, cmap="viridis")
    fig.colorbar(im, ax=ax, label="objective value")
    ax.set_xlabel("y shift b")
    ax.set_ylabel("x shift a")
    ax.set_title(f"shift family values (average = {avg:.6g})")
    ax.set_xticks(range(n))
    ax.set_yticks(range(m))
    fig.tight_layout()
    fig.savefig(png_path, dpi=110, metadata=_PNG_META)
    plt.close(fig)
    return [csv_path, png_path]
