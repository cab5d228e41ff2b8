"""The five figure kinds rendered from scan CSV/JSON files.

Figures are pure functions of their input files; no dynamics are
recomputed here.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import CLASS_COLORS, Records, class_fractions, read_records, read_summary

FIGURE_KINDS = ("digits-histogram", "tongue-map", "proportions-vs-param",
                "rotation-scatter", "staircase-3d")


def digits_histogram(records: Records, ax=None, bin_width: float = 0.25,
                     trim: float = 0.06):
    """Overlaid dig_T histograms, one per parameter value, spike at 16.

    The terminal bin holds the mass at the double-precision cap; the y-axis
    is trimmed so the smaller features stay visible, with the cap mass
    annotated when it overflows.
    """
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 4))
    edges = np.arange(0.0, 16.0 + bin_width, bin_width)
    edges[-1] = 16.0
    params = np.unique(records.param)
    ymax = trim
    for value in params:
        dig = records.dig[(records.param == value) & np.isfinite(records.dig)]
        at_cap = dig >= 16.0
        weights = np.full(np.sum(~at_cap), 1.0 / dig.size)
        counts, _ = np.histogram(dig[~at_cap], bins=edges,
                                 weights=weights)
        ax.stairs(counts, edges, fill=True, alpha=0.45, label=f"{value:g}")
        cap_mass = np.sum(at_cap) / dig.size
        ax.bar([16.0 + bin_width], [min(cap_mass, trim)], width=bin_width,
               align="edge", color="black", alpha=0.8)
        if cap_mass > trim:
            ax.annotate(f"{cap_mass:.2f}", (16.0 + bin_width, trim),
                        ha="left", va="bottom", fontsize=8)
        ymax = max(ymax, counts.max() if counts.size else 0.0)
    ax.set_xlim(0, 17.5)
    ax.set_ylim(0, min(ymax * 1.15, trim * 4))
    ax.set_xlabel(r"dig$_T$")
    ax.set_ylabel("fraction of orbits")
    ax.legend(title="parameter", fontsize=8)
    return ax


def tongue_map(records: Records, axes=None):
    """Rotation number over the (Omega, a) plane.

    Left panel: nonresonant orbits colored by rotation number (tongues show
    as empty vertical gaps).  Right panel: chaotic orbits.  Black = no orbit
    of that type.
    """
    if axes is None:
        _, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, tag in zip(axes, ("nonresonant", "chaotic")):
        sel = records.cls == tag
        ax.set_facecolor("black")
        sc = ax.scatter(records.omega1[sel], records.param[sel],
                        c=records.rot1[sel], s=1.2, cmap="turbo",
                        vmin=0.0, vmax=1.0, rasterized=True)
        ax.set_xlim(0, 1)
        ax.set_ylim(records.param.min(), records.param.max())
        ax.set_xlabel(r"$\Omega$")
        ax.set_title(tag)
    axes[0].set_ylabel("a")
    plt.colorbar(sc, ax=list(axes), label=r"$\omega$", shrink=0.9)
    return axes


def proportions_vs_param(records: Records, ax=None, eps_crit: float | None = None,
                         xlabel: str = "parameter"):
    """Class-fraction curves vs the scan parameter, optional critical dot."""
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 4))
    params, fractions = class_fractions(records)
    for tag in ("nonresonant", "resonant", "periodic", "chaotic"):
        ax.plot(params, fractions[tag], color=CLASS_COLORS[tag], label=tag)
    if eps_crit is not None:
        ax.plot([eps_crit], [0.0], "o", color="tab:green", clip_on=False,
                markersize=8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("proportion of orbits")
    ax.set_ylim(0, 1)
    ax.legend(fontsize=8)
    return ax


def rotation_scatter(records: Records, ax=None):
    """Rotation vectors on the torus, resonant vs nonresonant."""
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 5))
    for tag in ("nonresonant", "resonant"):
        sel = records.cls == tag
        ax.scatter(records.rot1[sel], records.rot2[sel], s=3,
                   color=CLASS_COLORS[tag], label=tag, rasterized=True)
    ax.set_xlabel(r"$\omega_1$")
    ax.set_ylabel(r"$\omega_2$")
    ax.set_xlim(0, 1)
    ax.legend(fontsize=8)
    return ax


def staircase_3d(records: Records, ax=None):
    """Rotation vectors vs scan parameter: a vector-valued devil's staircase."""
    if ax is None:
        fig = plt.figure(figsize=(6, 5))
        ax = fig.add_subplot(projection="3d")
    for tag in ("nonresonant", "resonant"):
        sel = records.cls == tag
        ax.scatter(records.rot1[sel], records.rot2[sel], records.param[sel],
                   s=2, color=CLASS_COLORS[tag], label=tag)
    ax.set_xlabel(r"$\omega_1$")
    ax.set_ylabel(r"$\omega_2$")
    ax.set_zlabel("strength")
    ax.legend(fontsize=8)
    return ax


def render(kind: str, input_path, output_path, summary_path=None) -> Path:
    """Render one figure kind from a record CSV (+ optional summary JSON)."""
    if kind not in FIGURE_KINDS:
        raise ValueError(f"unknown figure kind {kind!r}; choose from {FIGURE_KINDS}")
    records = read_records(input_path)
    plt.close("all")
    if kind == "digits-histogram":
        digits_histogram(records)
    elif kind == "tongue-map":
        tongue_map(records)
    elif kind == "proportions-vs-param":
        eps_crit = None
        xlabel = "strength"
        if summary_path is not None:
            summary = read_summary(summary_path)
            eps_crit = summary.get("results", {}).get("eps_crit")
        proportions_vs_param(records, eps_crit=eps_crit, xlabel=xlabel)
    elif kind == "rotation-scatter":
        rotation_scatter(records)
    elif kind == "staircase-3d":
        staircase_3d(records)
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    plt.savefig(output_path, dpi=150, bbox_inches="tight")
    plt.close("all")
    return output_path
