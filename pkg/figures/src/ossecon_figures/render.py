"""Deterministic matplotlib rendering for the four figure kinds.

All renderers draw from parsed schema objects, never from model code,
and write vector output whose bytes are stable across reruns.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib import pyplot as plt

from .schemas import EquilibriumCurves, SchemaError, SweepTable, TailFitData

__all__ = [
    "render_s_curve",
    "render_counterfactual_ratios",
    "render_sustainability_region",
    "render_tail_fit",
]

_FIGSIZE = (6.4, 4.2)
_DPI = 144
_COLORS = ("#1f5fa8", "#c04a2f", "#3c8a4e", "#7a5aa0")

_RATIO_SERIES = (
    ("m_ratio", "entry mass", "-"),
    ("ms_ratio", "shared packages", "--"),
    ("qbar_ratio", "average quality", "-."),
    ("utility_ratio", "user value", ":"),
)


def _new_figure():
    # Fixed salt and no dates keep SVG bytes identical across reruns.
    plt.rcdefaults()
    plt.rcParams["svg.hashsalt"] = "ossecon-figures"
    plt.rcParams["svg.fonttype"] = "none"
    plt.rcParams["font.family"] = "DejaVu Sans"
    plt.rcParams["figure.dpi"] = 100
    return plt.subplots(figsize=_FIGSIZE)


def _save(fig, out: Path) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if out.suffix == ".svg":
        fig.savefig(out, format="svg", metadata={"Date": None})
    elif out.suffix == ".png":
        fig.savefig(out, format="png", dpi=_DPI)
    else:
        raise SchemaError(f"unsupported output format {out.suffix!r}; use .svg or .png")
    plt.close(fig)
    return out


def render_s_curve(sweep: SweepTable, out) -> Path:
    """Adoption share against relative productivity, half-adoption marked."""
    if sweep.axis != "zeta":
        raise SchemaError(f"s_curve needs a zeta sweep, got axis {sweep.axis!r}")
    order = np.argsort(sweep.value)
    zeta, v = sweep.value[order], sweep.v[order]
    fig, ax = _new_figure()
    ax.plot(zeta, v, color=_COLORS[0], linewidth=2.0)
    ax.axhline(0.5, color="#888888", linewidth=0.8, linestyle=":")
    ax.axvline(1.0, color="#888888", linewidth=0.8, linestyle=":")
    ax.plot([1.0], [0.5], marker="o", color=_COLORS[1], markersize=6)
    ax.annotate("half adoption at parity", xy=(1.0, 0.5), xytext=(1.15, 0.42))
    ax.set_xlabel("relative productivity of AI-mediated usage")
    ax.set_ylabel("AI-usage share v")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, linewidth=0.3, alpha=0.5)
    return _save(fig, out)


def render_counterfactual_ratios(curves: list[EquilibriumCurves], out) -> Path:
    """Ratio-to-baseline curves over v, one color per input scenario."""
    if not curves:
        raise SchemaError("counterfactual_ratios needs at least one input")
    fig, ax = _new_figure()
    for i, curve in enumerate(curves):
        if curve.v.size < 2:
            raise SchemaError(f"{curve.source} has fewer than two rows; no curve to draw")
        order = np.argsort(curve.v)
        color = _COLORS[i % len(_COLORS)]
        for field, label, style in _RATIO_SERIES:
            ax.plot(
                curve.v[order],
                getattr(curve, field)[order],
                style,
                color=color,
                linewidth=1.6,
                label=f"{curve.label}: {label}",
            )
    ax.set_xlabel("AI-usage share v")
    ax.set_ylabel("ratio to the v = 0 economy")
    ax.grid(True, linewidth=0.3, alpha=0.5)
    ax.legend(fontsize=8, framealpha=1.0, edgecolor="#cccccc")
    return _save(fig, out)


def render_sustainability_region(sweep: SweepTable, out) -> Path:
    """Monetization coverage frontier: shaded where funding survives.

    A row at share v admits (alpha, rho) iff (1-alpha) rho v stays at or
    below 1 - pi_floor_ratio, the depth of reward loss the ecosystem can
    absorb; the frontier for the largest v is shaded, smaller-v frontiers
    are drawn as thinner contours.
    """
    keep = sweep.v > 0.0
    if not np.any(keep):
        raise SchemaError(f"{sweep.source} has no rows with v > 0")
    fig, ax = _new_figure()
    alpha = np.linspace(0.0, 1.0, 401)
    rows = sorted(zip(sweep.v[keep], sweep.pi_floor_ratio[keep]), key=lambda t: t[0])
    for i, (v, floor) in enumerate(rows):
        slack = 1.0 - floor
        with np.errstate(divide="ignore"):
            frontier = np.minimum(1.0, slack / (v * (1.0 - alpha)))
        last = i == len(rows) - 1
        ax.plot(
            alpha,
            frontier,
            color=_COLORS[0],
            linewidth=2.0 if last else 0.9,
            alpha=1.0 if last else 0.55,
            label=f"v = {v:g}",
        )
        if last:
            ax.fill_between(alpha, 0.0, frontier, color=_COLORS[0], alpha=0.15)
    ax.set_xlabel("alpha: share of AI usage still credited to packages")
    ax.set_ylabel("rho: monetization loss per uncredited use")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.02)
    ax.grid(True, linewidth=0.3, alpha=0.5)
    ax.legend(fontsize=8, framealpha=1.0, edgecolor="#cccccc")
    return _save(fig, out)


def render_tail_fit(fit: TailFitData, out) -> Path:
    """Binned rank-size scatter with the fitted power law."""
    fig, ax = _new_figure()
    ax.loglog(fit.values, fit.ranks, "o", color=_COLORS[0], markersize=4, label="rank bins")
    span = np.geomspace(fit.values.min(), fit.values.max(), 64)
    line = np.exp(fit.intercept) * span**-fit.slope
    ax.loglog(
        span,
        line,
        "-",
        color=_COLORS[1],
        linewidth=1.6,
        label=f"slope {fit.slope:.3f}, R² {fit.r_squared:.4f}",
    )
    ax.set_xlabel("usage count")
    ax.set_ylabel("rank")
    ax.grid(True, which="both", linewidth=0.3, alpha=0.4)
    ax.legend(fontsize=8, framealpha=1.0, edgecolor="#cccccc")
    return _save(fig, out)
