"""Tail-index estimation and parameter identification from usage data.

Heavy-tailed usage counts identify the quality tail: under the model,
observed per-package usage is proportional to ``q**sigma`` with ``q``
Pareto(gamma), so a log rank against log usage regression has slope
``gamma / sigma``.  Binning ranks and regressing on within-bin medians
tames the noisy extreme order statistics.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .mc import RngSpec, sample_pareto

__all__ = [
    "TailFit",
    "ThetaIdentification",
    "CsvIngest",
    "binned_log_rank_fit",
    "implied_gamma",
    "identify_theta",
    "generate_synthetic_repo_counts",
    "ingest_values_csv",
]

_MIN_VALUES = 100
_MIN_BINS = 3


@dataclass(frozen=True)
class TailFit:
    """Weighted fit of log rank on negative log value over binned ranks.

    Attributes:
        slope: Tail exponent estimate (coefficient on ``-log value``).
        intercept: Regression intercept.
        se_slope: Standard error of the slope under the fit's weights.
        se_intercept: Standard error of the intercept.
        r_squared: Coefficient of determination.
        n_bins: Populated bins actually used.
        bin_table: ``(rank, value)`` representative per bin, the median
            member of the bin.
        tail_cut: Fraction of top ranks the fit was restricted to.
    """

    slope: float
    intercept: float
    se_slope: float
    se_intercept: float
    r_squared: float
    n_bins: int
    bin_table: tuple[tuple[float, float], ...]
    tail_cut: float


@dataclass(frozen=True)
class ThetaIdentification:
    """Usage-nest shape implied by an adoption share and a productivity gain.

    Attributes:
        adoption_share: Observed AI-usage share v.
        productivity_gain: Observed proportional gain g, so the nest
            multiplier is 1 + g.
        theta_hat: Implied shape ``-ln(1 - v) / ln(1 + g)``.
        in_model_domain: True when ``theta_hat > 1``; a gain too large
            for the share implies a shape outside the model's domain and
            is flagged rather than raised.
    """

    adoption_share: float
    productivity_gain: float
    theta_hat: float
    in_model_domain: bool


@dataclass(frozen=True)
class CsvIngest:
    """Values read from a CSV column.

    Attributes:
        values: Positive finite values, in file order.
        n_dropped: Rows skipped as malformed or non-positive.
    """

    values: np.ndarray
    n_dropped: int


def binned_log_rank_fit(values, n_bins: int = 60, tail_cut: float = 1.0) -> TailFit:
    """Estimate a tail exponent from a binned log-rank regression.

    Values are ranked descending; the top ``tail_cut`` fraction of ranks
    is split into log-spaced rank bins and each bin is represented by its
    median member, whose rank and value are taken from the same element
    so that data lying exactly on a power curve stays exactly collinear.
    Empty bins are dropped; at least 3 populated bins must remain.  The
    regression of log rank on ``-log value`` weights bins by rank depth
    (inverse variance of a log empirical rank), which leaves exact power
    data untouched but stops the noisy top-rank bins from torquing the
    slope.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1:
        raise ValueError("values must be 1-dimensional")
    if vals.size < _MIN_VALUES:
        raise ValueError(f"need at least {_MIN_VALUES} values, got {vals.size}")
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
        raise ValueError("values must all be positive and finite")
    if n_bins < _MIN_BINS:
        raise ValueError(f"n_bins must be at least {_MIN_BINS}, got {n_bins}")
    if not 0.0 < tail_cut <= 1.0:
        raise ValueError(f"tail_cut must lie in (0, 1], got {tail_cut}")

    top = np.sort(vals, kind="stable")[::-1]
    n_top = int(vals.size * tail_cut)
    if n_top < _MIN_BINS:
        raise ValueError(
            f"tail_cut={tail_cut} keeps only {n_top} values; too few to bin"
        )
    top = top[:n_top]
    ranks = np.arange(1, n_top + 1, dtype=float)

    edges = np.geomspace(1.0, n_top, n_bins + 1)
    idx = np.clip(np.searchsorted(edges, ranks, side="right") - 1, 0, n_bins - 1)
    # Bin members are contiguous in rank; pick the (lower) median member
    # of each populated bin and carry its rank and value together.
    starts = np.searchsorted(idx, np.arange(n_bins), side="left")
    stops = np.searchsorted(idx, np.arange(n_bins), side="right")
    reps = []
    for lo, hi in zip(starts, stops):
        if hi > lo:
            mid = lo + (hi - lo - 1) // 2
            reps.append((ranks[mid], top[mid]))
    if len(reps) < _MIN_BINS:
        raise ValueError(
            f"only {len(reps)} populated rank bins; reduce n_bins or raise tail_cut"
        )

    rep_ranks = np.array([r for r, _ in reps])
    rep_vals = np.array([v for _, v in reps])
    x = -np.log(rep_vals)
    y = np.log(rep_ranks)
    if np.ptp(x) == 0.0:
        raise ValueError("no variation in binned values; tail exponent undefined")
    nb = x.size
    # A log empirical rank at depth r has variance ~ 1/r, so weight each
    # bin by its representative rank.  Without this the near-singleton
    # top-rank bins, which carry both the most leverage and the most
    # noise, dominate the fit.  Weights are normalized to mean one so the
    # residual variance estimate keeps its unweighted scale.
    w = rep_ranks * (nb / rep_ranks.sum())
    xm = float(np.sum(w * x) / nb)
    ym = float(np.sum(w * y) / nb)
    sxx = float(np.sum(w * (x - xm) ** 2))
    if sxx <= 0.0:
        raise ValueError("no variation in binned values; tail exponent undefined")
    slope = float(np.sum(w * (x - xm) * (y - ym)) / sxx)
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    rss = float(np.sum(w * resid**2))
    tss = float(np.sum(w * (y - ym) ** 2))
    sigma2 = rss / (nb - 2)
    return TailFit(
        slope=slope,
        intercept=float(intercept),
        se_slope=math.sqrt(sigma2 / sxx),
        se_intercept=math.sqrt(sigma2 * (1.0 / nb + xm**2 / sxx)),
        r_squared=1.0 - rss / tss,
        n_bins=nb,
        bin_table=tuple((float(r), float(v)) for r, v in reps),
        tail_cut=tail_cut,
    )


def implied_gamma(sigma: float, tail_slope: float) -> float:
    """Quality tail shape from a usage tail slope: ``gamma = sigma * slope``.

    Usage scales as ``q**sigma``, so the usage tail index understates the
    quality tail index by exactly the factor ``sigma``.
    """
    if not sigma >= 1.0:
        raise ValueError(f"sigma must be at least 1, got {sigma}")
    if not tail_slope > 0.0:
        raise ValueError(f"tail_slope must be positive, got {tail_slope}")
    return sigma * tail_slope


def identify_theta(adoption_share: float, productivity_gain: float) -> ThetaIdentification:
    """Back out the usage-nest shape from two observable moments.

    An adoption share v and a productivity gain g jointly satisfy
    ``(1 - v)**(-1/theta) = 1 + g``, giving
    ``theta = -ln(1 - v) / ln(1 + g)``.  A result at or below 1 is
    flagged as outside the model's domain, not raised.
    """
    if not 0.0 < adoption_share < 1.0:
        raise ValueError(f"adoption_share must lie in (0, 1), got {adoption_share}")
    if not productivity_gain > 0.0:
        raise ValueError(
            f"productivity_gain must be positive, got {productivity_gain}"
        )
    theta_hat = -math.log(1.0 - adoption_share) / math.log1p(productivity_gain)
    return ThetaIdentification(
        adoption_share=adoption_share,
        productivity_gain=productivity_gain,
        theta_hat=theta_hat,
        in_model_domain=theta_hat > 1.0,
    )


def generate_synthetic_repo_counts(
    gamma: float, sigma: float, n: int, rng: RngSpec | np.random.Generator
) -> np.ndarray:
    """Synthetic per-package usage counts with known tail truth.

    Draws qualities from Pareto(gamma) and returns ``q**sigma``, whose
    tail index is ``gamma / sigma``; a fit on this output should recover
    that slope.
    """
    if not gamma > sigma:
        raise ValueError(f"gamma must exceed sigma, got gamma={gamma}, sigma={sigma}")
    if not sigma >= 1.0:
        raise ValueError(f"sigma must be at least 1, got {sigma}")
    q = sample_pareto(gamma, n, rng)
    return q**sigma


def ingest_values_csv(path, column: str) -> CsvIngest:
    """Read one numeric column from a CSV file.

    Malformed and non-positive entries are skipped and counted.  Raises
    when the column is missing or no usable rows remain.
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise ValueError(
                f"column {column!r} not found in {path} "
                f"(columns: {reader.fieldnames})"
            )
        values: list[float] = []
        dropped = 0
        for row in reader:
            raw = row.get(column)
            try:
                x = float(raw)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                dropped += 1
                continue
            if not math.isfinite(x) or x <= 0.0:
                dropped += 1
                continue
            values.append(x)
    if not values:
        raise ValueError(f"no usable rows in column {column!r} of {path}")
    return CsvIngest(values=np.asarray(values), n_dropped=dropped)
