"""Estimating the sparse component from observed degree spectra.

Two regimes share one idea: hub degrees of the star forest dominate the
top of the spectrum and scale linearly with the sparse edge count.

* finite partitions: the hub count k is the position of the largest
  log-gap between consecutive top degrees;
* infinite partitions: no single gap exists, so (rank, log degree) is
  split into two least-squares lines and k is the fitted breakpoint
  (the sparse segment falls faster than log(m/j), the dense one
  slower).

Either way the partition weights are the top-k degrees normalized by
their own sum; the naive baseline normalizes by the total degree mass,
which the dense part inflates by orders of magnitude.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .graph import DegreeSpectrum

__all__ = [
    "predict_top_k",
    "baseline_sqrt_predict",
    "SmallDegreePolicy",
    "estimate_k_finite",
    "estimate_partition_finite",
    "ols_fit",
    "SegmentFit",
    "fit_two_segments",
    "estimate_k_infinite",
    "estimate_partition_infinite",
    "estimate_partition",
    "baseline_partition",
    "mape",
    "PartitionEstimate",
]

log = logging.getLogger(__name__)

AUTO_GAP_THRESHOLD = math.log(10.0)


def predict_top_k(train_top: np.ndarray, n_train: int, n_test: int) -> np.ndarray:
    """Scale the training top degrees by the node-count ratio.

    Hub degrees grow linearly in the graph size, so the forecast for the
    rank-j test degree is deg_train(j) * n_test / n_train.
    """
    top = np.asarray(train_top, dtype=np.float64)
    if top.size and np.any(np.diff(top) > 0):
        raise ValueError("train_top must be non-increasing")
    if n_train < 1 or n_test < 1:
        raise ValueError("node counts must be positive")
    return top * (n_test / n_train)


def baseline_sqrt_predict(train_top: np.ndarray, n_train: int, n_test: int) -> np.ndarray:
    """Dense-regime baseline: scale by sqrt(n_test / n_train)."""
    top = np.asarray(train_top, dtype=np.float64)
    if top.size and np.any(np.diff(top) > 0):
        raise ValueError("train_top must be non-increasing")
    if n_train < 1 or n_test < 1:
        raise ValueError("node counts must be positive")
    return top * math.sqrt(n_test / n_train)


@dataclass(frozen=True)
class SmallDegreePolicy:
    """Which degrees survive before the gap scan.

    Keeps degrees whose value is among the max_unique largest unique
    values and at least the given percentile of unique values; zeros
    never survive. This shields the scan from the huge artificial gap
    between leaf degrees and dense-part degrees.
    """

    max_unique: int = 64
    percentile: float = 50.0

    def retained_floor(self, unique_desc: np.ndarray) -> int:
        uniq = unique_desc[unique_desc > 0]
        if uniq.size == 0:
            raise ValueError("no positive degrees to scan")
        cutoff = np.percentile(uniq, self.percentile)
        uniq = uniq[uniq >= cutoff]
        uniq = uniq[: min(self.max_unique, uniq.size)]
        return int(uniq[-1])


def _retained_degrees(spectrum: DegreeSpectrum, policy: SmallDegreePolicy) -> np.ndarray:
    floor = policy.retained_floor(spectrum.unique_degrees)
    sd = spectrum.sorted_degrees
    return sd[sd >= floor]


def estimate_k_finite(
    spectrum: DegreeSpectrum, policy: SmallDegreePolicy | None = None
) -> tuple[int, np.ndarray]:
    """Hub count for a finite partition: argmax log-gap position.

    Returns (k_hat, gaps) where gaps[l-1] = log d_(l) - log d_(l+1) over
    the retained top degrees; k_hat is the 1-based position of the
    largest gap (first one wins ties).
    """
    policy = policy or SmallDegreePolicy()
    seq = _retained_degrees(spectrum, policy)
    if np.unique(seq).size < 3:
        raise ValueError("need at least three distinct retained degrees")
    logs = np.log(seq.astype(np.float64))
    gaps = logs[:-1] - logs[1:]
    return int(np.argmax(gaps)) + 1, gaps


def _ratio_partition(spectrum: DegreeSpectrum, k_hat: int) -> np.ndarray:
    sd = spectrum.sorted_degrees
    if k_hat < 1 or k_hat > sd.size:
        raise ValueError(f"k_hat={k_hat} out of range")
    top = sd[:k_hat].astype(np.float64)
    if top[-1] <= 0:
        raise ValueError("top-k degrees must be positive")
    return top / top.sum()


@dataclass(frozen=True)
class PartitionEstimate:
    """k_hat weights summing to 1, with the mode and fit diagnostics."""

    mode: str
    k_hat: int
    weights: np.ndarray
    diagnostics: object = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.size != self.k_hat:
            raise ValueError("weights length must equal k_hat")
        if np.any(w <= 0) or np.any(np.diff(w) > 0):
            raise ValueError("weights must be positive and non-increasing")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


def estimate_partition_finite(
    spectrum: DegreeSpectrum,
    k_hat: int | None = None,
    policy: SmallDegreePolicy | None = None,
) -> PartitionEstimate:
    """Weights = top-k degrees over their sum, k from the gap scan."""
    gaps = None
    if k_hat is None:
        k_hat, gaps = estimate_k_finite(spectrum, policy)
    return PartitionEstimate(
        mode="finite",
        k_hat=int(k_hat),
        weights=_ratio_partition(spectrum, int(k_hat)),
        diagnostics=gaps,
    )


def ols_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line through (x, y): (slope, intercept, sq. loss)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size != y.size or x.size < 2:
        raise ValueError("need at least two points")
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    if sxx == 0.0:
        raise ValueError("degenerate fit: all x identical")
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    return slope, float(intercept), float((resid**2).sum())


@dataclass(frozen=True)
class SegmentFit:
    """Two-line fit of (rank, log degree): break after point cutoff."""

    cutoff: int
    slope1: float
    intercept1: float
    loss1: float
    slope2: float
    intercept2: float
    loss2: float

    @property
    def total_loss(self) -> float:
        return self.loss1 + self.loss2


def fit_two_segments(x: np.ndarray, y: np.ndarray, min_seg: int = 3) -> SegmentFit:
    """Exhaustive scan of the breakpoint; ties go to the smallest cutoff.

    The first segment takes points [0, r), the second [r, N); both need
    at least min_seg points.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    if min_seg < 2:
        raise ValueError("min_seg must be >= 2")
    if n < 2 * min_seg:
        raise ValueError(f"need at least {2 * min_seg} points, got {n}")
    best = None
    for r in range(min_seg, n - min_seg + 1):
        s1, i1, l1 = ols_fit(x[:r], y[:r])
        s2, i2, l2 = ols_fit(x[r:], y[r:])
        if best is None or l1 + l2 < best.total_loss:
            best = SegmentFit(r, s1, i1, l1, s2, i2, l2)
    return best


def retained_log_points(
    spectrum: DegreeSpectrum, percentile_c: float = 50.0
) -> tuple[np.ndarray, np.ndarray]:
    """(rank, log degree) points for the two-segment fit.

    One point per unique positive degree strictly above the
    percentile_c-th percentile of unique values.  The rank of a value
    is the position of its first holder in the full descending degree
    order, so a value shared by many nodes keeps its width on the rank
    axis; that keeps the near-flat run of bulk degrees long enough to
    anchor the second segment.
    """
    degs = spectrum.sorted_degrees
    uniq_asc, counts_asc = np.unique(degs, return_counts=True)
    uniq = uniq_asc[::-1].astype(np.float64)
    counts = counts_asc[::-1]
    ranks = 1.0 + np.concatenate([[0], np.cumsum(counts)[:-1]])
    keep = uniq > 0
    if not keep.any():
        raise ValueError("no positive degrees")
    cutoff = np.percentile(uniq[keep], percentile_c)
    keep &= uniq > cutoff
    return ranks[keep], np.log(uniq[keep])


def estimate_k_infinite(
    spectrum: DegreeSpectrum,
    percentile_c: float = 50.0,
    min_seg: int = 3,
) -> tuple[int, SegmentFit]:
    """Hub count for power-like partitions via the two-segment fit.

    Fits two lines to the retained (rank, log degree) points and
    returns the number of points on the first segment as k_hat.
    """
    x, y = retained_log_points(spectrum, percentile_c)
    if x.size < 2 * min_seg:
        raise ValueError(
            f"only {x.size} unique degrees above the percentile cutoff, "
            f"need {2 * min_seg}"
        )
    fit = fit_two_segments(x, y, min_seg=min_seg)
    return fit.cutoff, fit


def estimate_partition_infinite(
    spectrum: DegreeSpectrum,
    k_hat: int | None = None,
    percentile_c: float = 50.0,
    min_seg: int = 3,
) -> PartitionEstimate:
    """Same ratio formula as the finite mode, k from the segment fit."""
    fit = None
    if k_hat is None:
        k_hat, fit = estimate_k_infinite(spectrum, percentile_c, min_seg)
    return PartitionEstimate(
        mode="infinite",
        k_hat=int(k_hat),
        weights=_ratio_partition(spectrum, int(k_hat)),
        diagnostics=fit,
    )


def estimate_partition(
    spectrum: DegreeSpectrum,
    mode: str = "auto",
    policy: SmallDegreePolicy | None = None,
    percentile_c: float = 50.0,
    min_seg: int = 3,
    gap_threshold: float = AUTO_GAP_THRESHOLD,
) -> PartitionEstimate:
    """Front door for the CLI: finite, infinite, or auto dispatch.

    Auto mode runs the gap scan first and keeps the finite answer only
    when a dominant gap (> gap_threshold in log scale) exists; otherwise
    it falls back to the two-segment fit.
    """
    if mode == "finite":
        return estimate_partition_finite(spectrum, policy=policy)
    if mode == "infinite":
        return estimate_partition_infinite(
            spectrum, percentile_c=percentile_c, min_seg=min_seg
        )
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        k_hat, gaps = estimate_k_finite(spectrum, policy)
        if gaps.max() > gap_threshold:
            return PartitionEstimate(
                mode="finite",
                k_hat=k_hat,
                weights=_ratio_partition(spectrum, k_hat),
                diagnostics=gaps,
            )
    except ValueError:
        pass
    log.warning(
        "no dominant degree gap; treating the partition as infinite-type"
    )
    return estimate_partition_infinite(
        spectrum, percentile_c=percentile_c, min_seg=min_seg
    )


def baseline_partition(spectrum: DegreeSpectrum, k_hat: int) -> np.ndarray:
    """Naive weights: top-k degrees over the total degree mass."""
    sd = spectrum.sorted_degrees
    if k_hat < 1 or k_hat > sd.size:
        raise ValueError(f"k_hat={k_hat} out of range")
    total = float(sd.sum())
    if total <= 0:
        raise ValueError("graph has no edges")
    return sd[:k_hat].astype(np.float64) / total


def mape(actual: np.ndarray, predicted: np.ndarray) -> float:
    """Mean absolute percentage error, in percent."""
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.size == 0:
        raise ValueError("actual and predicted must be same-length, non-empty")
    if np.any(a == 0):
        raise ValueError("actual values must be nonzero")
    return float(100.0 * np.mean(np.abs((p - a) / a)))
