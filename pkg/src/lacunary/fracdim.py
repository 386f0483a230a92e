"""Box-counting dimension, Hoelder exponent, and space-filling diagnostics.

Box counting uses grids anchored at the bounding-box corner, averaged over a
few diagonally shifted copies to remove anchor sensitivity.  The log-log fit
drops saturated scales at both ends (too few boxes to be informative, or so
many that the finite sample itself is resolved) before regressing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "BoxCountCurve",
    "DimensionEstimate",
    "HolderEstimate",
    "FitRangeError",
    "box_count",
    "default_scales",
    "fit_dimension",
    "holder_exponent",
    "occupied_fraction",
]


class FitRangeError(ValueError):
    """Fewer than four scales survive the saturation policy."""


@dataclass(frozen=True)
class BoxCountCurve:
    """Occupied-box counts N_j per scale eps_j.

    counts holds the integer counts of the anchored grid; counts_avg the mean
    over the shifted grids (kept as reals, never rounded).  n_points is the
    size of the counted sample, needed by the fit policy.
    """

    scales: tuple
    counts: tuple
    counts_avg: tuple
    offsets_averaged: int
    n_points: int
    ndim: int


@dataclass(frozen=True)
class DimensionEstimate:
    value: float
    stderr: float
    fit_range: tuple  # (j_lo, j_hi) indices into scales, inclusive
    r_squared: float


@dataclass(frozen=True)
class HolderEstimate:
    exponent: float
    stderr: float
    fit_range: tuple
    r_squared: float
    degenerate: bool = False  # constant input: no oscillation to fit


def default_scales(points: np.ndarray, j_min: int = 1, j_max: int = 16) -> list:
    """Dyadic scales diam * 2^-j; the fit policy prunes useless ones later.

    diam is the norm of the bounding-box extent vector, which is stable under
    rotations (a per-axis extent would shift the dyadic ladder's phase and
    wobble the fitted dimension of self-similar sets).
    """
    pts = np.asarray(points, dtype=np.float64)
    diam = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    if diam == 0.0:
        diam = 1.0
    return [diam * 2.0**-j for j in range(j_min, j_max + 1)]


# Per-axis offset increments for the shifted grids: irrational steps so that
# no shift direction degenerates along a coordinate diagonal.
_OFFSET_STEPS = (0.6180339887498949, 0.41421356237309515, 0.3222677868723882)


def _cell_count(pts: np.ndarray, anchor: np.ndarray, extent: np.ndarray,
                eps: float, k_offset: int) -> int:
    """Number of distinct occupied cells of side eps for the k-th offset grid.

    Offset 0 is anchored at the bounding-box corner; offset k shifts each
    axis by a different irrational fraction of eps.  Grids are taken
    cyclically within the bounding box: ceil(extent/eps) cells per axis,
    with the sliver a shift pushes past the far face wrapped to the front.
    Without the wrap every shifted grid would carry an extra near-empty
    boundary row, inflating coarse-scale counts of solid sets and biasing
    the fitted dimension low.
    """
    ndim = pts.shape[1]
    key = None
    for d in range(ndim):
        shift = eps * ((k_offset * _OFFSET_STEPS[d]) % 1.0)
        col = np.floor((pts[:, d] - anchor[d] + shift) / eps).astype(np.int64)
        n_cells = max(math.ceil(extent[d] / eps - 1e-12), 1)
        col = np.mod(col, n_cells)
        key = col if key is None else key * n_cells + col
    return int(np.unique(key).size)


def box_count(points, scales, offsets_averaged: int = 4) -> BoxCountCurve:
    """Count occupied grid cells at each scale.

    points is an (n, d) array with d in {2, 3}; scales must be positive and
    decreasing.  The anchored grid gives the integer counts; the average over
    offsets_averaged diagonally shifted grids is stored separately as reals.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] not in (2, 3):
        raise ValueError(f"points must be (n, 2) or (n, 3), got {pts.shape}")
    if pts.shape[0] < 1:
        raise ValueError("empty point set")
    scales = [float(s) for s in scales]
    if any(s <= 0 for s in scales):
        raise ValueError("scales must be positive")
    if any(b >= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be sorted strictly decreasing")
    if offsets_averaged < 1:
        raise ValueError("need at least the anchored grid")

    anchor = pts.min(axis=0)
    extent = pts.max(axis=0) - anchor
    counts, counts_avg = [], []
    for eps in scales:
        per_offset = [
            _cell_count(pts, anchor, extent, eps, k) for k in range(offsets_averaged)
        ]
        counts.append(per_offset[0])
        counts_avg.append(float(np.mean(per_offset)))
    return BoxCountCurve(
        scales=tuple(scales), counts=tuple(counts), counts_avg=tuple(counts_avg),
        offsets_averaged=offsets_averaged, n_points=pts.shape[0], ndim=pts.shape[1],
    )


def _ols_loglog(x: np.ndarray, y: np.ndarray):
    """Slope, stderr, r^2 of y against x (both already in log space)."""
    n = len(x)
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    slope = float(np.dot(xc, yc) / sxx)
    resid = yc - slope * xc
    if n > 2:
        stderr = math.sqrt(float(np.dot(resid, resid)) / (n - 2) / sxx)
    else:
        stderr = 0.0
    syy = float(np.dot(yc, yc))
    r2 = 1.0 - float(np.dot(resid, resid)) / syy if syy > 0 else 1.0
    return slope, stderr, r2


def fit_dimension(curve: BoxCountCurve, min_count: float = 10.0,
                  max_count_frac: float = 0.2) -> DimensionEstimate:
    """Least-squares slope of log N_j against log(1/eps_j) over usable scales.

    Scales with fewer than min_count boxes or more than max_count_frac of the
    sample count are saturated and excluded; at least four must survive.  The
    fit runs on the offset-averaged counts, which damp the anchor-alignment
    wobble of self-similar sets (the cyclic offsets keep them unbiased on
    solid sets).
    """
    cnt = np.asarray(curve.counts_avg, dtype=np.float64)
    usable = (cnt >= min_count) & (cnt <= max_count_frac * curve.n_points)
    if int(usable.sum()) < 4:
        raise FitRangeError(
            f"only {int(usable.sum())} scales survive the saturation policy "
            f"(counts {curve.counts})"
        )
    idx = np.flatnonzero(usable)
    x = np.log(1.0 / np.asarray(curve.scales)[idx])
    y = np.log(cnt[idx])
    slope, stderr, r2 = _ols_loglog(x, y)
    return DimensionEstimate(value=slope, stderr=stderr,
                             fit_range=(int(idx[0]), int(idx[-1])), r_squared=r2)


def holder_exponent(curve, lag_j_min: int = 2, lag_j_max: Optional[int] = None) -> HolderEstimate:
    """Uniform Hoelder exponent from the max oscillation at dyadic lags.

    For lags h = 2^-j * span the statistic M(h) = max_x |S(x+h) - S(x)| obeys
    M(h) ~ h^alpha when S is alpha-Hoelder; the exponent is the log-log slope
    over mid-range lags (the largest lags saturate at the curve diameter, the
    smallest at the sampling floor, so both ends are skipped).
    """
    if curve.uniform_step is None:
        raise ValueError("Hoelder estimation needs a uniform grid")
    vals = np.asarray(curve.values)
    n = len(vals)
    if n < 2**12:
        raise ValueError(f"need at least 4096 points, got {n}")
    m = int(math.floor(math.log2(n)))
    if lag_j_max is None:
        lag_j_max = m - 3  # lag of at least 8 samples
    hs, ms = [], []
    for j in range(lag_j_min, lag_j_max + 1):
        lag = n >> j
        if lag < 1:
            break
        diff = np.abs(vals[lag:] - vals[:-lag])
        ms.append(float(diff.max()))
        hs.append(lag * curve.uniform_step)
    ms_arr = np.asarray(ms)
    if np.any(ms_arr == 0.0) or len(ms_arr) < 2:
        return HolderEstimate(exponent=float("nan"), stderr=float("nan"),
                              fit_range=(lag_j_min, lag_j_max), r_squared=0.0,
                              degenerate=True)
    slope, stderr, r2 = _ols_loglog(np.log(np.asarray(hs)), np.log(ms_arr))
    return HolderEstimate(exponent=slope, stderr=stderr,
                          fit_range=(lag_j_min, lag_j_max), r_squared=r2)


def occupied_fraction(points, resolution: float) -> float:
    """Fraction of bounding-box cells of side `resolution` containing a point.

    A soft space-filling diagnostic: near 1 means the sample blankets its
    bounding box at that resolution.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("points must be a nonempty (n, d) array")
    if not resolution > 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    cells_per_axis = np.maximum(
        np.ceil((hi - lo) / resolution - 1e-12).astype(np.int64), 1
    )
    total = int(np.prod(cells_per_axis))
    idx = np.floor((pts - lo) / resolution).astype(np.int64)
    idx = np.minimum(idx, cells_per_axis - 1)
    key = idx[:, 0]
    for d in range(1, idx.shape[1]):
        key = key * int(cells_per_axis[d]) + idx[:, d]
    occupied = int(np.unique(key).size)
    return occupied / total
