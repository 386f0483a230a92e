"""Bessel-product characteristic functions and their Monte Carlo cross-checks.

For Steinhaus phases the increment S(x) - S(y) has the explicit characteristic
function

    psi_{x,y}(xi) = prod_n J0(2 pi |xi| |a_n| |phi(lambda_n x) - phi(lambda_n y)|),

and the expected squared Fourier transform of the push-forward of a discrete
measure is the double sum of such products over atom pairs.  Both sides of
that identity are implemented here, the analytic product and the empirical
phase-resampling estimate, so each can audit the other.

J0 itself is evaluated from scratch: the ascending power series up to |x| = 12
and the Hankel large-argument expansion beyond, both accumulated in 80-bit
extended precision (the power series loses ~5 digits to cancellation at the
switch point in plain doubles).  Accuracy is validated in the tests against
quadrature of the defining integral J0(x) = int_0^1 cos(x sin 2 pi t) dt.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basis import eval_basis
from .sampler import SeriesSpec, _steinhaus_uniforms, truncation_index
from .sequences import coefficients, l2_tail_sq, lambda_at

__all__ = [
    "CharFnSample",
    "MCEstimate",
    "bessel_j0",
    "charfn_increment",
    "expected_fourier_sq",
    "mc_charfn",
    "mc_fourier_sq",
    "charfn_l1_norm",
]

_TWO_PI = 2.0 * math.pi
_J0_SWITCH = 12.0
_LOG_UNDERFLOW = -700.0  # below this the product flushes to exact 0
_MC_CHUNK = 8192


# ---------------------------------------------------------------------------
# J0
# ---------------------------------------------------------------------------

def _j0_series(z: np.ndarray) -> np.ndarray:
    """Ascending series sum_k (-1)^k (z^2/4)^k / (k!)^2 on |z| <= 12.

    Extended-precision accumulation: the largest term at z = 12 is ~4e3
    against a result of ~5e-2, so double accumulation would be down to
    ~1e-11 absolute.
    """
    zl = z.astype(np.longdouble)
    w = zl * zl / 4.0
    term = np.ones_like(zl)
    acc = np.ones_like(zl)
    # |z| <= 12 -> w <= 36; 50 terms push the tail below 1e-25
    for k in range(1, 51):
        term = term * (-w) / (np.longdouble(k) * np.longdouble(k))
        acc += term
    return acc.astype(np.float64)


def _j0_hankel(x: np.ndarray) -> np.ndarray:
    """Hankel expansion J0 = sqrt(2/(pi x)) (P cos chi + Q sin chi), chi = x - pi/4.

    Terms c_m = prod_{j<=m} (2j-1)^2 / (m! (8x)^m) alternate into P (even m)
    and Q (odd m); each element stops accumulating at its smallest term, the
    optimal truncation of the asymptotic series (~1e-13 floor at x = 12).
    """
    xl = x.astype(np.longdouble)
    inv8x = 1.0 / (8.0 * xl)
    p = np.ones_like(xl)
    q = np.zeros_like(xl)
    term = np.ones_like(xl)
    prev_mag = np.full_like(xl, np.inf)
    alive = np.ones(x.shape, dtype=bool)
    sign_p, sign_q = -1.0, 1.0  # P = 1 - c2 + c4 - ..., Q = c1 - c3 + ...
    for m in range(1, 40):
        term = term * np.longdouble((2 * m - 1) ** 2) / np.longdouble(m) * inv8x
        mag = np.abs(term)
        alive &= mag < prev_mag
        if not alive.any():
            break
        prev_mag = np.where(alive, mag, prev_mag)
        if m % 2 == 1:
            q = np.where(alive, q + sign_q * term, q)
            sign_q = -sign_q
        else:
            p = np.where(alive, p + sign_p * term, p)
            sign_p = -sign_p
    chi = np.mod(xl - np.longdouble(math.pi) / 4.0, 2.0 * np.longdouble(math.pi))
    amp = np.sqrt(2.0 / (np.longdouble(math.pi) * xl))
    out = amp * (p * np.cos(chi) + q * np.sin(chi))
    return out.astype(np.float64)


def bessel_j0(x):
    """Bessel function of the first kind, order zero (scalar or array)."""
    arr = np.abs(np.asarray(x, dtype=np.float64))
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr <= _J0_SWITCH
    if small.any():
        out[small] = _j0_series(arr[small])
    if (~small).any():
        out[~small] = _j0_hankel(arr[~small])
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# characteristic function of an increment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharFnSample:
    """One evaluation of the Bessel-product characteristic function."""

    xi: float
    value: float
    terms_used: int
    truncation_bound: float  # bound on |log of the omitted factor product|


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error.

    mean is complex for phase averages and real for |.|^2 statistics; stderr
    is the total sample standard deviation (both components pooled) divided
    by sqrt(replicates).
    """

    mean: complex
    stderr: float
    replicates: int
    seed: int


def _terms_count(spec: SeriesSpec, eps_tail: float, n_terms: Optional[int]) -> int:
    if n_terms is not None:
        if n_terms < 1:
            raise ValueError(f"need at least one term, got {n_terms}")
        return int(n_terms)
    n = truncation_index(spec, eps_tail)
    if isinstance(n, tuple):
        raise ValueError("characteristic-function products cover one-sided series only")
    return max(int(n), 1)


def _increment_args(spec: SeriesSpec, x: float, y: float, n: int) -> np.ndarray:
    """|a_n| |phi(lambda_n x) - phi(lambda_n y)| for n = 1..N (sine route: the
    equivalent factor 2 |a_n sin(pi lambda_n (x - y))|)."""
    amps = np.abs(coefficients(spec.coeffs, 1, n + 1))
    lam = np.array([float(lambda_at(spec.freqs, k)) for k in range(1, n + 1)],
                   dtype=np.longdouble)
    if spec.basis.kind == "sine_real":
        # sin(2 pi (t+theta)) - sin(2 pi (s+theta)) = 2 sin(pi(t-s)) cos(...)
        d = np.mod(lam * np.longdouble(x - y), 2.0).astype(np.float64)
        return 2.0 * amps * np.abs(np.sin(math.pi * d))
    ux = np.mod(lam * np.longdouble(x), 1.0).astype(np.float64)
    uy = np.mod(lam * np.longdouble(y), 1.0).astype(np.float64)
    delta = np.abs(eval_basis(spec.basis, ux) - eval_basis(spec.basis, uy))
    return amps * delta


def _signed_log_product(factors: np.ndarray):
    """(sign, log|prod|) of a vector of J0 values; sign 0 for an exact zero."""
    if np.any(factors == 0.0):
        return 0.0, -math.inf
    sign = -1.0 if int(np.sum(factors < 0)) % 2 else 1.0
    return sign, float(np.sum(np.log(np.abs(factors))))


def _tail_log_bound(spec: SeriesSpec, xi: float, n: int) -> float:
    """Bound on |log prod_{n>N} J0(...)| via 1 - J0(u) <= u^2/4.

    Valid once the omitted arguments fall below 1; arguments are at most
    2 pi |xi| * 2 sup|phi| * |a_n|.
    """
    u_sq_sum = (_TWO_PI * abs(xi) * 2.0 * spec.basis.sup_norm) ** 2 \
        * l2_tail_sq(spec.coeffs, n)
    return 0.5 * u_sq_sum


def charfn_increment(spec: SeriesSpec, x: float, y: float, xi: float,
                     eps_tail: float = 1e-9, n_terms: Optional[int] = None) -> CharFnSample:
    """Characteristic function of the increment S(x) - S(y) at radial frequency xi.

    Equals the finite product of J0 factors over the kept terms; the value is
    exactly 1 when x == y or xi == 0.  Products below e^-700 flush to 0.
    """
    n = _terms_count(spec, eps_tail, n_terms)
    if x == y or xi == 0.0:
        return CharFnSample(xi=abs(xi), value=1.0, terms_used=n, truncation_bound=0.0)
    args = _TWO_PI * abs(xi) * _increment_args(spec, x, y, n)
    sign, logs = _signed_log_product(bessel_j0(args))
    value = 0.0 if logs < _LOG_UNDERFLOW else sign * math.exp(logs)
    return CharFnSample(xi=abs(xi), value=value, terms_used=n,
                        truncation_bound=_tail_log_bound(spec, xi, n))


def _product_rows(args: np.ndarray) -> np.ndarray:
    """Signed products of J0 over axis 0 of an (n_terms, m) argument matrix."""
    j0 = bessel_j0(args)
    with np.errstate(divide="ignore"):
        logs = np.where(j0 == 0.0, -np.inf, np.log(np.abs(j0))).sum(axis=0)
    signs = np.where((j0 < 0.0).sum(axis=0) % 2 == 1, -1.0, 1.0)
    signs = np.where(np.any(j0 == 0.0, axis=0), 0.0, signs)
    return np.where(logs < _LOG_UNDERFLOW, 0.0, signs * np.exp(np.maximum(logs, _LOG_UNDERFLOW)))


def expected_fourier_sq(spec: SeriesSpec, measure_atoms, xi: float,
                        eps_tail: float = 1e-9, n_terms: Optional[int] = None) -> float:
    """E|mu_hat(xi)|^2 for the push-forward of a discrete measure.

    measure_atoms is a list of (x, weight) with nonnegative weights summing
    to 1; the result is the weighted double sum of increment characteristic
    functions over atom pairs, hence symmetric in the atoms.
    """
    atoms = [(float(x), float(w)) for x, w in measure_atoms]
    if any(w < 0 for _, w in atoms):
        raise ValueError("weights must be nonnegative")
    wsum = math.fsum(w for _, w in atoms)
    if abs(wsum - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {wsum}")
    n = _terms_count(spec, eps_tail, n_terms)
    xs = np.array([x for x, _ in atoms])
    ws = np.array([w for _, w in atoms])
    n_atoms = len(atoms)
    if xi == 0.0:
        return 1.0

    lam = np.array([float(lambda_at(spec.freqs, k)) for k in range(1, n + 1)],
                   dtype=np.longdouble)
    amps = np.abs(coefficients(spec.coeffs, 1, n + 1))
    sine_route = spec.basis.kind == "sine_real"
    if not sine_route:
        u = np.mod(lam[:, None] * xs[None, :].astype(np.longdouble), 1.0).astype(np.float64)
        phi = eval_basis(spec.basis, u)  # (n_terms, n_atoms)
    psi = np.empty((n_atoms, n_atoms))
    for i in range(n_atoms):
        if sine_route:
            d = np.mod(lam[:, None] * (xs[i] - xs)[None, :], 2.0).astype(np.float64)
            delta = 2.0 * np.abs(np.sin(math.pi * d))
        else:
            delta = np.abs(phi[:, i : i + 1] - phi)
        psi[i] = _product_rows(_TWO_PI * abs(xi) * amps[:, None] * delta)
    return float(ws @ psi @ ws)


# ---------------------------------------------------------------------------
# Monte Carlo side
# ---------------------------------------------------------------------------

def _phase_matrix(n: int, replicates: int, seed: int, rep_offset: int) -> np.ndarray:
    """Steinhaus factors X_n for one block of replicates.

    The expectation being estimated is always over independent uniform phases,
    so the spec's own phase model is ignored here.  Each fixed-size replicate
    block draws from its own counter-based stream (keyed by seed and block
    index), so replicate r's phases are a pure function of (seed, r) and the
    blocks can run in parallel without touching determinism.
    """
    block = rep_offset // _MC_CHUNK
    theta = _steinhaus_uniforms(seed, block, 0, replicates * n).reshape(replicates, n)
    return np.exp(2j * math.pi * theta)


def _basis_at(spec: SeriesSpec, lam: np.ndarray, points: np.ndarray) -> np.ndarray:
    """phi(lambda_n x) matrix of shape (n_terms, n_points); complex for all routes."""
    u = np.mod(lam[:, None] * points[None, :].astype(np.longdouble), 1.0).astype(np.float64)
    if spec.basis.kind == "sine_real":
        return np.exp(2j * math.pi * u)  # Im(X e^{2 pi i u}) taken downstream
    return eval_basis(spec.basis, u)


def _mc_reduce(chunks: list) -> tuple:
    """Combine per-chunk (count, sum, sum re^2, sum im^2) in fixed order."""
    count = sum(c[0] for c in chunks)
    total = sum((c[1] for c in chunks), 0.0 + 0.0j)
    sq_re = math.fsum(c[2] for c in chunks)
    sq_im = math.fsum(c[3] for c in chunks)
    return count, total, sq_re, sq_im


def _finalize(count, total, sq_re, sq_im, seed) -> MCEstimate:
    mean = total / count
    var_re = max(sq_re / count - mean.real**2, 0.0)
    var_im = max(sq_im / count - mean.imag**2, 0.0)
    if count > 1:
        scale = count / (count - 1)
        stderr = math.sqrt((var_re + var_im) * scale / count)
    else:
        stderr = 0.0
    return MCEstimate(mean=mean, stderr=stderr, replicates=count, seed=seed)


def _run_mc(compute_chunk, replicates: int, seed: int, threads: int) -> MCEstimate:
    """Run replicate chunks (fixed size, fixed order) and reduce deterministically."""
    bounds = [(i, min(i + _MC_CHUNK, replicates)) for i in range(0, replicates, _MC_CHUNK)]
    results = [None] * len(bounds)

    def worker(idx):
        lo, hi = bounds[idx]
        vals = compute_chunk(lo, hi)  # complex array of per-replicate statistics
        results[idx] = (
            hi - lo,
            complex(np.sum(vals)),
            float(np.sum(vals.real**2)),
            float(np.sum(vals.imag**2)),
        )

    if threads <= 1 or len(bounds) <= 1:
        for i in range(len(bounds)):
            worker(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(worker, range(len(bounds))))
    return _finalize(*_mc_reduce(results), seed)


def _xi_projection(values: np.ndarray, xi_vector) -> np.ndarray:
    """<xi, S> for complex-valued series (2-vector xi) or real series (scalar xi)."""
    if np.iscomplexobj(values) or isinstance(xi_vector, (tuple, list, np.ndarray)):
        xr, xi_ = (float(xi_vector[0]), float(xi_vector[1])) \
            if isinstance(xi_vector, (tuple, list, np.ndarray)) else (float(xi_vector), 0.0)
        return xr * values.real + xi_ * values.imag
    return float(xi_vector) * values


def mc_charfn(spec: SeriesSpec, x: float, y: float, xi_vector, replicates: int,
              seed: int, eps_tail: float = 1e-9, n_terms: Optional[int] = None,
              threads: int = 1) -> MCEstimate:
    """Empirical E[e^{-2 pi i <xi, S(x)-S(y)>}] over fresh phase draws.

    By the rotational symmetry of the phase law the true mean is real, so the
    imaginary part of the estimate is itself a consistency check.
    """
    if replicates < 100:
        raise ValueError(f"need at least 100 replicates, got {replicates}")
    n = _terms_count(spec, eps_tail, n_terms)
    lam = np.array([float(lambda_at(spec.freqs, k)) for k in range(1, n + 1)],
                   dtype=np.longdouble)
    amps = coefficients(spec.coeffs, 1, n + 1)
    pts = np.array([x, y], dtype=np.float64)
    phi = _basis_at(spec, lam, pts)  # (n, 2)
    weighted = amps[:, None] * phi

    def compute_chunk(lo, hi):
        xmat = _phase_matrix(n, hi - lo, seed, rep_offset=lo)
        s = xmat @ weighted  # (reps, 2)
        if spec.basis.kind == "sine_real":
            s = s.imag
        delta = s[:, 0] - s[:, 1]
        proj = _xi_projection(delta, xi_vector)
        return np.exp(-2j * math.pi * proj)

    return _run_mc(compute_chunk, replicates, seed, threads)


def mc_fourier_sq_grid(spec: SeriesSpec, measure_atoms, xi_vectors, replicates: int,
                       seed: int, eps_tail: float = 1e-9, n_terms: Optional[int] = None,
                       threads: int = 1) -> list:
    """Empirical E|mu_hat(xi)|^2 for a whole grid of frequencies at once.

    The sampled series values at the atoms are shared across frequencies, so
    a frequency sweep costs barely more than a single point.  Returns one
    MCEstimate per entry of xi_vectors, in order.
    """
    if replicates < 100:
        raise ValueError(f"need at least 100 replicates, got {replicates}")
    atoms = [(float(px), float(w)) for px, w in measure_atoms]
    wsum = math.fsum(w for _, w in atoms)
    if abs(wsum - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {wsum}")
    n = _terms_count(spec, eps_tail, n_terms)
    lam = np.array([float(lambda_at(spec.freqs, k)) for k in range(1, n + 1)],
                   dtype=np.longdouble)
    amps = coefficients(spec.coeffs, 1, n + 1)
    xs = np.array([px for px, _ in atoms])
    ws = np.array([w for _, w in atoms])
    phi = _basis_at(spec, lam, xs)
    weighted = amps[:, None] * phi  # (n_terms, n_atoms)
    n_xi = len(xi_vectors)

    bounds = [(i, min(i + _MC_CHUNK, replicates)) for i in range(0, replicates, _MC_CHUNK)]
    results = [None] * len(bounds)

    def worker(idx):
        lo, hi = bounds[idx]
        xmat = _phase_matrix(n, hi - lo, seed, rep_offset=lo)
        s = xmat @ weighted  # (reps, n_atoms)
        if spec.basis.kind == "sine_real":
            s = s.imag
        sums = np.empty(n_xi)
        sqs = np.empty(n_xi)
        for i, xi_vector in enumerate(xi_vectors):
            proj = _xi_projection(s, xi_vector)
            mu = np.exp(-2j * math.pi * proj) @ ws
            stat = mu.real**2 + mu.imag**2
            sums[i] = float(np.sum(stat))
            sqs[i] = float(np.sum(stat * stat))
        results[idx] = (hi - lo, sums, sqs)

    if threads <= 1 or len(bounds) <= 1:
        for i in range(len(bounds)):
            worker(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(worker, range(len(bounds))))

    out = []
    count = sum(r[0] for r in results)
    for i in range(n_xi):
        total = math.fsum(r[1][i] for r in results)
        sq = math.fsum(r[2][i] for r in results)
        out.append(_finalize(count, complex(total), sq, 0.0, seed))
    return out


def mc_fourier_sq(spec: SeriesSpec, measure_atoms, xi_vector, replicates: int,
                  seed: int, eps_tail: float = 1e-9, n_terms: Optional[int] = None,
                  threads: int = 1) -> MCEstimate:
    """Empirical E|mu_hat(xi)|^2: per replicate, draw phases, transform the atoms.

    The replicate statistic |sum_j w_j e^{-2 pi i <xi, S(x_j)>}|^2 is real, so
    the estimate's mean has zero imaginary part by construction.
    """
    return mc_fourier_sq_grid(spec, measure_atoms, [xi_vector], replicates, seed,
                              eps_tail=eps_tail, n_terms=n_terms, threads=threads)[0]


def charfn_l1_norm(spec: SeriesSpec, x: float, y: float, xi_max: float,
                   quadrature_step: float, eps_tail: float = 1e-9,
                   n_terms: Optional[int] = None) -> float:
    """Trapezoid approximation of 2 pi int_0^{xi_max} |psi_{x,y}(r)| r dr.

    Probes integrability of the increment's characteristic function; the tail
    beyond xi_max carries no rigorous bound and is simply not included.
    Diverges for x == y (psi is identically 1), which is rejected.
    """
    if x == y:
        raise ValueError("the increment characteristic function at x == y is "
                         "identically 1; its radial integral diverges")
    if not (xi_max > 0 and quadrature_step > 0):
        raise ValueError("xi_max and quadrature_step must be positive")
    n = _terms_count(spec, eps_tail, n_terms)
    base = _increment_args(spec, x, y, n)  # (n_terms,)
    rs = np.arange(0.0, xi_max + quadrature_step, quadrature_step)
    rs = rs[rs <= xi_max + 1e-12]
    args = _TWO_PI * rs[None, :] * base[:, None]
    vals = np.abs(_product_rows(args)) * rs
    return float(_TWO_PI * np.trapezoid(vals, dx=quadrature_step))
