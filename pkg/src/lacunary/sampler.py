"""Assembly and evaluation of random lacunary series over grids and Cantor sets.

The evaluator produces partial sums of

    S(x) = sum_{n=1}^{N} a_n X_n phi(lambda_n x),    X_n = e^{2 pi i theta_n},

with a certified bound on the discarded tail.  Two execution paths exist:

* an exact spectral path for uniform grids whose frequencies times the grid
  span are integers (the partial sum is then a trigonometric polynomial that
  an inverse FFT synthesizes exactly, with bins computed in modular integer
  arithmetic so frequencies like 2**999 lose nothing);
* a direct path that folds lambda_n * x into [0, 1) in 80-bit extended
  precision before evaluating the basis, accumulating terms in increasing n.

Both paths chunk the point set into fixed-size blocks, so results are
bit-identical for any worker count.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .basis import BasisFunction
from .sequences import CoefficientRule, FrequencyRule, coefficients, l1_tail, lambda_at

__all__ = [
    "PhaseModel",
    "SeriesSpec",
    "TestSet",
    "SampledCurve",
    "TruncationError",
    "draw_phases",
    "truncation_index",
    "eval_series",
    "eval_graph",
    "cantor_points",
    "eval_riemann_vortex",
    "spec_to_dict",
    "spec_from_dict",
    "spec_hash",
]

_TWO_PI = 2.0 * math.pi
_CHUNK = 65536          # fixed point-chunk size; never depends on thread count
_TRUNCATION_CAP = 10**7
_CANTOR_LEVEL_CAP = 24  # 2^24 points

# Lipschitz constant of each vanishing-at-zero basis near the origin, used to
# bound the low-frequency tail of two-sided series.  Only value-multiplicative
# bases with phi(0) = 0 keep the negative-index terms summable.
_LIP_AT_ZERO = {"one_minus_exp": _TWO_PI, "takagi_sine": math.sqrt(1.0 + 4.0 * math.pi**2)}


class TruncationError(RuntimeError):
    """The requested tail tolerance needs more terms than the hard cap allows."""


# ---------------------------------------------------------------------------
# phases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseModel:
    """How the phases theta_n are produced.

    steinhaus(seed)       : independent uniforms on [0, 1); a 64-bit master
                            seed plus a stream id select a counter-based
                            Philox stream, so equal seeds reproduce the exact
                            same sequence and distinct stream ids are
                            statistically independent.
    equidistributed(alpha): theta_n = n * alpha mod 1 (deterministic rotation).
    zero()                : theta_n = 0, i.e. X_n = 1 (deterministic series).
    """

    kind: str
    seed: Optional[int] = None
    alpha: Optional[float] = None

    @classmethod
    def steinhaus(cls, seed: int) -> "PhaseModel":
        return cls("steinhaus", seed=int(seed))

    @classmethod
    def equidistributed(cls, alpha: float) -> "PhaseModel":
        return cls("equidistributed", alpha=float(alpha))

    @classmethod
    def zero(cls) -> "PhaseModel":
        return cls("zero")

    def with_seed(self, seed: int) -> "PhaseModel":
        if self.kind != "steinhaus":
            return self
        return PhaseModel("steinhaus", seed=int(seed))


def _steinhaus_uniforms(seed: int, stream_id: int, side: int, count: int) -> np.ndarray:
    ss = np.random.SeedSequence(seed, spawn_key=(int(stream_id), int(side)))
    gen = np.random.Generator(np.random.Philox(ss))
    return gen.random(count)


def draw_phases(model: PhaseModel, count: int, stream_id: int = 0) -> np.ndarray:
    """Phases theta_1 .. theta_count in [0, 1)."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if model.kind == "zero":
        return np.zeros(count)
    if model.kind == "equidistributed":
        return np.mod(np.arange(1, count + 1, dtype=np.float64) * model.alpha, 1.0)
    if model.kind == "steinhaus":
        if model.seed is None:
            raise ValueError("steinhaus phase model has no seed set")
        return _steinhaus_uniforms(model.seed, stream_id, 0, count)
    raise ValueError(f"unknown phase model kind {model.kind!r}")


def _draw_phases_negative(model: PhaseModel, count: int, stream_id: int) -> np.ndarray:
    """Phases theta_{-1} .. theta_{-count} for two-sided series."""
    if model.kind == "zero":
        return np.zeros(count)
    if model.kind == "equidistributed":
        return np.mod(-np.arange(1, count + 1, dtype=np.float64) * model.alpha, 1.0)
    if model.kind == "steinhaus":
        return _steinhaus_uniforms(model.seed, stream_id, 1, count)
    raise ValueError(f"unknown phase model kind {model.kind!r}")


# ---------------------------------------------------------------------------
# series specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSpec:
    """Complete recipe for one random series.

    two_sided extends the sum over negative indices (the low-frequency terms
    that restore the exact scaling law of Weierstrass-Mandelbrot curves);
    this requires geometric coefficients and frequencies with a common base
    and a basis vanishing at 0.
    """

    coeffs: CoefficientRule
    freqs: FrequencyRule
    basis: BasisFunction
    phases: PhaseModel
    two_sided: bool = False
    label: str = ""

    # -- presets ----------------------------------------------------------

    @classmethod
    def weierstrass(cls, beta: float, lam: float, phases: PhaseModel) -> "SeriesSpec":
        """sum lam^{-beta n} X_n e^{2 pi i lambda_n x} with lambda_n = lam^{n-1}.

        Frequencies carry the lambda_1 = 1 normalization; the classical
        parametrization (frequencies lam^n) is this series evaluated at
        lam * x, which leaves every dimension unchanged.
        """
        if not (0.0 < beta <= 1.0):
            raise ValueError(f"Weierstrass decay must satisfy 0 < beta <= 1, got {beta}")
        return cls(CoefficientRule.geometric(beta, lam), FrequencyRule.geometric(lam),
                   BasisFunction.exp(), phases, label=f"weierstrass(beta={beta},lam={lam})")

    @classmethod
    def riemann(cls, a: float, b: float, phases: PhaseModel) -> "SeriesSpec":
        """sum n^{-b} X_n e^{2 pi i n^a x}."""
        return cls(CoefficientRule.power(b), FrequencyRule.power(a),
                   BasisFunction.exp(), phases, label=f"riemann(a={a},b={b})")

    @classmethod
    def wm(cls, beta: float, lam: float, phases: PhaseModel) -> "SeriesSpec":
        """Two-sided Weierstrass-Mandelbrot series with basis 1 - e^{2 pi i t}.

        Satisfies W(lam x) = lam^beta W(x) exactly in the infinite sum.
        """
        if not (0.0 < beta < 1.0):
            raise ValueError(f"two-sided series needs 0 < beta < 1, got {beta}")
        return cls(CoefficientRule.geometric(beta, lam), FrequencyRule.geometric(lam),
                   BasisFunction.one_minus_exp(), phases, two_sided=True,
                   label=f"wm(beta={beta},lam={lam})")

    @classmethod
    def real_sine(cls, a: float, b: float, phases: PhaseModel) -> "SeriesSpec":
        """sum n^{-b} sin(2 pi (n^a x + theta_n)), real codomain."""
        return cls(CoefficientRule.power(b), FrequencyRule.power(a),
                   BasisFunction.sine_real(), phases, label=f"real_sine(a={a},b={b})")

    @classmethod
    def takagi(cls, beta: float, lam: float, phases: PhaseModel) -> "SeriesSpec":
        """Takagi-type curve: basis ||t|| + i sin(2 pi t) with geometric weights."""
        return cls(CoefficientRule.geometric(beta, lam), FrequencyRule.geometric(lam),
                   BasisFunction.takagi_sine(), phases, label=f"takagi(beta={beta},lam={lam})")

    @property
    def codomain_dim(self) -> int:
        return self.basis.codomain_dim


# ---------------------------------------------------------------------------
# test sets
# ---------------------------------------------------------------------------

def cantor_points(r: float, m: int) -> np.ndarray:
    """Left endpoints of the level-m intervals of the self-similar Cantor set.

    Each level keeps two subintervals of length ratio r at both ends, so the
    limit set has Hausdorff (and box) dimension log 2 / log(1/r).
    """
    if not (0.0 < r < 0.5):
        raise ValueError(f"keep ratio must lie in (0, 1/2), got {r}")
    if m < 0:
        raise ValueError(f"level must be >= 0, got {m}")
    if m > _CANTOR_LEVEL_CAP:
        raise ValueError(f"level {m} exceeds the {_CANTOR_LEVEL_CAP} cap (2^24 points)")
    pts = np.zeros(1)
    for k in range(m):
        off = (1.0 - r) * r**k
        pts = np.concatenate([pts, pts + off])
    return np.sort(pts)


@dataclass(frozen=True)
class TestSet:
    """A concrete point set standing in for a Borel set of known dimension."""

    kind: str  # "interval" | "cantor"
    lo: float = 0.0
    hi: float = 1.0
    points: int = 0
    ratio: Optional[float] = None
    level: Optional[int] = None

    @classmethod
    def interval(cls, lo: float, hi: float, points: int) -> "TestSet":
        if not hi > lo:
            raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
        if points < 1:
            raise ValueError(f"need at least one point, got {points}")
        return cls("interval", lo=float(lo), hi=float(hi), points=int(points))

    @classmethod
    def cantor(cls, ratio: float, level: int) -> "TestSet":
        if not (0.0 < ratio < 0.5):
            raise ValueError(f"keep ratio must lie in (0, 1/2), got {ratio}")
        if not (0 <= level <= _CANTOR_LEVEL_CAP):
            raise ValueError(f"level must lie in [0, {_CANTOR_LEVEL_CAP}], got {level}")
        return cls("cantor", lo=0.0, hi=1.0, points=2**level,
                   ratio=float(ratio), level=int(level))

    @property
    def hausdorff_dim(self) -> float:
        if self.kind == "interval":
            return 1.0
        return math.log(2.0) / math.log(1.0 / self.ratio)

    @property
    def uniform_step(self) -> Optional[float]:
        """Grid spacing for intervals (points are lo + j*step, half-open), else None."""
        if self.kind == "interval":
            return (self.hi - self.lo) / self.points
        return None

    def materialize(self) -> np.ndarray:
        if self.kind == "interval":
            step = (self.hi - self.lo) / self.points
            return self.lo + step * np.arange(self.points, dtype=np.float64)
        return cantor_points(self.ratio, self.level)


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------

def _pos_tail_bound(spec: SeriesSpec, n: int) -> float:
    bound = l1_tail(spec.coeffs, n) * spec.basis.sup_norm
    if spec.two_sided:
        # Two-sided amplitudes are lam^{-beta m} at index m = n - 1.
        bound *= spec.coeffs.lam ** spec.coeffs.beta
    return bound


def _neg_tail_bound(spec: SeriesSpec, m: int, x_max: float) -> float:
    lam, beta = spec.coeffs.lam, spec.coeffs.beta
    lip = _LIP_AT_ZERO[spec.basis.kind]
    r = lam ** (-(1.0 - beta))
    return lip * x_max * r ** (m + 1) / (1.0 - r)


def _smallest_n(bound_fn, eps: float, n_cap: Optional[int]) -> int:
    """Smallest n >= 0 with bound_fn(n) <= eps, via doubling plus bisection."""
    if bound_fn(0) <= eps:
        return 0
    hi = 1
    while bound_fn(hi) > eps:
        if n_cap is not None and hi >= n_cap:
            return n_cap  # explicit rules: tail is exactly the leftover sum
        hi *= 2
        if hi > _TRUNCATION_CAP:
            raise TruncationError(
                f"tail tolerance {eps:g} needs more than {_TRUNCATION_CAP} terms"
            )
    lo = hi // 2 + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if bound_fn(mid) <= eps:
            hi = mid
        else:
            lo = mid + 1
    return hi


def truncation_index(spec: SeriesSpec, eps_tail: float, x_max: float = 1.0):
    """Smallest truncation making the certified tail at most eps_tail.

    One-sided specs return an integer N (keep terms 1..N).  Two-sided specs
    split the budget between the high-frequency and low-frequency halves and
    return (N, M): the low-frequency tail is controlled through the Lipschitz
    bound |phi(t)| <= lip * |t| near 0, which brings in x_max.
    """
    if not eps_tail > 0.0:
        raise ValueError(f"eps_tail must be positive, got {eps_tail}")
    if not spec.two_sided:
        cap = spec.coeffs.n_max
        n = _smallest_n(lambda k: _pos_tail_bound(spec, k), eps_tail, cap)
        return n
    if spec.coeffs.kind != "geometric" or spec.freqs.kind != "geometric":
        raise ValueError("two-sided series need geometric coefficients and frequencies")
    if spec.basis.kind not in _LIP_AT_ZERO:
        raise ValueError(
            f"two-sided series need a basis vanishing at 0, not {spec.basis.kind!r}"
        )
    half = eps_tail / 2.0
    n = _smallest_n(lambda k: _pos_tail_bound(spec, k), half, None)
    m = _smallest_n(lambda k: _neg_tail_bound(spec, k, x_max), half, None)
    return n, m


# ---------------------------------------------------------------------------
# evaluation machinery
# ---------------------------------------------------------------------------

def _frequency_list(freqs: FrequencyRule, n_terms: int):
    """Frequencies 1..n_terms as exact ints where possible, floats otherwise."""
    out = []
    if freqs.kind == "geometric" and float(freqs.param).is_integer():
        lam = int(freqs.param)
        v = 1
        for _ in range(n_terms):
            out.append(v)
            v *= lam
        return out
    if freqs.kind == "power" and float(freqs.param).is_integer():
        a = int(freqs.param)
        return [n**a for n in range(1, n_terms + 1)]
    for n in range(1, n_terms + 1):
        v = lambda_at(freqs, n)
        out.append(int(v) if v.is_integer() and abs(v) < 2**53 else v)
    return out


def _exp_components(spec: SeriesSpec, xfactors: np.ndarray, freq_list: list):
    """Decompose exp-family terms into a constant plus (amplitude, frequency) pairs.

    xfactors[j] = a_n X_n for the j-th kept term.  Returns (c0, amps, freqs)
    where the partial sum equals c0 + sum_j amps[j] e^{2 pi i freqs[j] x}.
    """
    kind = spec.basis.kind
    if kind in ("exp", "sine_real"):
        return 0.0 + 0.0j, list(xfactors), list(freq_list)
    if kind == "one_minus_exp":
        c0 = complex(np.sum(xfactors))
        return c0, list(-xfactors), list(freq_list)
    if kind == "exp_diff":
        lam_b, beta_b = spec.basis.lam, spec.basis.beta
        scale = lam_b ** (-beta_b)
        amps, fs = [], []
        lam_int = int(lam_b) if float(lam_b).is_integer() else None
        for amp, f in zip(xfactors, freq_list):
            amps.append(amp)
            fs.append(f)
            amps.append(-amp * scale)
            if lam_int is not None and isinstance(f, int):
                fs.append(f * lam_int)
            else:
                fs.append(float(f) * lam_b)
        return 0.0 + 0.0j, amps, fs
    raise ValueError(f"basis {kind!r} is not in the exponential family")


def _try_exact_bins(freqs_list: list, span: float, m_points: int):
    """Bin index round(f * span) mod m_points for each frequency, or None.

    Exact when the frequencies are ints and the span is an integer; otherwise
    requires f*span to sit within 1e-9 of an integer below 2^53.
    """
    span_int = int(span) if float(span).is_integer() else None
    bins = []
    for f in freqs_list:
        if isinstance(f, int) and span_int is not None:
            bins.append((f * span_int) % m_points)
            continue
        ft = float(f) * span
        if abs(ft) >= 2**53:
            return None
        r = round(ft)
        if abs(ft - r) > 1e-9 * max(1.0, abs(ft)):
            return None
        bins.append(r % m_points)
    return bins


def _chunked(n_points: int):
    return [(i, min(i + _CHUNK, n_points)) for i in range(0, n_points, _CHUNK)]


def _run_chunks(worker, n_points: int, threads: int) -> None:
    chunks = _chunked(n_points)
    if threads <= 1 or len(chunks) <= 1:
        for lo, hi in chunks:
            worker(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda c: worker(*c), chunks))


def _direct_exp_sum(c0: complex, amps: list, freqs_list: list, xs: np.ndarray,
                    threads: int) -> np.ndarray:
    """Direct summation of c0 + sum amps[j] e^{2 pi i f_j x} over the points.

    Each frequency-point product is folded into [0, 1) in extended precision;
    terms are added in index order into extended-precision accumulators.
    """
    fs = np.array([float(f) for f in freqs_list], dtype=np.longdouble)
    ar = np.array([a.real for a in amps])
    ai = np.array([a.imag for a in amps])
    out = np.empty(len(xs), dtype=np.complex128)

    def worker(lo, hi):
        xl = xs[lo:hi].astype(np.longdouble)
        acc_re = np.zeros(hi - lo, dtype=np.longdouble)
        acc_im = np.zeros(hi - lo, dtype=np.longdouble)
        for j in range(len(fs)):
            u = np.mod(fs[j] * xl, 1.0).astype(np.float64)
            c = np.cos(_TWO_PI * u)
            s = np.sin(_TWO_PI * u)
            acc_re += ar[j] * c - ai[j] * s
            acc_im += ar[j] * s + ai[j] * c
        out[lo:hi] = acc_re.astype(np.float64) + 1j * acc_im.astype(np.float64)

    _run_chunks(worker, len(xs), threads)
    return out + c0


def _direct_basis_sum(basis_kind: str, xfactors: np.ndarray, freqs_list: list,
                      xs: np.ndarray, threads: int) -> np.ndarray:
    """Per-term direct summation without exponential decomposition.

    Each term is amp * phi(u) with the folded argument u and a cancellation-
    free basis formula (1 - e^{2 pi i u} = 2 sin^2(pi u) - i sin(2 pi u)), so
    huge amplitudes against near-zero basis values, as on the low-frequency
    side of two-sided series, stay at full relative precision.
    """
    fs = np.array([float(f) for f in freqs_list], dtype=np.longdouble)
    ar = xfactors.real
    ai = xfactors.imag
    out = np.empty(len(xs), dtype=np.complex128)

    def worker(lo, hi):
        xl = xs[lo:hi].astype(np.longdouble)
        acc_re = np.zeros(hi - lo, dtype=np.longdouble)
        acc_im = np.zeros(hi - lo, dtype=np.longdouble)
        for j in range(len(fs)):
            u = np.mod(fs[j] * xl, 1.0).astype(np.float64)
            if basis_kind == "exp":
                pre = np.cos(_TWO_PI * u)
                pim = np.sin(_TWO_PI * u)
            elif basis_kind == "one_minus_exp":
                s = np.sin(math.pi * u)
                pre = 2.0 * s * s
                pim = -np.sin(_TWO_PI * u)
            elif basis_kind == "takagi_sine":
                pre = np.minimum(u, 1.0 - u)
                pim = np.sin(_TWO_PI * u)
            else:
                raise ValueError(f"no stable direct path for basis {basis_kind!r}")
            acc_re += ar[j] * pre - ai[j] * pim
            acc_im += ar[j] * pim + ai[j] * pre
        out[lo:hi] = acc_re.astype(np.float64) + 1j * acc_im.astype(np.float64)

    _run_chunks(worker, len(xs), threads)
    return out


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """Evaluated series values with their truncation certificate.

    Every stored value differs from the true infinite sum by at most
    tail_bound in modulus.
    """

    xs: np.ndarray
    values: np.ndarray
    truncation_n: int
    tail_bound: float
    spec_hash: str
    stream_id: int
    neg_truncation: int = 0
    uniform_step: Optional[float] = None


def _sum_terms(spec: SeriesSpec, xfactors: np.ndarray, freq_list: list,
               test_set: TestSet, xs: np.ndarray, threads: int) -> np.ndarray:
    if spec.basis.kind == "takagi_sine" or spec.two_sided:
        return _direct_basis_sum(spec.basis.kind, xfactors, freq_list, xs, threads)
    c0, amps, fs = _exp_components(spec, xfactors, freq_list)
    if test_set.kind == "interval":
        bins = _try_exact_bins(fs, test_set.hi - test_set.lo, test_set.points)
        if bins is not None:
            lo = test_set.lo
            if lo != 0.0:
                # fold e^{2 pi i f lo} into the amplitudes
                amps = [a * np.exp(2j * math.pi * float(f) * lo) for a, f in zip(amps, fs)]
            m_points = test_set.points
            spectrum = np.zeros(m_points, dtype=np.complex128)
            for a, b in zip(amps, bins):
                spectrum[b] += a
            return m_points * np.fft.ifft(spectrum) + c0
    return _direct_exp_sum(c0, amps, fs, xs, threads)


def eval_series(spec: SeriesSpec, test_set: TestSet, eps_tail: float,
                stream_id: int = 0, threads: int = 1) -> SampledCurve:
    """Partial sums of the series on the test set, tail-certified.

    Deterministic: identical (spec, test_set, eps_tail, stream_id) give
    bit-identical output for any thread count.  Phases are drawn once, before
    any parallel work.
    """
    xs = test_set.materialize()
    x_max = float(np.max(np.abs(xs))) if len(xs) else 1.0
    if spec.two_sided:
        n_pos, n_neg = truncation_index(spec, eps_tail, x_max=max(x_max, 1e-300))
    else:
        n_pos, n_neg = truncation_index(spec, eps_tail), 0

    lam = spec.coeffs.lam if spec.two_sided else None
    theta = draw_phases(spec.phases, n_pos, stream_id)
    xn = np.exp(2j * math.pi * theta)
    if spec.two_sided:
        # paper-style indexing m = n-1 >= 0: amplitudes lam^{-beta m}
        beta = spec.coeffs.beta
        amp_pos = lam ** (-beta * np.arange(n_pos, dtype=np.float64))
        xfactors = amp_pos * xn
        freq_list = _frequency_list(spec.freqs, n_pos)
        theta_neg = _draw_phases_negative(spec.phases, n_neg, stream_id)
        xfactors_neg = lam ** (beta * np.arange(1, n_neg + 1, dtype=np.float64)) \
            * np.exp(2j * math.pi * theta_neg)
        freq_neg = [float(lam) ** (-m) for m in range(1, n_neg + 1)]
        xfactors = np.concatenate([xfactors, xfactors_neg])
        freq_list = freq_list + freq_neg
        tail = _pos_tail_bound(spec, n_pos) + _neg_tail_bound(spec, n_neg, x_max)
    else:
        amp = coefficients(spec.coeffs, 1, n_pos + 1)
        xfactors = amp * xn
        freq_list = _frequency_list(spec.freqs, n_pos)
        tail = _pos_tail_bound(spec, n_pos)

    values = _sum_terms(spec, xfactors, freq_list, test_set, xs, threads)
    if spec.basis.kind == "sine_real":
        values = values.imag.copy()

    return SampledCurve(
        xs=xs, values=values, truncation_n=n_pos, tail_bound=tail,
        spec_hash=spec_hash(spec), stream_id=stream_id, neg_truncation=n_neg,
        uniform_step=test_set.uniform_step,
    )


def eval_graph(spec: SeriesSpec, test_set: TestSet, eps_tail: float,
               stream_id: int = 0, threads: int = 1) -> np.ndarray:
    """Graph points over the test set: rows (x, Re S, Im S), or (x, S) for real series."""
    curve = eval_series(spec, test_set, eps_tail, stream_id, threads)
    if spec.codomain_dim == 1:
        return np.column_stack([curve.xs, curve.values])
    return np.column_stack([curve.xs, curve.values.real, curve.values.imag])


# ---------------------------------------------------------------------------
# randomized vortex-filament curve
# ---------------------------------------------------------------------------

def eval_riemann_vortex(test_set: TestSet, eps_tail: float, seed: int,
                        stream_id: int = 0, threads: int = 1) -> SampledCurve:
    """Randomized vortex-filament trajectory built from two quadratic sine sums.

    phi(t) = i t X_0 + sum_{n != 0} X_n (1 - e^{-4 pi^2 i n^2 t}) / (4 pi^2 n^2),
    with independent Steinhaus factors for n > 0 and n < 0.  Pairs n, -n share
    the frequency n^2, so the term sum is evaluated directly with combined
    random factors X_n + X_{-n}.
    """
    xs = test_set.materialize()
    # tail: sum_{|n|>N} 2/(4 pi^2 n^2) <= 1/(pi^2 N)
    n_terms = max(1, math.ceil(1.0 / (math.pi**2 * eps_tail)))
    if n_terms > _TRUNCATION_CAP:
        raise TruncationError(f"tail tolerance {eps_tail:g} too small for vortex preset")
    x_pos = np.exp(2j * math.pi * _steinhaus_uniforms(seed, stream_id, 0, n_terms + 1))
    x_neg = np.exp(2j * math.pi * _steinhaus_uniforms(seed, stream_id, 1, n_terms))
    x0, x_pos = x_pos[0], x_pos[1:]

    n = np.arange(1, n_terms + 1, dtype=np.float64)
    w = 1.0 / (4.0 * math.pi**2 * n * n)
    combined = w * (x_pos + x_neg)
    # 1 - e^{2 pi i f u} with u = -2 pi t and f = n^2
    c0 = complex(np.sum(combined))
    amps = list(-combined)
    freq_list = [float(k * k) for k in range(1, n_terms + 1)]
    u = -_TWO_PI * xs
    out = np.empty(len(xs), dtype=np.complex128)
    fs = np.array(freq_list, dtype=np.longdouble)
    ar = np.array([a.real for a in amps])
    ai = np.array([a.imag for a in amps])

    def worker(lo, hi):
        ul = u[lo:hi].astype(np.longdouble)
        acc_re = np.zeros(hi - lo, dtype=np.longdouble)
        acc_im = np.zeros(hi - lo, dtype=np.longdouble)
        for j in range(len(fs)):
            v = np.mod(fs[j] * ul, 1.0).astype(np.float64)
            c = np.cos(_TWO_PI * v)
            s = np.sin(_TWO_PI * v)
            acc_re += ar[j] * c - ai[j] * s
            acc_im += ar[j] * s + ai[j] * c
        out[lo:hi] = acc_re.astype(np.float64) + 1j * acc_im.astype(np.float64)

    _run_chunks(worker, len(xs), threads)
    values = out + c0 + 1j * xs * x0

    return SampledCurve(
        xs=xs, values=values, truncation_n=n_terms,
        tail_bound=1.0 / (math.pi**2 * n_terms), spec_hash="riemann_vortex",
        stream_id=stream_id, uniform_step=test_set.uniform_step,
    )


# ---------------------------------------------------------------------------
# serialization (shared with the CLI)
# ---------------------------------------------------------------------------

def spec_to_dict(spec: SeriesSpec) -> dict:
    coeffs = {"kind": spec.coeffs.kind}
    for f in ("beta", "lam", "b", "q"):
        v = getattr(spec.coeffs, f)
        if v is not None:
            coeffs[f] = v
    if spec.coeffs.values is not None:
        coeffs["values"] = list(spec.coeffs.values)
    freqs = {"kind": spec.freqs.kind}
    if spec.freqs.param is not None:
        freqs["param"] = spec.freqs.param
    if spec.freqs.values is not None:
        freqs["values"] = list(spec.freqs.values)
    basis = {"kind": spec.basis.kind}
    if spec.basis.kind == "exp_diff":
        basis["beta"] = spec.basis.beta
        basis["lam"] = spec.basis.lam
    phases = {"kind": spec.phases.kind}
    if spec.phases.seed is not None:
        phases["seed"] = spec.phases.seed
    if spec.phases.alpha is not None:
        phases["alpha"] = spec.phases.alpha
    return {"coeffs": coeffs, "freqs": freqs, "basis": basis, "phases": phases,
            "two_sided": spec.two_sided, "label": spec.label}


def _coeffs_from_dict(d: dict) -> CoefficientRule:
    kind = d["kind"]
    if kind == "geometric":
        return CoefficientRule.geometric(d["beta"], d["lam"])
    if kind == "power":
        return CoefficientRule.power(d["b"])
    if kind == "per_block_geometric":
        return CoefficientRule.per_block_geometric(d["q"])
    if kind == "explicit":
        return CoefficientRule.explicit(d["values"])
    raise ValueError(f"unknown coefficient kind {kind!r}")


def _freqs_from_dict(d: dict) -> FrequencyRule:
    kind = d["kind"]
    if kind == "geometric":
        return FrequencyRule.geometric(d["param"])
    if kind == "power":
        return FrequencyRule.power(d["param"])
    if kind == "explicit":
        return FrequencyRule.explicit(d["values"])
    raise ValueError(f"unknown frequency kind {kind!r}")


def _basis_from_dict(d: dict) -> BasisFunction:
    kind = d["kind"]
    if kind == "exp":
        return BasisFunction.exp()
    if kind == "one_minus_exp":
        return BasisFunction.one_minus_exp()
    if kind == "exp_diff":
        return BasisFunction.exp_diff(d["beta"], d["lam"])
    if kind == "takagi_sine":
        return BasisFunction.takagi_sine()
    if kind == "sine_real":
        return BasisFunction.sine_real()
    raise ValueError(f"unknown basis kind {kind!r}")


def _phases_from_dict(d: dict) -> PhaseModel:
    kind = d["kind"]
    if kind == "steinhaus":
        return PhaseModel.steinhaus(d["seed"])
    if kind == "equidistributed":
        return PhaseModel.equidistributed(d["alpha"])
    if kind == "zero":
        return PhaseModel.zero()
    raise ValueError(f"unknown phase kind {kind!r}")


def spec_from_dict(d: dict) -> SeriesSpec:
    return SeriesSpec(
        coeffs=_coeffs_from_dict(d["coeffs"]),
        freqs=_freqs_from_dict(d["freqs"]),
        basis=_basis_from_dict(d["basis"]),
        phases=_phases_from_dict(d["phases"]),
        two_sided=bool(d.get("two_sided", False)),
        label=d.get("label", ""),
    )


def spec_hash(spec: SeriesSpec) -> str:
    blob = json.dumps(spec_to_dict(spec), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
