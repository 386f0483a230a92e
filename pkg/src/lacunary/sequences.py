"""Coefficient and frequency sequences of a lacunary series, and their block statistics.

A series sum_n a_n X_n phi(lambda_n x) is described by a coefficient sequence
{a_n} with sum |a_n| < infinity and a strictly increasing frequency sequence
{lambda_n} with lambda_1 = 1 and bounded gap ratio q = sup lambda_{n+1}/lambda_n.
Grouping indices into frequency blocks [q^k, q^{k+1}) yields the block masses
s_k (the l2 norm of the coefficients in block k), whose decay rate

    -log s_k / (k log q)

has liminf sigma and limsup tau.  Those two exponents drive every dimension
formula in the `oracle` module.  This module provides finite-k estimators for
them plus certified l1/l2 tail bounds used for series truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "FrequencyRule",
    "CoefficientRule",
    "BlockStats",
    "GapExponents",
    "EmptyBlockError",
    "lambda_at",
    "gap_ratio",
    "block_stats",
    "estimate_sigma_tau",
    "l1_tail",
    "l2_tail_sq",
    "coefficients",
]

# Refuse to enumerate a single frequency block with more indices than this.
_BLOCK_ENUM_CAP = 10**7

_ZETA2 = math.pi**2 / 6.0


class EmptyBlockError(ValueError):
    """A frequency block [q^k, q^{k+1}) contains no index.

    This happens exactly when the frequencies grow super-exponentially, which
    breaks the block-decay analysis; it is reported loudly instead of being
    skipped.
    """


@dataclass(frozen=True)
class FrequencyRule:
    """Strictly increasing frequencies lambda_n, normalized so lambda_1 = 1.

    kinds:
      geometric(lam) : lambda_n = lam**(n-1)        (gap ratio exactly lam)
      power(a)       : lambda_n = n**a              (gap ratio 2**a, at n=1)
      explicit(vals) : user-supplied increasing list
    """

    kind: str
    param: Optional[float] = None
    values: Optional[tuple] = None

    @classmethod
    def geometric(cls, lam: float) -> "FrequencyRule":
        if not lam > 1.0:
            raise ValueError(f"geometric frequency ratio must exceed 1, got {lam}")
        return cls("geometric", param=float(lam))

    @classmethod
    def power(cls, a: float) -> "FrequencyRule":
        if not a > 0.0:
            raise ValueError(f"power frequency exponent must be positive, got {a}")
        return cls("power", param=float(a))

    @classmethod
    def explicit(cls, values) -> "FrequencyRule":
        vals = tuple(float(v) for v in values)
        if len(vals) < 1:
            raise ValueError("explicit frequency list is empty")
        for i in range(len(vals) - 1):
            if not vals[i + 1] > vals[i]:
                raise ValueError(
                    f"explicit frequencies must be strictly increasing "
                    f"(violated at index {i + 1})"
                )
        return cls("explicit", values=vals)

    @property
    def n_max(self) -> Optional[int]:
        """Largest valid index for explicit rules, None for unbounded rules."""
        return len(self.values) if self.kind == "explicit" else None


@dataclass(frozen=True)
class CoefficientRule:
    """Absolutely summable, nowhere-zero coefficients a_n.

    kinds:
      geometric(beta, lam)      : a_n = lam**(-beta*n)
      power(b)                  : a_n = n**(-b), b > 1
      per_block_geometric(q)    : within frequency block k (indices
                                  2^k <= n < 2^{k+1}) a geometric run with
                                  first term k**-2 and ratio 1/2; block 0 is
                                  the single index n=1 with a_1 = 1.  Gives
                                  s_k ~ k**-2, i.e. sigma = tau = 0.
      explicit(vals)            : finite list, all nonzero
    """

    kind: str
    beta: Optional[float] = None
    lam: Optional[float] = None
    b: Optional[float] = None
    q: Optional[float] = None
    values: Optional[tuple] = None

    @classmethod
    def geometric(cls, beta: float, lam: float) -> "CoefficientRule":
        if not beta > 0.0:
            raise ValueError(f"geometric coefficient decay must be positive, got {beta}")
        if not lam > 1.0:
            raise ValueError(f"geometric coefficient base must exceed 1, got {lam}")
        return cls("geometric", beta=float(beta), lam=float(lam))

    @classmethod
    def power(cls, b: float) -> "CoefficientRule":
        if not b > 1.0:
            raise ValueError(f"power coefficient exponent must exceed 1, got {b}")
        return cls("power", b=float(b))

    @classmethod
    def per_block_geometric(cls, q: float) -> "CoefficientRule":
        if not q > 1.0:
            raise ValueError(f"block gap ratio must exceed 1, got {q}")
        return cls("per_block_geometric", q=float(q))

    @classmethod
    def explicit(cls, values) -> "CoefficientRule":
        vals = tuple(float(v) for v in values)
        if any(v == 0.0 for v in vals):
            raise ValueError("explicit coefficients must all be nonzero")
        return cls("explicit", values=vals)

    @property
    def n_max(self) -> Optional[int]:
        return len(self.values) if self.kind == "explicit" else None


@dataclass(frozen=True)
class BlockStats:
    """l2 mass of the coefficients whose frequency lies in [q^k, q^{k+1})."""

    k: int
    n_first: int  # first index in the block (1-based)
    n_last: int   # last index in the block (inclusive)
    s_k: float

    @property
    def size(self) -> int:
        return self.n_last - self.n_first + 1


@dataclass(frozen=True)
class GapExponents:
    """Finite-k estimates of the block-decay exponents sigma and tau.

    per_k holds (k, -log s_k / (k log q)) for every block in the window;
    sigma_est / tau_est are the min / max of those ratios, and slope is the
    least-squares slope of -log s_k against k log q, which converges much
    faster than the raw ratios when the decay is exactly geometric.
    """

    q: float
    per_k: tuple
    sigma_est: float
    tau_est: float
    window: tuple
    slope: float


def lambda_at(rule: FrequencyRule, n: int) -> float:
    """Frequency lambda_n (n is 1-based)."""
    if n < 1:
        raise ValueError(f"frequency index must be >= 1, got {n}")
    if rule.kind == "geometric":
        return rule.param ** (n - 1)
    if rule.kind == "power":
        return float(n) ** rule.param
    if rule.kind == "explicit":
        if n > len(rule.values):
            raise ValueError(
                f"index {n} beyond explicit frequency list of length {len(rule.values)}"
            )
        return rule.values[n - 1]
    raise ValueError(f"unknown frequency rule kind {rule.kind!r}")


def gap_ratio(rule: FrequencyRule, n_max: int = 2) -> float:
    """sup of lambda_{n+1}/lambda_n over n < n_max.

    For geometric rules the ratio is constant and returned exactly; for power
    rules the sup is attained at n=1 and equals 2**a.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if rule.kind == "geometric":
        return rule.param
    if rule.kind == "power":
        return 2.0 ** rule.param
    top = n_max if rule.n_max is None else min(n_max, rule.n_max)
    best = 0.0
    prev = lambda_at(rule, 1)
    for n in range(2, top + 1):
        cur = lambda_at(rule, n)
        best = max(best, cur / prev)
        prev = cur
    return best


def _first_index_at_or_above(rule: FrequencyRule, threshold: float) -> Optional[int]:
    """Smallest n with lambda_n >= threshold, or None if the rule never reaches it."""
    if rule.kind == "explicit":
        lo, hi = 1, len(rule.values)
        if rule.values[hi - 1] < threshold:
            return None
        while lo < hi:
            mid = (lo + hi) // 2
            if rule.values[mid - 1] >= threshold:
                hi = mid
            else:
                lo = mid + 1
        return lo
    # Unbounded monotone rule: doubling search then bisection.
    if lambda_at(rule, 1) >= threshold:
        return 1
    hi = 2
    while lambda_at(rule, hi) < threshold:
        hi *= 2
        if hi > 2**62:
            raise OverflowError("frequency search exceeded 2^62 indices")
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if lambda_at(rule, mid) >= threshold:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _block_index_range(freqs: FrequencyRule, q: float, k: int) -> tuple:
    """Half-open index range [n_first, n_end) of frequency block k."""
    lo, hi = q**k, q ** (k + 1)
    n_first = _first_index_at_or_above(freqs, lo)
    if n_first is None:
        raise EmptyBlockError(f"block k={k}: all frequencies lie below q^{k}={lo}")
    n_end = _first_index_at_or_above(freqs, hi)
    if n_end is None:
        # Explicit list ends inside the block.
        n_end = len(freqs.values) + 1
    if n_end <= n_first:
        raise EmptyBlockError(
            f"block k={k} in [{lo:g}, {hi:g}) is empty: "
            "frequencies grow super-exponentially for this q"
        )
    return n_first, n_end


def coefficients(rule: CoefficientRule, n_first: int, n_end: int) -> np.ndarray:
    """Coefficient values a_n for n in [n_first, n_end) as a float array."""
    if n_end <= n_first:
        return np.empty(0)
    n = np.arange(n_first, n_end, dtype=np.float64)
    if rule.kind == "geometric":
        return rule.lam ** (-rule.beta * n)
    if rule.kind == "power":
        return n ** (-rule.b)
    if rule.kind == "explicit":
        if n_end - 1 > len(rule.values):
            raise ValueError(
                f"index {n_end - 1} beyond explicit coefficient list "
                f"of length {len(rule.values)}"
            )
        return np.asarray(rule.values[n_first - 1 : n_end - 1], dtype=np.float64)
    if rule.kind == "per_block_geometric":
        idx = np.arange(n_first, n_end, dtype=np.int64)
        k = np.floor(np.log2(idx)).astype(np.int64)
        first = np.where(k == 0, 1.0, k.astype(np.float64) ** -2.0)
        return first * np.exp2(-(idx - 2**k).astype(np.float64))
    raise ValueError(f"unknown coefficient rule kind {rule.kind!r}")


def _per_block_l2_range(n_first: int, n_end: int) -> float:
    """Closed-form sum of a_n^2 over [n_first, n_end) for the per-block rule.

    The range may straddle the canonical dyadic blocks arbitrarily; each
    intersected block contributes a finite geometric sum.
    """
    total = 0.0
    u = n_first
    while u < n_end:
        j = u.bit_length() - 1  # canonical block containing u
        block_end = 2 ** (j + 1)
        v = min(n_end, block_end)
        first = 1.0 if j == 0 else float(j) ** -2.0
        o1, o2 = u - 2**j, v - 2**j
        total += first * first * (4.0 ** (-o1) - 4.0 ** (-o2)) * (4.0 / 3.0)
        u = v
    return total


def block_stats(
    coeffs: CoefficientRule, freqs: FrequencyRule, q: float, k: int
) -> BlockStats:
    """Block mass s_k = sqrt(sum of a_n^2 over q^k <= lambda_n < q^{k+1})."""
    if not q > 1.0:
        raise ValueError(f"gap ratio must exceed 1, got {q}")
    if k < 0:
        raise ValueError(f"block index must be >= 0, got {k}")
    n_first, n_end = _block_index_range(freqs, q, k)
    size = n_end - n_first
    if coeffs.kind == "per_block_geometric":
        s_sq = _per_block_l2_range(n_first, n_end)
    else:
        if size > _BLOCK_ENUM_CAP:
            raise ValueError(
                f"block k={k} holds {size} indices, beyond the enumeration cap; "
                "no closed form is available for this rule combination"
            )
        vals = coefficients(coeffs, n_first, n_end)
        s_sq = math.fsum((vals * vals).tolist())
    return BlockStats(k=k, n_first=n_first, n_last=n_end - 1, s_k=math.sqrt(s_sq))


def estimate_sigma_tau(
    coeffs: CoefficientRule, freqs: FrequencyRule, k_min: int, k_max: int
) -> GapExponents:
    """Finite-window estimates of sigma (liminf) and tau (limsup).

    The raw ratios -log s_k / (k log q) converge like (const + decay*k)/k and
    drag an O(1/k) offset from any constant prefactor in s_k, so the paired
    estimates are taken from the consecutive-block difference quotients

        (log s_k - log s_{k+1}) / log q,

    which cancel the prefactor: sigma_est / tau_est are their min / max over
    the window.  The raw ratios are still exposed per block, and the
    least-squares slope of -log s_k against k log q is reported as a second
    diagnostic (exactly the decay exponent, up to round-off, whenever s_k is
    a pure geometric sequence).
    """
    if not (k_max > k_min >= 1):
        raise ValueError(f"need k_max > k_min >= 1, got [{k_min}, {k_max}]")
    q = gap_ratio(freqs, n_max=2 if freqs.kind != "explicit" else len(freqs.values))
    log_q = math.log(q)
    xs, ys, ratios = [], [], []
    for k in range(k_min, k_max + 1):
        s_k = block_stats(coeffs, freqs, q, k).s_k
        y = -math.log(s_k)
        xs.append(float(k) * log_q)
        ys.append(y)
        ratios.append((k, y / (k * log_q)))
    diffs = [(ys[i + 1] - ys[i]) / log_q for i in range(len(ys) - 1)]
    x = np.asarray(xs)
    y = np.asarray(ys)
    xc = x - x.mean()
    slope = float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
    return GapExponents(
        q=q,
        per_k=tuple(ratios),
        sigma_est=min(diffs),
        tau_est=max(diffs),
        window=(k_min, k_max),
        slope=slope,
    )


def l1_tail(coeffs: CoefficientRule, N: int) -> float:
    """Certified upper bound for sum_{n > N} |a_n|.

    Geometric rules use the exact geometric tail, power rules the integral
    bound N^{1-b}/(b-1), explicit rules the exact finite sum.  The bound is
    non-increasing in N and dominates the true tail.
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if coeffs.kind == "geometric":
        r = coeffs.lam ** (-coeffs.beta)
        return r ** (N + 1) / (1.0 - r)
    if coeffs.kind == "power":
        if N == 0:
            # 1 = a_1 itself plus the integral bound from 1.
            return 1.0 + 1.0 / (coeffs.b - 1.0)
        return float(N) ** (1.0 - coeffs.b) / (coeffs.b - 1.0)
    if coeffs.kind == "explicit":
        return math.fsum(abs(v) for v in coeffs.values[N:])
    if coeffs.kind == "per_block_geometric":
        if N == 0:
            return 1.0 + 2.0 * _ZETA2
        k0 = N.bit_length() - 1  # block containing index N
        first = 1.0 if k0 == 0 else float(k0) ** -2.0
        within = first * 2.0 ** (-(N + 1 - 2**k0)) * 2.0
        later = 2.0 * (_ZETA2 - math.fsum(j**-2.0 for j in range(1, k0 + 1)))
        return within + later
    raise ValueError(f"unknown coefficient rule kind {coeffs.kind!r}")


def l2_tail_sq(coeffs: CoefficientRule, N: int) -> float:
    """Upper bound for sum_{n > N} a_n^2 (used to certify truncated Bessel products)."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if coeffs.kind == "geometric":
        r = coeffs.lam ** (-2.0 * coeffs.beta)
        return r ** (N + 1) / (1.0 - r)
    if coeffs.kind == "power":
        if N == 0:
            return 1.0 + 1.0 / (2.0 * coeffs.b - 1.0)
        return float(N) ** (1.0 - 2.0 * coeffs.b) / (2.0 * coeffs.b - 1.0)
    if coeffs.kind == "explicit":
        return math.fsum(v * v for v in coeffs.values[N:])
    if coeffs.kind == "per_block_geometric":
        if N == 0:
            return 1.0 + (4.0 / 3.0) * (_ZETA2**2)
        k0 = N.bit_length() - 1
        first = 1.0 if k0 == 0 else float(k0) ** -2.0
        within = first**2 * 4.0 ** (-(N + 1 - 2**k0)) * (4.0 / 3.0)
        later = (4.0 / 3.0) * math.fsum(j**-4.0 for j in range(k0 + 1, max(k0 + 1000, 1000)))
        later += (4.0 / 3.0) / (3.0 * float(max(k0, 1) + 999) ** 3)  # integral remainder
        return within + later
    raise ValueError(f"unknown coefficient rule kind {coeffs.kind!r}")
