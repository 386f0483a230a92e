"""Basis function families phi with boundedness and bi-Lipschitz metadata.

Five named families are supported.  All except sine_real map into the complex
plane; sine_real is real-valued and is handled by the one-dimensional sine
route of the characteristic-function machinery (it is *not* bi-Lipschitz:
pairs symmetric about a critical point of sin collapse the lower bound).

Arguments are reduced mod 1 before any trigonometric evaluation: frequencies
reach 1e15 and naive evaluation of sin(2*pi*lambda*x) would lose every digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["BasisFunction", "eval_basis", "bilipschitz_probe", "validate_bilipschitz"]

_TWO_PI = 2.0 * math.pi

# sup |t + i sin(2 pi t)| over the sawtooth cell, frozen from a fine-grid probe
# (max near t = 0.2565); the boundedness test re-checks it on 1e6 points.
_TAKAGI_SUP = 1.0316


@dataclass(frozen=True)
class BasisFunction:
    """One member of the basis family, with frozen analytic metadata.

    lipschitz_L / lipschitz_delta declare the two-sided chord bound
    L^-1 |x-y| <= |phi(x)-phi(y)| <= L |x-y| for |x-y| <= delta; they are None
    where no such pair exists (sine_real) or none is declared.
    """

    kind: str  # exp | one_minus_exp | exp_diff | takagi_sine | sine_real
    sup_norm: float
    lipschitz_L: Optional[float]
    lipschitz_delta: Optional[float]
    codomain_dim: int
    beta: Optional[float] = None  # exp_diff only
    lam: Optional[float] = None   # exp_diff only

    @classmethod
    def exp(cls) -> "BasisFunction":
        """t -> e^{2 pi i t}.  Chord/argument ratio lies in [4, 2 pi] for |x-y| <= 1/2."""
        return cls("exp", sup_norm=1.0, lipschitz_L=_TWO_PI, lipschitz_delta=0.5,
                   codomain_dim=2)

    @classmethod
    def one_minus_exp(cls) -> "BasisFunction":
        """t -> 1 - e^{2 pi i t}; vanishes at 0, same chord geometry as exp."""
        return cls("one_minus_exp", sup_norm=2.0, lipschitz_L=_TWO_PI,
                   lipschitz_delta=0.5, codomain_dim=2)

    @classmethod
    def exp_diff(cls, beta: float, lam: float) -> "BasisFunction":
        """t -> e^{2 pi i t} - lam^{-beta} e^{2 pi i lam t}.

        Smooth-difference basis: with geometric weights lam^{-beta n} and no
        phase randomization the series telescopes to a smooth curve.  The
        lower chord bound 4 lam^{1-beta} - 2 pi is positive only when
        lam^{1-beta} > pi/2; otherwise no bi-Lipschitz pair is declared.
        """
        if not (lam > 1.0 and beta > 0.0):
            raise ValueError(f"exp_diff needs lam > 1 and beta > 0, got ({beta}, {lam})")
        growth = lam ** (1.0 - beta)
        if growth > math.pi / 2.0:
            lower = 4.0 * growth - _TWO_PI
            L = max(_TWO_PI * (1.0 + growth), 1.0 / lower)
            delta = 0.5 / lam
        else:
            L = delta = None
        return cls("exp_diff", sup_norm=1.0 + lam ** (-beta), lipschitz_L=L,
                   lipschitz_delta=delta, codomain_dim=2, beta=beta, lam=lam)

    @classmethod
    def takagi_sine(cls) -> "BasisFunction":
        """t -> ||t|| + i sin(2 pi t), ||.|| the distance to the nearest integer.

        L frozen from a numerical probe: the chord ratio over |x-y| <= 1/4
        stays within [1, sqrt(1 + 4 pi^2)].
        """
        return cls("takagi_sine", sup_norm=_TAKAGI_SUP, lipschitz_L=6.37,
                   lipschitz_delta=0.25, codomain_dim=2)

    @classmethod
    def sine_real(cls) -> "BasisFunction":
        """t -> sin(2 pi t), real codomain; handled by the sine route only."""
        return cls("sine_real", sup_norm=1.0, lipschitz_L=None,
                   lipschitz_delta=None, codomain_dim=1)

    @property
    def is_periodic(self) -> bool:
        """Exactly 1-periodic kinds (exp_diff is 1-periodic only for integer lam)."""
        return self.kind != "exp_diff"


def _frac(t):
    return np.mod(t, 1.0)


def eval_basis(b: BasisFunction, t):
    """Evaluate phi at t (scalar or array).

    Complex kinds return complex values, sine_real returns floats.  Arguments
    are folded into [0, 1) first, so integer t hits the trig functions at 0
    exactly (exp(integer) == 1 + 0j bit-exactly).
    """
    t = np.asarray(t, dtype=np.float64)
    if b.kind == "exp":
        u = _TWO_PI * _frac(t)
        out = np.cos(u) + 1j * np.sin(u)
    elif b.kind == "one_minus_exp":
        u = _TWO_PI * _frac(t)
        out = (1.0 - np.cos(u)) - 1j * np.sin(u)
    elif b.kind == "exp_diff":
        # Each exponential folds its own argument; valid for non-integer lam too.
        u = _TWO_PI * _frac(t)
        v = _TWO_PI * _frac(b.lam * t)
        scale = b.lam ** (-b.beta)
        out = (np.cos(u) - scale * np.cos(v)) + 1j * (np.sin(u) - scale * np.sin(v))
    elif b.kind == "takagi_sine":
        f = _frac(t)
        dist = np.minimum(f, 1.0 - f)
        u = _TWO_PI * f
        out = dist + 1j * np.sin(u)
    elif b.kind == "sine_real":
        out = np.sin(_TWO_PI * _frac(t))
    else:
        raise ValueError(f"unknown basis kind {b.kind!r}")
    if out.ndim == 0:
        return complex(out) if np.iscomplexobj(out) else float(out)
    return out


def bilipschitz_probe(b: BasisFunction, delta: float, samples: int, seed: int):
    """Empirical extremes of |phi(x)-phi(y)| / |x-y| over random pairs.

    Pairs are drawn with x uniform on [0, 1) and |x-y| uniform on (0, delta];
    coincident pairs cannot occur by construction.  Returns (lowest, highest)
    observed ratio.
    """
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    x = rng.random(samples)
    d = (1.0 - rng.random(samples)) * delta  # in (0, delta]
    sgn = np.where(rng.random(samples) < 0.5, -1.0, 1.0)
    y = x + sgn * d
    ratios = np.abs(eval_basis(b, x) - eval_basis(b, y)) / d
    return float(ratios.min()), float(ratios.max())


def validate_bilipschitz(b: BasisFunction, samples: int = 20000, seed: int = 7) -> bool:
    """True iff the declared (L, delta) pair survives a random-pair probe."""
    if b.lipschitz_L is None or b.lipschitz_delta is None:
        return False
    lo, hi = bilipschitz_probe(b, b.lipschitz_delta, samples, seed)
    slack = 1e-9
    return lo >= 1.0 / b.lipschitz_L - slack and hi <= b.lipschitz_L + slack
