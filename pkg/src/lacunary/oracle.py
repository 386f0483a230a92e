"""Closed-form almost-sure dimension predictions for random lacunary series.

Everything here is a pure function of the block-decay exponents (sigma, tau),
the dimension of the sampled set, and the codomain dimension (2 for complex
series, 1 for the real sine route).  These are the reference values that the
measured box-counting dimensions are compared against.

Above the sufficiency thresholds the classification deliberately answers
"unknown" rather than "no": the theory proves positive-measure/interior below
the thresholds and says nothing above them, except where a Hoelder exponent
pins the dimension strictly below the ambient one (the sigma-aware branch).
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Prediction",
    "NotCoveredError",
    "predict_image",
    "predict_graph",
    "classify_measure_interior",
    "riemann_exponents",
    "build_prediction",
    "RiemannExponents",
]

YES = "yes-a.s."
NO = "no"
UNKNOWN = "unknown"


class NotCoveredError(ValueError):
    """The requested parameters fall outside the proved range (tau > 1 graphs)."""


@dataclass(frozen=True)
class Prediction:
    """Theory-side dimension interval and measure/interior classification.

    Bounds collapse to a point when sigma == tau.  graph_partial_lower carries
    the projection bound dim A / tau for tau > 1, the only graph information
    available there.
    """

    image_dim_lo: float
    image_dim_hi: float
    graph_dim_lo: float | None
    graph_dim_hi: float | None
    lebesgue_positive: str
    has_interior: str
    codomain_dim: int
    graph_partial_lower: float | None = None


@dataclass(frozen=True)
class RiemannExponents:
    sigma: float
    tau: float
    within_corollary: bool  # 1 < b <= a + 1/2, i.e. tau <= 1


def _check_common(sigma: float, tau: float, dim_a: float, codomain_dim: int) -> None:
    if codomain_dim not in (1, 2):
        raise ValueError(f"codomain dimension must be 1 or 2, got {codomain_dim}")
    if sigma > tau:
        raise ValueError(f"need sigma <= tau, got sigma={sigma} > tau={tau}")
    if sigma < 0 or not (0.0 <= dim_a <= 1.0):
        raise ValueError(f"need sigma >= 0 and dim_a in [0, 1], got ({sigma}, {dim_a})")


def predict_image(sigma: float, tau: float, dim_a: float, codomain_dim: int = 2):
    """Almost-sure bounds for the dimension of the image S(A).

    lo = min(codomain, dim_a / tau)   (the full codomain when tau == 0),
    hi = min(codomain, dim_a / min(sigma, 1)).
    A zero-dimensional set maps to a zero-dimensional image: (0, 0).
    """
    _check_common(sigma, tau, dim_a, codomain_dim)
    if dim_a == 0.0:
        return 0.0, 0.0
    lo = float(codomain_dim) if tau == 0.0 else min(float(codomain_dim), dim_a / tau)
    s = min(sigma, 1.0)
    hi = float(codomain_dim) if s == 0.0 else min(float(codomain_dim), dim_a / s)
    return lo, hi


def predict_graph(sigma: float, tau: float, dim_a: float, codomain_dim: int = 2):
    """Almost-sure bounds for the dimension of the graph {(x, S(x)): x in A}.

    For 0 < sigma <= tau <= 1:
        lo = min(dim_a / tau,   dim_a + codomain * (1 - tau)),
        hi = min(dim_a / sigma, dim_a + codomain * (1 - sigma)).
    tau == 0 pins the graph dimension at exactly dim_a + codomain.
    tau > 1 is not covered by the graph results and raises NotCoveredError.
    """
    _check_common(sigma, tau, dim_a, codomain_dim)
    if tau == 0.0:
        v = dim_a + float(codomain_dim)
        return v, v
    if tau > 1.0:
        raise NotCoveredError(
            f"graph dimension bounds require tau <= 1, got tau={tau}; "
            f"only the projection bound dim_a/tau = {dim_a / tau:g} survives"
        )
    if sigma == 0.0:
        raise ValueError("graph bounds need sigma > 0 (or tau == 0)")
    lo = min(dim_a / tau, dim_a + codomain_dim * (1.0 - tau))
    hi = min(dim_a / sigma, dim_a + codomain_dim * (1.0 - sigma))
    return lo, hi


def classify_measure_interior(tau: float, dim_a: float, codomain_dim: int = 2,
                              sigma: float | None = None):
    """Tri-state positive-Lebesgue-measure / interior classification of S(A).

    Sufficient conditions (codomain 2): positive area when tau < dim_a / 2,
    interior when tau < dim_a / 4; both thresholds double for codomain 1
    (tau < dim_a and tau < dim_a / 2).  tau == 0 with dim_a > 0 gives interior
    outright.  Above the thresholds the answer is "unknown" unless sigma is
    supplied and the Hoelder upper bound min(sigma,1) > dim_a / codomain
    forces the image dimension strictly below the ambient one, in which case
    positive measure is ruled out ("no").
    """
    if not (0.0 <= dim_a <= 1.0) or tau < 0.0:
        raise ValueError(f"need tau >= 0 and dim_a in [0, 1], got ({tau}, {dim_a})")
    if codomain_dim not in (1, 2):
        raise ValueError(f"codomain dimension must be 1 or 2, got {codomain_dim}")
    half = dim_a / codomain_dim          # measure threshold: dim_a/2 or dim_a
    quarter = dim_a / (2 * codomain_dim)  # interior threshold: dim_a/4 or dim_a/2
    if tau == 0.0:
        if dim_a > 0.0:
            return YES, YES
        return UNKNOWN, UNKNOWN
    lebesgue = YES if tau < half else UNKNOWN
    interior = YES if tau < quarter else UNKNOWN
    if lebesgue == UNKNOWN and sigma is not None and min(sigma, 1.0) > half:
        # image dimension <= dim_a / min(sigma,1) < codomain: null set
        lebesgue = NO
        interior = NO
    return lebesgue, interior


def riemann_exponents(a: float, b: float) -> RiemannExponents:
    """Block-decay exponents of the quadratic-type series n^{-b} e^{2 pi i n^a x}.

    Both exponents equal (2b - 1) / (2a); the dimension corollaries apply when
    1 < b <= a + 1/2 (equivalently tau <= 1).
    """
    if not (a > 0 and b > 1):
        raise ValueError(f"need a > 0 and b > 1, got ({a}, {b})")
    val = (2.0 * b - 1.0) / (2.0 * a)
    return RiemannExponents(sigma=val, tau=val, within_corollary=b <= a + 0.5)


def build_prediction(sigma: float, tau: float, dim_a: float,
                     codomain_dim: int = 2) -> Prediction:
    """Assemble the full prediction record, tolerating the tau > 1 graph gap."""
    img_lo, img_hi = predict_image(sigma, tau, dim_a, codomain_dim)
    partial = None
    try:
        g_lo, g_hi = predict_graph(sigma, tau, dim_a, codomain_dim)
    except NotCoveredError:
        g_lo = g_hi = None
        partial = dim_a / tau
    except ValueError:
        g_lo = g_hi = None
    lebesgue, interior = classify_measure_interior(tau, dim_a, codomain_dim, sigma=sigma)
    return Prediction(
        image_dim_lo=img_lo, image_dim_hi=img_hi,
        graph_dim_lo=g_lo, graph_dim_hi=g_hi,
        lebesgue_positive=lebesgue, has_interior=interior,
        codomain_dim=codomain_dim, graph_partial_lower=partial,
    )
