"""Numerical laboratory for random lacunary series.

Evaluate series of the form sum a_n X_n phi(lambda_n x) with Steinhaus random
phases, measure box-counting dimensions and Hoelder exponents of their images
and graphs, and compare against the closed-form almost-sure predictions.
"""

from .basis import BasisFunction, bilipschitz_probe, eval_basis
from .besselcf import (
    CharFnSample,
    MCEstimate,
    bessel_j0,
    charfn_increment,
    charfn_l1_norm,
    expected_fourier_sq,
    mc_charfn,
    mc_fourier_sq,
)
from .fracdim import (
    BoxCountCurve,
    DimensionEstimate,
    HolderEstimate,
    box_count,
    default_scales,
    fit_dimension,
    holder_exponent,
    occupied_fraction,
)
from .oracle import (
    NotCoveredError,
    Prediction,
    classify_measure_interior,
    predict_graph,
    predict_image,
    riemann_exponents,
)
from .sampler import (
    PhaseModel,
    SampledCurve,
    SeriesSpec,
    TestSet,
    cantor_points,
    draw_phases,
    eval_graph,
    eval_riemann_vortex,
    eval_series,
    truncation_index,
)
from .sequences import (
    BlockStats,
    CoefficientRule,
    EmptyBlockError,
    FrequencyRule,
    GapExponents,
    block_stats,
    estimate_sigma_tau,
    gap_ratio,
    l1_tail,
    lambda_at,
)

__version__ = "0.1.0"
