"""Photon-subtracted squeezed vacuum: states of definite parity and their statistics."""
from .errors import (
    CapacityError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    NoSupportError,
    ParityStatesError,
    UndefinedBoundError,
)
from .numerics import SignedLog, ZLadder, log_factorial, yz_derivative, z_derivative_series, z_ladder
from .states import FockVector, ModelParams, heralded_amplitudes, smsv_amplitudes, truncation_cutoff
from .herald import HeraldDistribution, complete_distribution, herald_distribution, success_probability
from .stats import (
    HeraldStats,
    SmsvReference,
    herald_stats,
    mean_photon,
    photon_variance,
    qcr_bound,
    qfi,
    quadrature_variances,
    ratios,
    second_moment,
    sensitivity_gain,
    smsv_reference,
)
from .oracle import (
    TwoModeAmplitudes,
    bs_transform,
    coherent_overlap_check,
    moments_from_amplitudes,
    project_and_normalize,
)

__version__ = "0.1.0"
