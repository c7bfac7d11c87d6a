"""Exponential sums with separated exponents: constructions, norms, and bounds.

The package builds the sin^2-timing (Uhrig) family of exponential sums with a
high-order zero at t = 0, verifies the algebraic identities behind it at
extended precision, measures sup and L1 norms on intervals, compares them
against closed-form envelopes, and evaluates pulse-sequence filter functions
and dephasing decay integrals.
"""

from .bounds import (
    EnvelopeCheck,
    ProbeResult,
    ScanResult,
    check_stirling_envelope,
    check_taylor_envelope,
    lower_bound_probe,
    scaling_fit,
    stirling_envelope,
    taylor_envelope,
    taylor_envelope_b,
    unit_gap_order_for_radius,
)
from .chebyshev import ChebNodeSet, cheb_nodes, cheb_u, endpoint_identity_residual
from .dephasing import (
    PulseSequence,
    SpectralDensity,
    decay_factor,
    filter_expsum,
    filter_function,
    load_pulse_sequence,
    load_spectral_density,
    min_separation,
    sequence_to_json,
    uhrig_filter_magnitude,
    vanishing_order_filter,
)
from .errors import (
    InvalidInputError,
    PrecisionError,
    QuadratureError,
    UnsupportedInputError,
)
from .expsum import (
    ClassParams,
    ExpSum,
    Interval,
    Membership,
    SupNormResult,
    class_membership,
    derivative,
    derivative_magnitudes,
    derivative_sup_bound,
    evaluate,
    from_json,
    l1_norm,
    sup_norm,
    to_json,
    vanishing_order,
    write_scan_csv,
)
from .sequences import (
    GapReport,
    UhrigFractions,
    alternating_power_sum,
    gap_check,
    rescaled_timings,
    scaled_sum,
    scaled_sum_order,
    uhrig_fractions,
    uhrig_pulse_times,
    uhrig_sum,
    unit_gap_sum,
)

__version__ = "0.1.0"

__all__ = [
    "ChebNodeSet",
    "ClassParams",
    "EnvelopeCheck",
    "ExpSum",
    "GapReport",
    "Interval",
    "InvalidInputError",
    "Membership",
    "PrecisionError",
    "ProbeResult",
    "PulseSequence",
    "QuadratureError",
    "ScanResult",
    "SpectralDensity",
    "SupNormResult",
    "UhrigFractions",
    "UnsupportedInputError",
    "alternating_power_sum",
    "cheb_nodes",
    "cheb_u",
    "check_stirling_envelope",
    "check_taylor_envelope",
    "class_membership",
    "decay_factor",
    "derivative",
    "derivative_magnitudes",
    "derivative_sup_bound",
    "endpoint_identity_residual",
    "evaluate",
    "filter_expsum",
    "filter_function",
    "from_json",
    "gap_check",
    "l1_norm",
    "load_pulse_sequence",
    "load_spectral_density",
    "lower_bound_probe",
    "min_separation",
    "rescaled_timings",
    "scaled_sum",
    "scaled_sum_order",
    "scaling_fit",
    "sequence_to_json",
    "stirling_envelope",
    "sup_norm",
    "taylor_envelope",
    "taylor_envelope_b",
    "to_json",
    "uhrig_filter_magnitude",
    "uhrig_fractions",
    "uhrig_pulse_times",
    "uhrig_sum",
    "unit_gap_order_for_radius",
    "unit_gap_sum",
    "vanishing_order",
    "vanishing_order_filter",
    "write_scan_csv",
]
