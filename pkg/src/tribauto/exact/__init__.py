"""Exact integer sign tests and certified interval arithmetic."""

from .algebra import (
    AlgebraicConstants,
    Sign,
    c_of_T,
    constants,
    cubic_sign,
    drift_sign_fib,
    drift_sign_trib,
    envelope,
    floor_phi,
    floor_psi,
    frac_psi_lt_threshold,
    predict_c_of_T,
    quadratic_sign,
    seq_a,
    seq_b,
    seq_c,
    v_angle,
)
from .intervals import ComplexInterval, RationalInterval
from .rootcheck import unit_root_exclusion
