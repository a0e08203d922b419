"""Liouville and Moebius functions: sieving, summatory scans and certified series."""

from .means import (
    NoSignChangeError,
    Theorem1Constants,
    dirichlet_quotient_check,
    find_sign_crossing,
    s_minus,
    s_plus,
    step1_residual,
    step2_residual,
    theorem1_constants,
    theorem1_remainder,
    theorem1_residual,
)
from .moebius import (
    corollary_half,
    limit_probe,
    mobius_lambert_classic,
    mobius_plus_series,
    partial_fraction_identity_exact,
)
from .multiplicative import SignSegment, lambda_point, mu_point, omega, sieve_segment
from .precision import BoundedValue, PrecisionContext, render, zeta_real
from .scan import (
    CheckpointError,
    ScanCheckpoint,
    ScanReport,
    log_density_negative,
    read_checkpoint,
    scan_summatory,
    write_checkpoint,
)
from .theta import phi, remainder_bound, theta, theta_functional_residual

__version__ = "0.1.0"

__all__ = [
    "BoundedValue",
    "CheckpointError",
    "NoSignChangeError",
    "PrecisionContext",
    "ScanCheckpoint",
    "ScanReport",
    "SignSegment",
    "Theorem1Constants",
    "corollary_half",
    "dirichlet_quotient_check",
    "find_sign_crossing",
    "lambda_point",
    "limit_probe",
    "log_density_negative",
    "mobius_lambert_classic",
    "mobius_plus_series",
    "mu_point",
    "omega",
    "partial_fraction_identity_exact",
    "phi",
    "read_checkpoint",
    "remainder_bound",
    "render",
    "s_minus",
    "s_plus",
    "scan_summatory",
    "sieve_segment",
    "step1_residual",
    "step2_residual",
    "theorem1_constants",
    "theorem1_remainder",
    "theorem1_residual",
    "theta",
    "theta_functional_residual",
    "write_checkpoint",
    "zeta_real",
]
