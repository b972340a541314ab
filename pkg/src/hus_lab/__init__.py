"""Hyers-Ulam stability constants for positive linear operators."""

__version__ = "0.1.0"

from .exactmath import binom, d_coeff_closed, d_coeff_sum, peak_indices, ratio_sequence
from .operators import (
    Grid,
    OperatorSpec,
    Step,
    Taylor,
    apply,
    apply_bernstein,
    apply_bernstein_schurer,
    apply_beta,
    apply_kantorovich,
    apply_kantorovich_schurer,
    apply_lorentz,
    apply_stancu,
    apply_szasz,
    lorentz_eigenvalue,
)
from .polyalg import (
    BernsteinPoly,
    DiskDomain,
    DomainError,
    ExactComplex,
    MonomialPoly,
    chebyshev_bernstein,
    coefficient_bound_check,
    evaluate,
    from_bernstein,
    sup_norm_disk,
    sup_norm_interval,
    to_bernstein,
)
from .stability import (
    StabilityReport,
    closed_K,
    empirical_inverse_norm,
    lorentz_instability_report,
    preimage_bs,
    preimage_ks,
)

__all__ = [
    "binom", "d_coeff_closed", "d_coeff_sum", "peak_indices", "ratio_sequence",
    "Grid", "OperatorSpec", "Step", "Taylor", "apply", "apply_bernstein",
    "apply_bernstein_schurer", "apply_beta", "apply_kantorovich",
    "apply_kantorovich_schurer", "apply_lorentz", "apply_stancu", "apply_szasz",
    "lorentz_eigenvalue", "BernsteinPoly", "DiskDomain", "DomainError",
    "ExactComplex", "MonomialPoly", "chebyshev_bernstein", "coefficient_bound_check", "evaluate",
    "from_bernstein", "sup_norm_disk", "sup_norm_interval", "to_bernstein",
    "StabilityReport", "closed_K", "empirical_inverse_norm",
    "lorentz_instability_report", "preimage_bs", "preimage_ks",
]
