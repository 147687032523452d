"""Low-coherence sensing matrix toolkit.

Thin re-export of the compiled core: construction by seeded rejection
sampling, closed-form bounds (Welch, sizing rule, spherical-cap chain), and
recovery validation (OMP, exhaustive l0, brute-force RIC, Monte Carlo).
Column indices are 1-based everywhere, matching the CLI reports.
"""

from ._core import (
    GENERATOR_ID,
    __version__,
    analyze,
    bounds_report,
    brute_force_l0,
    cap_measure_exact,
    coherence,
    construct,
    gram,
    matrix_sha256,
    matrix_to_text,
    max_recoverable_sparsity,
    monte_carlo_cap,
    omp,
    pair_reject_bound,
    parse_matrix,
    recovery_experiment,
    required_m,
    ric_brute_force,
    sphere_volume_surface_ratio,
    welch_bound,
    width_ratio,
)

__all__ = [
    "GENERATOR_ID",
    "__version__",
    "analyze",
    "bounds_report",
    "brute_force_l0",
    "cap_measure_exact",
    "coherence",
    "construct",
    "gram",
    "matrix_sha256",
    "matrix_to_text",
    "max_recoverable_sparsity",
    "monte_carlo_cap",
    "omp",
    "pair_reject_bound",
    "parse_matrix",
    "recovery_experiment",
    "required_m",
    "ric_brute_force",
    "sphere_volume_surface_ratio",
    "welch_bound",
    "width_ratio",
]
