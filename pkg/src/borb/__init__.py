"""Bergman kernels, Fubini-Study currents and random zeros on model
orbifold Riemann surfaces with (possibly singular) Hermitian weights.

The package builds finite-dimensional spaces of weighted polynomial
sections on four explicit models (round sphere, footballs with conical
points, a weight with a circle atom, and a locally flat cap), computes
their Bergman kernel functions and Fubini-Study currents, and runs
desk-scale convergence and random-zero experiments with deterministic
quadrature and seeded Monte Carlo.
"""

from .convergence import (
    BandFit,
    ConvergenceTable,
    CurvatureCdf,
    bergman_band_fit,
    curvature_radial_cdf,
    fs_weak_residuals,
    log_bergman_l1,
    radial_cdf_discrepancy,
    zero_region_fraction,
)
from .currents import (
    CurrentSample,
    GaussBump,
    RadialCap,
    bank_from_records,
    bank_records,
    branched_pullback,
    branched_pushforward,
    circle_mean,
    cover_average,
    cover_lift,
    current_consistency,
    current_total_mass,
    curvature_pairing,
    ddc_pair,
    default_bank,
    fs_current_pairing,
    fs_identity_residual,
    lelong_poincare_residual,
    pair_current,
    pair_current_potential,
    pair_log_point,
    scale_current,
    section_dense_coefficients,
)
from .errors import (
    ConfigurationError,
    DomainError,
    ExperimentError,
    IllConditionedError,
    NumericsError,
    QuadratureError,
    RootFindingError,
    UnsupportedConfigurationError,
    UnsupportedSupportError,
)
from .gramcache import GramCache
from .models import (
    Chart,
    ModelKind,
    ModelSpec,
    OrbifoldModel,
    build_model,
    curvature_total_mass,
    isotropy_order,
)
from .quadrature import (
    Panelization,
    RadialRegion,
    SmoothPartition,
    integrate_chart,
    integrate_orbifold,
)
from .sections import (
    SectionSpace,
    bergman_extremal,
    bergman_kernel,
    build_space,
    enumerate_basis,
    fs_potential,
    gram_matrix,
    orthonormalize,
    section_norm_sq,
)
from .zeros import (
    RngStream,
    ZeroSet,
    expectation_estimate,
    random_unitary,
    sample_sphere,
    section_zeros,
    sequence_experiment,
    sz_variance_constant,
    variance_estimate,
    variance_slope,
    y_from_zeroset,
    y_statistic,
    zero_samples,
)
from ._roots import aberth_roots, solve_polynomial

__version__ = "0.1.0"

__all__ = [
    "BandFit",
    "Chart",
    "ConfigurationError",
    "ConvergenceTable",
    "CurrentSample",
    "CurvatureCdf",
    "DomainError",
    "ExperimentError",
    "GaussBump",
    "GramCache",
    "IllConditionedError",
    "ModelKind",
    "ModelSpec",
    "NumericsError",
    "OrbifoldModel",
    "Panelization",
    "QuadratureError",
    "RadialCap",
    "RadialRegion",
    "RngStream",
    "RootFindingError",
    "SectionSpace",
    "SmoothPartition",
    "UnsupportedConfigurationError",
    "UnsupportedSupportError",
    "ZeroSet",
    "aberth_roots",
    "bank_from_records",
    "bank_records",
    "bergman_band_fit",
    "bergman_extremal",
    "bergman_kernel",
    "branched_pullback",
    "branched_pushforward",
    "build_model",
    "build_space",
    "circle_mean",
    "cover_average",
    "cover_lift",
    "current_consistency",
    "current_total_mass",
    "curvature_pairing",
    "curvature_radial_cdf",
    "curvature_total_mass",
    "ddc_pair",
    "default_bank",
    "enumerate_basis",
    "expectation_estimate",
    "fs_current_pairing",
    "fs_identity_residual",
    "fs_potential",
    "fs_weak_residuals",
    "gram_matrix",
    "integrate_chart",
    "integrate_orbifold",
    "isotropy_order",
    "lelong_poincare_residual",
    "log_bergman_l1",
    "orthonormalize",
    "pair_current",
    "pair_current_potential",
    "pair_log_point",
    "radial_cdf_discrepancy",
    "random_unitary",
    "sample_sphere",
    "scale_current",
    "section_dense_coefficients",
    "section_norm_sq",
    "section_zeros",
    "sequence_experiment",
    "solve_polynomial",
    "sz_variance_constant",
    "variance_estimate",
    "variance_slope",
    "y_statistic",
    "zero_region_fraction",
    "zero_samples",
    "y_from_zeroset",
]
