"""Special-function layer: Gamma family, pFq series, Meijer G."""

from .bivariate import (
    BivariateMeijerSpec,
    MellinBlock,
    meijer_g_bivariate,
    place_contours,
)
from .gamma import (
    gamma_product,
    log_gamma,
    log_upper_incomplete_gamma,
    signed_log_gamma,
    upper_incomplete_gamma,
)
from .hypergeometric import HypergeometricSum, gauss_hypergeometric_series
from .meijer import (
    MeijerSpec,
    PoleClassification,
    ResidueExpansion,
    check_pole_collision,
    classify_poles,
    epsilon_split,
    leading_residue_terms,
    meijer_g,
    meijer_g_contour,
    meijer_g_slater,
)

__all__ = [
    "log_gamma",
    "signed_log_gamma",
    "gamma_product",
    "log_upper_incomplete_gamma",
    "upper_incomplete_gamma",
    "HypergeometricSum",
    "gauss_hypergeometric_series",
    "MeijerSpec",
    "PoleClassification",
    "ResidueExpansion",
    "classify_poles",
    "check_pole_collision",
    "epsilon_split",
    "meijer_g",
    "meijer_g_slater",
    "meijer_g_contour",
    "leading_residue_terms",
    "MellinBlock",
    "BivariateMeijerSpec",
    "place_contours",
    "meijer_g_bivariate",
]
