"""Statistical model of the RIS-assisted inverted Gamma-Gamma FSO link."""

from .densities import (
    composite_pdf,
    igg_pdf,
    mean_received_snr,
    pointing_pdf,
    product_pdf,
    snr_cdf,
    snr_cdf_reference,
    snr_pdf,
    snr_pdf_reference,
    snr_survival,
)
from .moments import (
    HopConstants,
    MatchedGamma,
    Moment,
    MomentTable,
    hop_moment,
    match_gamma,
    match_gamma_from_moments,
    moment,
)
from .params import (
    HETERODYNE,
    IM_DD,
    MODERATE,
    STRONG,
    TURBULENCE_PRESETS,
    WEAK,
    HopParams,
    LinkParams,
    db_to_linear,
)

__all__ = [
    "HopParams",
    "LinkParams",
    "db_to_linear",
    "HETERODYNE",
    "IM_DD",
    "STRONG",
    "MODERATE",
    "WEAK",
    "TURBULENCE_PRESETS",
    "Moment",
    "HopConstants",
    "MomentTable",
    "hop_moment",
    "moment",
    "MatchedGamma",
    "match_gamma",
    "match_gamma_from_moments",
    "igg_pdf",
    "pointing_pdf",
    "composite_pdf",
    "product_pdf",
    "snr_pdf",
    "snr_cdf",
    "snr_cdf_reference",
    "snr_survival",
    "snr_pdf_reference",
    "mean_received_snr",
]
