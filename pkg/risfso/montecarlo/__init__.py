"""Seeded Monte Carlo oracle for the closed-form metrics."""

from .config import (
    EXACT,
    MATCHED,
    MODES,
    THREADS_ENV,
    EstimateWithError,
    SimConfig,
    default_threads,
)
from .estimators import (
    estimate_aber,
    estimate_acc,
    estimate_asc,
    estimate_op,
    estimate_sop,
    run_batches,
)
from .samplers import (
    LINK_D,
    LINK_E,
    sample_gain_sum,
    sample_hop,
    sample_snr,
    stream,
)

__all__ = [
    "EXACT",
    "MATCHED",
    "MODES",
    "THREADS_ENV",
    "SimConfig",
    "EstimateWithError",
    "default_threads",
    "LINK_D",
    "LINK_E",
    "stream",
    "sample_hop",
    "sample_gain_sum",
    "sample_snr",
    "run_batches",
    "estimate_op",
    "estimate_aber",
    "estimate_acc",
    "estimate_asc",
    "estimate_sop",
]
