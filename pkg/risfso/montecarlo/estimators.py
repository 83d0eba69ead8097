"""Unbiased MC estimators of OP, ABER, ACC, ASC and SOP with standard errors."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import special

from risfso.montecarlo.config import EstimateWithError, default_threads
from risfso.montecarlo.samplers import LINK_D, LINK_E, sample_snr

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


def _batch_moments(values):
    values = np.asarray(values, dtype=float)
    mean = float(np.mean(values))
    return len(values), mean, float(np.sum((values - mean) ** 2))


def run_batches(statistic, cfg, threads=None):
    """Evaluate ``statistic(batch)`` for every batch and pool the moments.

    Batches are combined in index order with compensated sums, so the
    estimate does not depend on the worker count.
    """

    threads = threads or default_threads()
    batches = range(cfg.n_batches)
    if threads == 1:
        moments = [_batch_moments(statistic(b)) for b in batches]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            moments = list(
                executor.map(lambda b: _batch_moments(statistic(b)), batches)
            )

    n = sum(count for count, _, _ in moments)
    mean = math.fsum(count * m for count, m, _ in moments) / n
    squares = math.fsum(
        ss + count * (m - mean) ** 2 for count, m, ss in moments
    )
    variance = squares / (n - 1) if n > 1 else 0.0
    logger.debug(
        "%d samples in %d batches on %d threads: %.6g",
        n,
        len(moments),
        threads,
        mean,
    )
    return EstimateWithError(mean, math.sqrt(variance / n), n, len(moments))


def estimate_op(link, cfg, gamma_star, threads=None):
    """Fraction of SNR samples at or below ``gamma_star``."""

    def statistic(batch):
        return sample_snr(link, cfg, batch) <= gamma_star

    return run_batches(statistic, cfg, threads)


def estimate_aber(link, cfg, mod, threads=None):
    """Mean of the conditional error rate Gamma(p, q g) / (2 Gamma(p))."""

    def statistic(batch):
        gamma = sample_snr(link, cfg, batch)
        return 0.5 * special.gammaincc(mod.p, mod.q * gamma)

    return run_batches(statistic, cfg, threads)


def estimate_acc(link, cfg, threads=None):
    def statistic(batch):
        return np.log1p(sample_snr(link, cfg, batch)) / (2.0 * LN2)

    return run_batches(statistic, cfg, threads)


def estimate_asc(scn, cfg, threads=None):
    """Mean of max(0, ln((1 + g_d) / (1 + g_e))) / (2 ln 2)."""

    def statistic(batch):
        gamma_d = sample_snr(scn.link_d, cfg, batch, LINK_D)
        gamma_e = sample_snr(scn.link_e, cfg, batch, LINK_E)
        return np.maximum(0.0, np.log1p(gamma_d) - np.log1p(gamma_e)) / (
            2.0 * LN2
        )

    return run_batches(statistic, cfg, threads)


def estimate_sop(scn, cfg, exact=False, threads=None):
    """Pr[g_d <= psi g_e], or with ``exact`` Pr[g_d <= psi g_e + psi - 1].

    The exact variant is Pr[C_s < tau_s] for the instantaneous secrecy
    capacity; without it the estimate targets the lower bound.
    """

    psi = scn.psi
    shift = psi - 1.0 if exact else 0.0

    def statistic(batch):
        gamma_d = sample_snr(scn.link_d, cfg, batch, LINK_D)
        gamma_e = sample_snr(scn.link_e, cfg, batch, LINK_E)
        return gamma_d <= psi * gamma_e + shift

    return run_batches(statistic, cfg, threads)


__all__ = [
    "run_batches",
    "estimate_op",
    "estimate_aber",
    "estimate_acc",
    "estimate_asc",
    "estimate_sop",
]
