"""Exact-channel and Gamma-matched samplers of the end-to-end SNR.

Every draw comes from a Philox stream keyed by (link, hop, element, batch),
so a batch can be regenerated alone and the result of a run does not
depend on how batches are scheduled.
"""

import numpy as np

from risfso.channel import match_gamma, moment
from risfso.montecarlo.config import EXACT

LINK_D = 0
LINK_E = 1

HOP_S = 0
HOP_R = 1
MATCHED_SUM = 2


def stream(seed, link, hop, element, batch):
    """Independent generator for one (link, hop, element, batch) cell."""
    sequence = np.random.SeedSequence(
        seed, spawn_key=(link, hop, element, batch)
    )
    return np.random.Generator(np.random.Philox(sequence))


def sample_hop(hop, rng, size=None):
    """Draws of one hop's gain I' = Z * I_p.

    Z is the ratio (G_a/a)(G_b/b)((lam - 1)/G_lam) of unit-scale Gamma
    variates; I_p = A U^{1/zeta^2} with U uniform on (0, 1].
    """

    g_alpha = rng.standard_gamma(hop.alpha, size) / hop.alpha
    g_beta = rng.standard_gamma(hop.beta, size) / hop.beta
    g_lam = rng.standard_gamma(hop.lam, size)
    u = 1.0 - rng.random(size)
    pointing = hop.pointing_loss_A * u ** (1.0 / hop.zeta_sq)
    return g_alpha * g_beta * (hop.lam - 1.0) / g_lam * pointing


def sample_gain_sum(link, seed, batch, size, link_id=LINK_D):
    """Exact sum over the N elements of rho_t * varrho_t."""

    total = np.zeros(size)
    for element in range(link.n_elements):
        rng_s = stream(seed, link_id, HOP_S, element, batch)
        rng_r = stream(seed, link_id, HOP_R, element, batch)
        rho = sample_hop(link.hop_s, rng_s, size)
        varrho = sample_hop(link.hop_r, rng_r, size)
        total += rho * varrho
    return total


def sample_snr(link, cfg, batch, link_id=LINK_D):
    """One batch of SNR samples gamma = mu (S / E[M])^r.

    ``S`` is the exact element sum in exact mode and a Gamma(l, k) draw in
    matched mode; matched mode needs the moment match to exist.
    """

    size = cfg.batch_length(batch)
    if cfg.mode == EXACT:
        mean = moment(link, 1).value
        total = sample_gain_sum(link, cfg.seed, batch, size, link_id)
    else:
        fit = match_gamma(link)
        mean = fit.mean_m
        rng = stream(cfg.seed, link_id, MATCHED_SUM, 0, batch)
        total = rng.standard_gamma(fit.shape_l, size) * fit.scale_k
    return link.mu * (total / mean) ** link.detection


__all__ = [
    "LINK_D",
    "LINK_E",
    "stream",
    "sample_hop",
    "sample_gain_sum",
    "sample_snr",
]
