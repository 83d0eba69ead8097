"""Definitional integrals of every metric, evaluated by adaptive quadrature.

Integrals over (0, inf) are taken in log(gamma), which removes the
integrable singularity at the origin and compresses the heavy tail.
"""

import logging
import math
import warnings

from scipy import integrate, special

from risfso.channel import (
    match_gamma,
    snr_cdf_reference,
    snr_pdf_reference,
    snr_survival,
)
from risfso.errors import ConvergenceError

logger = logging.getLogger(__name__)

ABSOLUTE_TOLERANCE = 1e-10
RELATIVE_TOLERANCE = 1e-8
DECADE_BREAKS = (-40.0, -18.0, -8.0, -3.0, 0.0, 3.0, 8.0, 18.0, 40.0)
QUAD_LIMIT = 200


def integrate_half_line(
    func,
    scale=1.0,
    upper=math.inf,
    epsabs=ABSOLUTE_TOLERANCE,
    epsrel=RELATIVE_TOLERANCE,
):
    """Integral of ``func`` over (0, upper), split around ``scale``."""

    def integrand(x):
        if x > 700:
            return 0.0
        gamma = math.exp(x)
        if gamma == 0.0:
            return 0.0
        value = func(gamma)
        return value * gamma if value else 0.0

    log_upper = math.log(upper) if math.isfinite(upper) else math.inf
    centre = math.log(scale)
    edges = [centre + d for d in DECADE_BREAKS if centre + d < log_upper]
    edges = [-math.inf] + edges + [log_upper]

    pieces, errors = [], []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            value, error = integrate.quad(
                integrand,
                lo,
                hi,
                epsabs=epsabs / len(edges),
                epsrel=epsrel,
                limit=QUAD_LIMIT,
            )
            if not math.isfinite(value):
                raise ConvergenceError(
                    f"quadrature on log-interval ({lo:g}, {hi:g}) is {value}"
                )
            pieces.append(value)
            errors.append(error)
    for warning in caught:
        logger.warning("quadrature: %s", warning.message)
    total = math.fsum(pieces)
    logger.debug("quadrature %.12g (error estimate %.2e)", total, sum(errors))
    return total


def _scale(link):
    return link.mu * link.n_elements**link.detection


def outage_probability_reference(link, gamma_star):
    """OP as the integral of the SNR density over (0, gamma_star)."""

    fit = match_gamma(link)
    return integrate_half_line(
        lambda g: snr_pdf_reference(link, g, fit),
        scale=min(_scale(link), gamma_star),
        upper=gamma_star,
    )


def average_ber_reference(link, mod):
    """q^p / (2 Gamma(p)) * int e^{-q g} g^{p-1} F(g) dg."""

    fit = match_gamma(link)
    p, q = mod.p, mod.q
    log_norm = p * math.log(q) - math.log(2.0) - special.gammaln(p)

    def integrand(g):
        log_weight = (p - 1) * math.log(g) - q * g + log_norm
        return math.exp(log_weight) * snr_cdf_reference(link, g, fit)

    return integrate_half_line(integrand, scale=p / q)


def average_capacity_reference(link):
    """(1 / (2 ln 2)) * int ln(1 + g) f(g) dg."""

    fit = match_gamma(link)
    total = integrate_half_line(
        lambda g: math.log1p(g) * snr_pdf_reference(link, g, fit),
        scale=_scale(link),
    )
    return total / (2.0 * math.log(2.0))


def average_secrecy_capacity_reference(scn):
    """(1 / (2 ln 2)) * int F_e(g) (1 - F_d(g)) / (1 + g) dg."""

    fit_d, fit_e = match_gamma(scn.link_d), match_gamma(scn.link_e)

    def integrand(g):
        return (
            snr_cdf_reference(scn.link_e, g, fit_e)
            * snr_survival(scn.link_d, g, fit_d)
            / (1.0 + g)
        )

    scale = math.sqrt(_scale(scn.link_d) * _scale(scn.link_e))
    return integrate_half_line(integrand, scale=scale) / (2.0 * math.log(2.0))


def secrecy_outage_reference(scn):
    """Lower bound int F_d(psi g) f_e(g) dg."""

    fit_d, fit_e = match_gamma(scn.link_d), match_gamma(scn.link_e)
    psi = scn.psi

    def integrand(g):
        density = snr_pdf_reference(scn.link_e, g, fit_e)
        if density == 0.0:
            return 0.0
        return snr_cdf_reference(scn.link_d, psi * g, fit_d) * density

    return integrate_half_line(integrand, scale=_scale(scn.link_e))


__all__ = [
    "integrate_half_line",
    "outage_probability_reference",
    "average_ber_reference",
    "average_capacity_reference",
    "average_secrecy_capacity_reference",
    "secrecy_outage_reference",
]
