"""Per-hop, product and end-to-end SNR densities of the RIS link.

The closed forms go through :func:`risfso.specfun.meijer_g`; the
``*_reference`` helpers evaluate the same Lemma 1 laws through the
incomplete gamma function and serve quadrature references and tests.
"""

import logging
import math

import numpy as np
from scipy import special, stats

from risfso.channel.moments import HopConstants, match_gamma
from risfso.errors import DomainError
from risfso.specfun import MeijerSpec, meijer_g

logger = logging.getLogger(__name__)


def _require_positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")


def igg_pdf(hop, x):
    """Inverted Gamma-Gamma density of the turbulence gain."""

    _require_positive("x", x)
    spec = MeijerSpec(
        [1 - hop.lam],
        [hop.alpha, hop.beta],
        2,
        1,
        hop.alpha * hop.beta * x / (hop.lam - 1.0),
    )
    lambda_5 = HopConstants.of(hop).lambda_5
    return max(0.0, lambda_5 / x * meijer_g(spec))


def pointing_pdf(hop, i):
    """Pointing-error gain density zeta^2 / A^{zeta^2} * i^{zeta^2 - 1}."""

    a = hop.pointing_loss_A
    if not 0 < i <= a:
        return 0.0
    z2 = hop.zeta_sq
    return z2 * math.exp((z2 - 1) * math.log(i) - z2 * math.log(a))


def composite_pdf(hop, i):
    """Density of one hop's gain: turbulence times pointing error."""

    _require_positive("i", i)
    z2 = hop.zeta_sq
    constants = HopConstants.of(hop)
    spec = MeijerSpec(
        [1 - hop.lam, 1 + z2],
        [z2, hop.alpha, hop.beta],
        3,
        1,
        constants.scale * i,
    )
    return max(0.0, z2 * constants.lambda_5 / i * meijer_g(spec))


def product_pdf(link, i):
    """Density of M = rho * varrho, the gain through one RIS element.

    Built as G^{2,6}_{6,4} at 1/(L8 L9 i); the evaluator inverts it
    before choosing a strategy.
    """

    _require_positive("i", i)
    hop_s, hop_r = link.hop_s, link.hop_r
    const_s, const_r = HopConstants.of(hop_s), HopConstants.of(hop_r)
    s1 = [
        1 - hop_r.zeta_sq,
        1 - hop_r.alpha,
        1 - hop_r.beta,
        1 - hop_s.zeta_sq,
        1 - hop_s.alpha,
        1 - hop_s.beta,
    ]
    s2 = [hop_r.lam, hop_s.lam, -hop_s.zeta_sq, -hop_r.zeta_sq]
    spec = MeijerSpec(s1, s2, 2, 6, 1.0 / (const_s.scale * const_r.scale * i))
    lambda_6 = hop_s.zeta_sq * const_s.lambda_5
    lambda_7 = hop_r.zeta_sq * const_r.lambda_5
    return max(0.0, lambda_6 * lambda_7 / i * meijer_g(spec))


def _matched(link, matched):
    return matched if matched is not None else match_gamma(link)


def snr_pdf(link, gamma, matched=None):
    """End-to-end SNR density of Lemma 1 through G^{1,0}_{0,1}."""

    _require_positive("gamma", gamma)
    fit = _matched(link, matched)
    r, mu, l = link.detection, link.mu, fit.shape_l
    log_prefactor = (
        fit.log_lambda_1
        - math.log(r)
        - (l / r) * math.log(mu)
        + (l / r - 1) * math.log(gamma)
    )
    spec = MeijerSpec([], [0.0], 1, 0, fit.lambda_2 * (gamma / mu) ** (1 / r))
    kernel = meijer_g(spec)
    if kernel <= 0.0:
        return 0.0
    return math.exp(log_prefactor + math.log(kernel))


def snr_cdf(link, gamma, matched=None):
    """End-to-end SNR CDF of Lemma 1 through G^{r,1}_{1,r+1}, clamped."""

    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if gamma == 0:
        return 0.0
    fit = _matched(link, matched)
    r, mu, l = link.detection, link.mu, fit.shape_l
    log_prefactor = (
        fit.log_lambda_1
        - 0.5 * (r - 1) * math.log(2 * math.pi)
        - 0.5 * math.log(r)
        + (l / r) * (math.log(gamma) - math.log(mu))
    )
    spec = MeijerSpec(
        [1 - l / r],
        [j / r for j in range(r)] + [-l / r],
        r,
        1,
        fit.lambda_4 * gamma / mu,
    )
    kernel = meijer_g(spec)
    value = math.exp(log_prefactor) * kernel
    return _clamp_probability(value, "snr_cdf", gamma)


def _clamp_probability(value, name, at):
    if value < 0.0 or value > 1.0:
        clamped = min(1.0, max(0.0, value))
        if abs(clamped - value) > 1e-9:
            logger.warning(
                "%s(%g) = %.3e outside [0, 1]; clamped", name, at, value
            )
        return clamped
    return value


def _sum_argument(link, fit, gamma):
    """Gamma-argument Lambda_2 (gamma/mu)^{1/r} of the matched sum."""
    gamma = np.asarray(gamma, dtype=float)
    return fit.lambda_2 * (gamma / link.mu) ** (1.0 / link.detection)


def snr_cdf_reference(link, gamma, matched=None):
    """Lemma 1 CDF as P(l, Lambda_2 (gamma/mu)^{1/r})."""

    fit = _matched(link, matched)
    value = special.gammainc(fit.shape_l, _sum_argument(link, fit, gamma))
    return float(value) if np.ndim(value) == 0 else value


def snr_survival(link, gamma, matched=None):
    """Complementary CDF Q(l, Lambda_2 (gamma/mu)^{1/r})."""

    fit = _matched(link, matched)
    value = special.gammaincc(fit.shape_l, _sum_argument(link, fit, gamma))
    return float(value) if np.ndim(value) == 0 else value


def snr_pdf_reference(link, gamma, matched=None):
    """Lemma 1 density by change of variables from the Gamma sum."""

    fit = _matched(link, matched)
    gamma = np.asarray(gamma, dtype=float)
    r = link.detection
    y = fit.mean_m * (gamma / link.mu) ** (1.0 / r)
    with np.errstate(divide="ignore"):
        log_density = stats.gamma.logpdf(y, a=fit.shape_l, scale=fit.scale_k)
        value = np.exp(log_density + np.log(y) - np.log(r * gamma))
    value = np.where(gamma > 0, value, 0.0)
    return float(value) if value.ndim == 0 else value


def mean_received_snr(link, matched=None):
    """Average SNR mu * E[(Y/E[M])^r] under the matched Gamma sum."""

    fit = _matched(link, matched)
    r = link.detection
    log_moment = special.gammaln(fit.shape_l + r) - special.gammaln(fit.shape_l)
    return link.mu * math.exp(
        r * math.log(fit.scale_k / fit.mean_m) + float(log_moment)
    )


__all__ = [
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
