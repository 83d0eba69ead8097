"""Closed forms and high-SNR residue expansions of OP, ABER and ACC.

Each metric is ``exp(log_prefactor) * G`` for one Meijer G instance. The
exact value evaluates G; the asymptotic value keeps one residue per right
pole family of G at the small argument reached as mu grows.
"""

import logging
import math
from collections import namedtuple

from scipy import special

from risfso.channel import match_gamma
from risfso.errors import DomainError
from risfso.specfun import MeijerSpec, leading_residue_terms, meijer_g

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

ClosedForm = namedtuple("ClosedForm", ["log_prefactor", "spec"])


def clamp(value, lower, upper, name):
    """Clamp a closed-form value into its range, logging real excursions."""
    clamped = min(upper, max(lower, value))
    if clamped != value and abs(clamped - value) > 1e-9:
        logger.warning(
            "%s = %.6e outside [%g, %g]; clamped", name, value, lower, upper
        )
    return clamped


def cdf_log_prefactor(link, fit):
    """log of Lambda_3 / (sqrt(r) mu^{l/r})."""
    r, l = link.detection, fit.shape_l
    return (
        fit.log_lambda_1
        - 0.5 * (r - 1) * math.log(2 * math.pi)
        - 0.5 * math.log(r)
        - (l / r) * math.log(link.mu)
    )


def _lower_row(r, l):
    return [j / r for j in range(r)] + [-l / r]


def outage_form(link, gamma_star, fit=None):
    if not gamma_star > 0:
        raise DomainError(f"threshold must be positive, got {gamma_star}")
    fit = fit or match_gamma(link)
    r, l = link.detection, fit.shape_l
    spec = MeijerSpec(
        [1 - l / r], _lower_row(r, l), r, 1, fit.lambda_4 * gamma_star / link.mu
    )
    log_prefactor = cdf_log_prefactor(link, fit) + (l / r) * math.log(
        gamma_star
    )
    return ClosedForm(log_prefactor, spec)


def ber_form(link, mod, fit=None):
    fit = fit or match_gamma(link)
    r, l = link.detection, fit.shape_l
    spec = MeijerSpec(
        [1 - mod.p - l / r, 1 - l / r],
        _lower_row(r, l),
        r,
        2,
        fit.lambda_4 / (mod.q * link.mu),
    )
    log_prefactor = (
        cdf_log_prefactor(link, fit)
        - (l / r) * math.log(mod.q)
        - math.log(2.0)
        - special.gammaln(mod.p)
    )
    return ClosedForm(float(log_prefactor), spec)


def capacity_form(link, fit=None):
    """ACC in nats; the double right pole at -l/r comes from ln(1 + g)."""
    fit = fit or match_gamma(link)
    r, l = link.detection, fit.shape_l
    spec = MeijerSpec(
        [-l / r, 1 - l / r],
        _lower_row(r, l) + [-l / r],
        r + 2,
        1,
        fit.lambda_4 / link.mu,
    )
    return ClosedForm(cdf_log_prefactor(link, fit), spec)


def evaluate_form(form):
    kernel = meijer_g(form.spec)
    if kernel == 0.0:
        return 0.0
    return math.copysign(
        math.exp(form.log_prefactor + math.log(abs(kernel))), kernel
    )


def residue_sum(form):
    """Sum of the leading residues; returns ``(value, perturbed)``."""
    expansion = leading_residue_terms(form.spec)
    total = math.fsum(expansion.terms)
    if total == 0.0:
        return 0.0, expansion.perturbed
    value = math.copysign(
        math.exp(form.log_prefactor + math.log(abs(total))), total
    )
    return value, expansion.perturbed


def residue_terms(form):
    """Individual leading terms, each scaled by the prefactor."""
    expansion = leading_residue_terms(form.spec)
    scale = math.exp(form.log_prefactor)
    return expansion._replace(terms=tuple(scale * t for t in expansion.terms))


def outage_probability(link, gamma_star):
    """Probability that the end-to-end SNR falls below ``gamma_star``."""
    return clamp(evaluate_form(outage_form(link, gamma_star)), 0.0, 1.0, "OP")


def outage_probability_asymptotic(link, gamma_star):
    value, _ = residue_sum(outage_form(link, gamma_star))
    return value


def average_ber(link, mod):
    """Average bit error rate for the modulation pair (p, q)."""
    return clamp(evaluate_form(ber_form(link, mod)), 0.0, 0.5, "ABER")


def average_ber_asymptotic(link, mod):
    value, _ = residue_sum(ber_form(link, mod))
    return value


def average_capacity(link):
    """Average channel capacity in bits/s/Hz, 1/(2 ln 2) normalised."""
    nats = evaluate_form(capacity_form(link))
    return clamp(nats / (2.0 * LN2), 0.0, math.inf, "ACC")


def average_capacity_asymptotic(link):
    value, _ = residue_sum(capacity_form(link))
    return value / (2.0 * LN2)


def diversity_order(link):
    """High-SNR decay exponent of OP, ABER and SOP in mu_d: l / r."""
    return match_gamma(link).shape_l / link.detection


__all__ = [
    "ClosedForm",
    "clamp",
    "cdf_log_prefactor",
    "outage_form",
    "ber_form",
    "capacity_form",
    "evaluate_form",
    "residue_sum",
    "residue_terms",
    "outage_probability",
    "outage_probability_asymptotic",
    "average_ber",
    "average_ber_asymptotic",
    "average_capacity",
    "average_capacity_asymptotic",
    "diversity_order",
]
