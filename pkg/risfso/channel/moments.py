"""Mellin moments of the RIS path gain and Gamma moment matching."""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass

from risfso.errors import MomentMatchingError, RisFsoError
from risfso.specfun import gamma_product

logger = logging.getLogger(__name__)

Moment = namedtuple("Moment", ["value", "valid"])


class HopConstants(namedtuple("HopConstants", ["lambda_5", "scale"])):
    """``lambda_5 = 1/(G(a)G(b)G(lam))``; ``scale = a*b/((lam-1)*A)``."""

    __slots__ = ()

    @classmethod
    def of(cls, hop):
        _, log_norm = gamma_product([], [hop.alpha, hop.beta, hop.lam])
        scale = hop.alpha * hop.beta / ((hop.lam - 1.0) * hop.pointing_loss_A)
        return cls(math.exp(log_norm), scale)


class MomentTable:
    """Constants of the product gain M = rho * varrho for one link."""

    def __init__(self, link):
        self.link = link
        hop_s, hop_r = link.hop_s, link.hop_r
        self.hop_s = HopConstants.of(hop_s)
        self.hop_r = HopConstants.of(hop_r)
        self.lambda_6 = hop_s.zeta_sq * self.hop_s.lambda_5
        self.lambda_7 = hop_r.zeta_sq * self.hop_r.lambda_5
        self.lambda_8 = self.hop_s.scale
        self.lambda_9 = self.hop_r.scale
        self.p_row = (
            1 - hop_r.lam,
            1 - hop_s.lam,
            1 + hop_s.zeta_sq,
            1 + hop_r.zeta_sq,
        )
        self.r_row = (
            hop_r.zeta_sq,
            hop_r.alpha,
            hop_r.beta,
            hop_s.zeta_sq,
            hop_s.alpha,
            hop_s.beta,
        )
        self.first = moment(link, 1)
        self.second = moment(link, 2)

    def valid(self, k):
        return min(self.link.hop_s.lam, self.link.hop_r.lam) > k

    def __repr__(self):
        return (
            f"MomentTable(E[M]={self.first.value:.6g}, "
            f"E[M^2]={self.second.value:.6g})"
        )


def hop_moment(hop, k):
    """E[(Z I_p)^k] for one hop, analytically continued past k >= lambda."""

    sign, log_ratio = gamma_product(
        [hop.alpha + k, hop.beta + k, hop.lam - k],
        [hop.alpha, hop.beta, hop.lam],
    )
    scale = (hop.lam - 1.0) * hop.pointing_loss_A / (hop.alpha * hop.beta)
    return (
        sign
        * math.exp(log_ratio + k * math.log(scale))
        * hop.zeta_sq
        / (hop.zeta_sq + k)
    )


def moment(link, k):
    """E[M^k] from the product Mellin transform, with a validity flag."""

    hop_s, hop_r = link.hop_s, link.hop_r
    p_row = (1 - hop_r.lam, 1 - hop_s.lam, 1 + hop_s.zeta_sq, 1 + hop_r.zeta_sq)
    r_row = (
        hop_r.zeta_sq,
        hop_r.alpha,
        hop_r.beta,
        hop_s.zeta_sq,
        hop_s.alpha,
        hop_s.beta,
    )
    sign, log_value = gamma_product(
        [x + k for x in r_row] + [1 - p_row[0] - k, 1 - p_row[1] - k],
        [p_row[2] + k, p_row[3] + k]
        + [hop_s.alpha, hop_s.beta, hop_s.lam]
        + [hop_r.alpha, hop_r.beta, hop_r.lam],
    )
    log_value += math.log(hop_s.zeta_sq * hop_r.zeta_sq)
    log_value -= k * math.log(HopConstants.of(hop_s).scale)
    log_value -= k * math.log(HopConstants.of(hop_r).scale)
    valid = hop_s.lam > k and hop_r.lam > k
    return Moment(sign * math.exp(log_value), valid)


@dataclass(frozen=True)
class MatchedGamma:
    """Gamma surrogate of the N-element sum and the Lemma 1 constants."""

    mean_m: float
    var_m: float
    shape_l: float
    scale_k: float
    n_elements: int
    detection: int
    lambda_1: float
    lambda_2: float
    lambda_3: float
    lambda_4: float
    analytic_continuation: bool = False

    def __post_init__(self):
        r = self.detection
        expected = self.lambda_2**r / r**r
        if abs(expected - self.lambda_4) > 1e-12 * abs(self.lambda_4):
            raise RisFsoError(
                f"inconsistent matched constants: lambda_2^r/r^r={expected!r} "
                f"but lambda_4={self.lambda_4!r}"
            )

    @property
    def sum_mean(self):
        return self.shape_l * self.scale_k

    @property
    def log_lambda_1(self):
        return (
            self.shape_l * math.log(self.mean_m)
            - math.lgamma(self.shape_l)
            - self.shape_l * math.log(self.scale_k)
        )


def match_gamma_from_moments(
    mean, second_moment, n_elements, detection, analytic_continuation=False
):
    """Match a Gamma(l, k) to N i.i.d. terms with the given two moments."""

    var = second_moment - mean * mean
    if not var > 0 or not mean > 0:
        raise MomentMatchingError(
            f"moment matching undefined for this turbulence regime "
            f"(E[M]={mean:.6g}, Var[M]={var:.6g})"
        )
    r = detection
    shape = n_elements * mean * mean / var
    scale = var / mean
    lambda_1 = math.exp(
        shape * math.log(mean) - math.lgamma(shape) - shape * math.log(scale)
    )
    lambda_2 = mean / scale
    return MatchedGamma(
        mean_m=mean,
        var_m=var,
        shape_l=shape,
        scale_k=scale,
        n_elements=n_elements,
        detection=r,
        lambda_1=lambda_1,
        lambda_2=lambda_2,
        lambda_3=lambda_1 / (2 * math.pi) ** ((r - 1) / 2),
        lambda_4=(mean / (scale * r)) ** r,
        analytic_continuation=analytic_continuation,
    )


def match_gamma(link, allow_analytic_continuation=None):
    """Moment-match the N-element sum of the link gains to a Gamma law.

    Without two genuine moments the match only proceeds when the link, or
    the explicit ``allow_analytic_continuation`` argument, permits it.
    """

    if allow_analytic_continuation is None:
        allow_analytic_continuation = link.allow_analytic_continuation
    table = MomentTable(link)
    continued = not (table.first.valid and table.second.valid)
    if continued and not allow_analytic_continuation:
        raise MomentMatchingError(
            f"E[M^2] does not exist for lambda_s={link.hop_s.lam:g}, "
            f"lambda_r={link.hop_r.lam:g}; set allow_analytic_continuation "
            "to use the continued moment formula"
        )
    if continued:
        logger.warning(
            "matching on analytically continued moments "
            "(lambda_s=%g, lambda_r=%g)",
            link.hop_s.lam,
            link.hop_r.lam,
        )
    logger.debug("matching %r", table)
    return match_gamma_from_moments(
        table.first.value,
        table.second.value,
        link.n_elements,
        link.detection,
        analytic_continuation=continued,
    )


__all__ = [
    "Moment",
    "HopConstants",
    "MomentTable",
    "hop_moment",
    "moment",
    "MatchedGamma",
    "match_gamma_from_moments",
    "match_gamma",
]
