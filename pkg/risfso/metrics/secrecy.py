"""Secrecy metrics: average secrecy capacity and secrecy outage bound."""

import math

from scipy import special

from risfso.channel import match_gamma
from risfso.metrics.closed_form import (
    LN2,
    ClosedForm,
    clamp,
    evaluate_form,
    residue_sum,
)
from risfso.metrics.reference import average_secrecy_capacity_reference
from risfso.specfun import (
    BivariateMeijerSpec,
    MeijerSpec,
    MellinBlock,
    meijer_g_bivariate,
)


def _tail_normaliser(r, l):
    """log of (2 pi)^{(1-r)/2} r^{l - 1/2} / Gamma(l)."""
    return (
        0.5 * (1 - r) * math.log(2 * math.pi)
        + (l - 0.5) * math.log(r)
        - special.gammaln(l)
    )


def secrecy_outage_form(scn, fit_d=None, fit_e=None):
    """Pr[gamma_d <= psi gamma_e] as a G^{r,r+1}_{r+1,r+1} instance."""

    fit_d = fit_d or match_gamma(scn.link_d)
    fit_e = fit_e or match_gamma(scn.link_e)
    r = scn.r
    l_d, l_e = fit_d.shape_l, fit_e.shape_l
    argument = (
        fit_d.lambda_4
        * scn.psi
        * scn.link_e.mu
        * r**r
        / (scn.link_d.mu * fit_e.lambda_2**r)
    )
    spec = MeijerSpec(
        [1 - (l_e + j) / r for j in range(r)] + [1.0],
        [(l_d + j) / r for j in range(r)] + [0.0],
        r,
        r + 1,
        argument,
    )
    log_prefactor = (
        (l_d + l_e - 1) * math.log(r)
        + (1 - r) * math.log(2 * math.pi)
        - special.gammaln(l_d)
        - special.gammaln(l_e)
    )
    return ClosedForm(float(log_prefactor), spec)


def secrecy_outage_probability(scn):
    """Lower bound SOP_L = int F_d(psi g) f_e(g) dg, clamped to [0, 1]."""
    return clamp(evaluate_form(secrecy_outage_form(scn)), 0.0, 1.0, "SOP_L")


def secrecy_outage_asymptotic(scn):
    value, _ = residue_sum(secrecy_outage_form(scn))
    return value


def secrecy_capacity_spec(scn, fit_d=None, fit_e=None):
    """Bivariate instance whose value times ``exp(log K)`` is ASC in nats.

    The eavesdropper CDF and the legitimate complementary CDF enter as
    inner blocks; 1/(1 + g) couples them through Gamma(1+s+t) Gamma(-s-t).
    """

    fit_d = fit_d or match_gamma(scn.link_d)
    fit_e = fit_e or match_gamma(scn.link_e)
    r = scn.r
    l_d, l_e = fit_d.shape_l, fit_e.shape_l
    outer = MellinBlock(a=[0.0], b=[0.0], m=1, n=1)
    inner_e = MellinBlock(
        a=[1.0], b=[(l_e + j) / r for j in range(r)] + [0.0], m=r, n=1
    )
    inner_d = MellinBlock(
        a=[1.0], b=[(l_d + j) / r for j in range(r)] + [0.0], m=r + 1, n=0
    )
    spec = BivariateMeijerSpec(
        outer,
        inner_e,
        inner_d,
        fit_e.lambda_4 / scn.link_e.mu,
        fit_d.lambda_4 / scn.link_d.mu,
    )
    log_k = _tail_normaliser(r, l_e) + _tail_normaliser(r, l_d)
    return float(log_k), spec


def average_secrecy_capacity_closed_form(scn, rtol=1e-4):
    """Bivariate Meijer G evaluation; ``UnsupportedError`` when it cannot."""

    log_k, spec = secrecy_capacity_spec(scn)
    nats = math.exp(log_k) * meijer_g_bivariate(spec, rtol=rtol)
    return clamp(nats / (2.0 * LN2), 0.0, math.inf, "ASC")


def average_secrecy_capacity(scn):
    """Average secrecy capacity in bits/s/Hz by quadrature.

    The quadrature of the defining integral is authoritative;
    :func:`average_secrecy_capacity_closed_form` is a cross-check.
    """

    return max(0.0, average_secrecy_capacity_reference(scn))


__all__ = [
    "secrecy_outage_form",
    "secrecy_outage_probability",
    "secrecy_outage_asymptotic",
    "secrecy_capacity_spec",
    "average_secrecy_capacity_closed_form",
    "average_secrecy_capacity",
]
