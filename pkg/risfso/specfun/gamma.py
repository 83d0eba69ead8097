"""Gamma-family building blocks shared by every Meijer G evaluation."""

import math
import sys

import numpy as np
from scipy import special

from risfso.errors import ConvergenceError, DomainError, PoleError

TINY = 1e-300
# below this the regularized Q has lost its relative precision
Q_FLOOR = 1e-280
MAX_FRACTION_TERMS = 10_000
LOG_FLOAT_MAX = math.log(sys.float_info.max)


def _is_pole(x):
    return np.imag(x) == 0 and np.real(x) <= 0 and np.real(x) == np.floor(
        np.real(x)
    )


def log_gamma(x):
    """Principal-branch log Gamma for real or complex ``x``."""

    if _is_pole(x):
        raise PoleError(
            f"log_gamma has a pole at non-positive integer {np.real(x):g}",
            parameter=float(np.real(x)),
        )
    return complex(special.loggamma(complex(x)))


def signed_log_gamma(x):
    """Return ``(sign, log|Gamma(x)|)`` for real ``x`` (scalar or array)."""

    x = np.asarray(x, dtype=float)
    poles = (x <= 0) & (x == np.floor(x))
    if np.any(poles):
        bad = float(np.atleast_1d(x)[np.atleast_1d(poles)][0])
        raise PoleError(f"Gamma pole at {bad:g}", parameter=bad)
    sign = special.gammasgn(x)
    logabs = special.gammaln(x)
    if sign.ndim == 0:
        return float(sign), float(logabs)
    return sign, logabs


def gamma_product(numerator, denominator=()):
    """Signed log of ``prod Gamma(numerator) / prod Gamma(denominator)``.

    Denominator poles contribute a zero factor, reported as sign 0.
    """

    sign = 1.0
    log_value = 0.0
    for x in numerator:
        s, lg = signed_log_gamma(x)
        sign *= s
        log_value += lg
    for x in denominator:
        if _is_pole(x):
            return 0.0, -np.inf
        s, lg = signed_log_gamma(x)
        sign *= s
        log_value -= lg
    return sign, log_value


def _check_incomplete(p, x):
    if not p > 0:
        raise DomainError(f"upper_incomplete_gamma needs p > 0, got {p}")
    if not x >= 0:
        raise DomainError(f"upper_incomplete_gamma needs x >= 0, got {x}")


def _log_upper_continued_fraction(p, x):
    # modified Lentz on the Legendre fraction; converges fast for x > p + 1
    b = x + 1.0 - p
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_FRACTION_TERMS):
        an = -i * (i - p)
        b += 2.0
        d = an * d + b
        d = d if abs(d) > TINY else TINY
        c = b + an / c
        c = c if abs(c) > TINY else TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return -x + p * math.log(x) + math.log(h)
    raise ConvergenceError(
        f"incomplete gamma fraction did not converge for p={p}, x={x}"
    )


def log_upper_incomplete_gamma(p, x):
    """``log Gamma(p, x)``, finite where ``Gamma(p, x)`` itself is not."""

    _check_incomplete(p, x)
    if x == 0:
        return float(special.gammaln(p))
    q = special.gammaincc(p, x)
    if q > Q_FLOOR:
        return float(np.log(q) + special.gammaln(p))
    return _log_upper_continued_fraction(p, x)


def upper_incomplete_gamma(p, x):
    """Non-regularized upper incomplete gamma ``Gamma(p, x)``."""

    log_value = log_upper_incomplete_gamma(p, x)
    if log_value > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_value)


__all__ = [
    "log_gamma",
    "signed_log_gamma",
    "gamma_product",
    "log_upper_incomplete_gamma",
    "upper_incomplete_gamma",
]
