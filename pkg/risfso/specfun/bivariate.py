"""Bivariate Meijer G via a double Mellin-Barnes integral.

The function is

    1/(2 pi i)^2 \\int\\int K0(s + t) K1(s) K2(t) z1^s z2^t ds dt

where each K is a univariate Meijer kernel. On a uniform grid the coupling
K0(s + t) only depends on the index sum, so the double trapezoid sum is a
discrete convolution of the two inner blocks weighted by the outer block.
"""

import logging
import math

import numpy as np
from scipy import signal

from risfso.errors import ConvergenceError, DomainError, UnsupportedError
from risfso.specfun.meijer import MeijerSpec

logger = logging.getLogger(__name__)

UNBOUNDED_REACH = 30.0
MAX_HALVINGS = 8
MAX_POINTS = 20000


class MellinBlock:
    """Parameter block (a; b) with orders m, n, without an argument."""

    def __init__(self, a=(), b=(), m=0, n=0):
        self._spec = MeijerSpec(a, b, m, n, 1.0)

    @property
    def a(self):
        return self._spec.a

    @property
    def b(self):
        return self._spec.b

    @property
    def orders(self):
        return self._spec.orders

    @property
    def empty(self):
        return not self.a and not self.b

    def strip(self):
        return self._spec.strip()

    def log_kernel(self, s):
        return self._spec.log_kernel(s)

    def __repr__(self):
        m, n, p, q = self.orders
        return f"MellinBlock[{m},{n};{p},{q}]({self.a}; {self.b})"


class BivariateMeijerSpec:
    """Outer block coupling s + t, two inner blocks and two arguments."""

    def __init__(self, outer, inner_s, inner_t, z1, z2):
        if not z1 > 0 or not z2 > 0:
            raise DomainError(
                f"bivariate Meijer G arguments must be positive, got {z1}, {z2}"
            )
        self.outer = outer
        self.inner_s = inner_s
        self.inner_t = inner_t
        self.z1 = float(z1)
        self.z2 = float(z2)

    def __repr__(self):
        return (
            f"BivariateMeijerSpec(outer={self.outer!r}, "
            f"inner_s={self.inner_s!r}, inner_t={self.inner_t!r}, "
            f"z1={self.z1:g}, z2={self.z2:g})"
        )


def _finite(lo, hi):
    if math.isinf(lo) and math.isinf(hi):
        return -UNBOUNDED_REACH, UNBOUNDED_REACH
    if math.isinf(lo):
        return hi - UNBOUNDED_REACH, hi
    if math.isinf(hi):
        return lo, lo + UNBOUNDED_REACH
    return lo, hi


def place_contours(spec):
    """Abscissas (c1, c2) with c1 + c2 inside the outer strip."""

    lo1, hi1 = _finite(*spec.inner_s.strip())
    lo2, hi2 = _finite(*spec.inner_t.strip())
    lo0, hi0 = spec.outer.strip()
    low = max(lo0, lo1 + lo2)
    high = min(hi0, hi1 + hi2)
    if not low < high:
        raise UnsupportedError(
            f"no feasible contour pair for {spec!r}",
            {"outer_strip": (lo0, hi0), "sum_strip": (lo1 + lo2, hi1 + hi2)},
        )
    w = 0.5 * (low + high)
    c1 = 0.5 * (max(lo1, w - hi2) + min(hi1, w - lo2))
    c2 = w - c1
    distance = min(c1 - lo1, hi1 - c1, c2 - lo2, hi2 - c2)
    if not math.isinf(lo0):
        distance = min(distance, w - lo0)
    if not math.isinf(hi0):
        distance = min(distance, hi0 - w)
    return c1, c2, distance


def _line(block, c, log_z):
    def log_values(y):
        s = c + 1j * y
        return block.log_kernel(s) + s * log_z

    return log_values


def _tail_height(log_values):
    height = 1.0
    while np.real(log_values(height)) - np.real(log_values(0.0)) > math.log(
        1e-17
    ):
        height *= 2.0
        if height > 512:
            raise ConvergenceError("inner block does not decay")
    return height


def _trapezoid(spec, c1, c2, height1, height2, step):
    log_z1, log_z2 = math.log(spec.z1), math.log(spec.z2)
    y1 = np.arange(-height1, height1 + step / 2, step)
    y2 = np.arange(-height2, height2 + step / 2, step)
    s = c1 + 1j * y1
    t = c2 + 1j * y2
    log_a = spec.inner_s.log_kernel(s) + s * log_z1
    log_b = spec.inner_t.log_kernel(t) + t * log_z2
    offsets = step * np.arange(len(y1) + len(y2) - 1)
    w = (c1 + c2) + 1j * (y1[0] + y2[0] + offsets)
    if spec.outer.empty:
        log_c = np.zeros_like(w)
    else:
        log_c = spec.outer.log_kernel(w)

    peaks = [float(np.max(np.real(x))) for x in (log_a, log_b, log_c)]
    a = np.exp(log_a - peaks[0])
    b = np.exp(log_b - peaks[1])
    c = np.exp(log_c - peaks[2])
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ConvergenceError("non-finite kernel values on the contour grid")
    total = np.sum(c * signal.fftconvolve(a, b)) * step * step
    return total * math.exp(sum(peaks)) / (2 * math.pi) ** 2


def meijer_g_bivariate(spec, rtol=1e-4):
    """Evaluate a real bivariate Meijer G or raise ``UnsupportedError``."""

    c1, c2, distance = place_contours(spec)
    log_z1, log_z2 = math.log(spec.z1), math.log(spec.z2)
    try:
        height1 = _tail_height(_line(spec.inner_s, c1, log_z1))
        height2 = _tail_height(_line(spec.inner_t, c2, log_z2))
    except ConvergenceError as exc:
        raise UnsupportedError(str(exc), {"c1": c1, "c2": c2}) from exc

    step = min(0.25, distance / 4.0)
    previous = None
    history = []
    for _ in range(MAX_HALVINGS):
        if 2 * max(height1, height2) / step > MAX_POINTS:
            break
        try:
            total = _trapezoid(spec, c1, c2, height1, height2, step)
        except ConvergenceError as exc:
            raise UnsupportedError(str(exc), {"step": step}) from exc
        history.append((step, total.real))
        if previous is not None and abs(total - previous) <= 0.1 * rtol * abs(
            total
        ):
            if abs(total.imag) > 1e-6 * max(abs(total.real), 1e-300):
                raise UnsupportedError(
                    f"imaginary residue {total.imag:.3e} for {spec!r}",
                    {"history": history},
                )
            logger.debug(
                "bivariate %r: c=(%.3f, %.3f), step=%g", spec, c1, c2, step
            )
            return float(total.real)
        previous = total
        step /= 2.0

    raise UnsupportedError(
        f"bivariate Meijer G did not converge for {spec!r}",
        {"c1": c1, "c2": c2, "heights": (height1, height2), "history": history},
    )


__all__ = [
    "MellinBlock",
    "BivariateMeijerSpec",
    "place_contours",
    "meijer_g_bivariate",
]
