"""Univariate Meijer G evaluation.

Convention::

    G^{m,n}_{p,q}[z | a; b] = 1/(2 pi i) \\int prod_{j<=m} Gamma(b_j - s)
        prod_{j<=n} Gamma(1 - a_j + s) / (prod_{j>m} Gamma(1 - b_j + s)
        prod_{j>n} Gamma(a_j - s)) z^s ds

Two strategies: the Slater residue series over the right poles s = b_j + t
when they are simple, and a trapezoidal Mellin-Barnes integral along a
vertical line otherwise.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import optimize, special

from risfso.errors import ConvergenceError, DomainError, PoleError
from risfso.specfun.gamma import gamma_product
from risfso.specfun.hypergeometric import gauss_hypergeometric_series

logger = logging.getLogger(__name__)

SPLIT_TOLERANCE = 1e-4
SPLIT_EPSILON = 1e-6
CANCELLATION_LIMIT = 1e7
UNIT_CIRCLE_BAND = 0.05
TAIL_LOG_DROP = math.log(1e-16)
IMAGINARY_TOLERANCE = 1e-8


class MeijerSpec:
    """Orders, parameters and argument of one G^{m,n}_{p,q} instance."""

    def __init__(self, a, b, m, n, z):
        self.a = tuple(float(x) for x in a)
        self.b = tuple(float(x) for x in b)
        self.m = int(m)
        self.n = int(n)
        self.z = float(z)

        if not 0 <= self.m <= self.q:
            raise DomainError(f"need 0 <= m <= q, got m={m}, q={self.q}")
        if not 0 <= self.n <= self.p:
            raise DomainError(f"need 0 <= n <= p, got n={n}, p={self.p}")
        if not self.z > 0 or not math.isfinite(self.z):
            raise DomainError(f"Meijer G argument must be positive, got {z}")

    @property
    def p(self):
        return len(self.a)

    @property
    def q(self):
        return len(self.b)

    @property
    def orders(self):
        return self.m, self.n, self.p, self.q

    def inverted(self):
        """G^{m,n}_{p,q}[z | a; b] = G^{n,m}_{q,p}[1/z | 1-b; 1-a]."""
        return MeijerSpec(
            [1 - x for x in self.b],
            [1 - x for x in self.a],
            self.n,
            self.m,
            1.0 / self.z,
        )

    def shifted(self, c):
        """Spec whose value is z^c times this one."""
        return MeijerSpec(
            [x + c for x in self.a],
            [x + c for x in self.b],
            self.m,
            self.n,
            self.z,
        )

    def with_argument(self, z):
        return MeijerSpec(self.a, self.b, self.m, self.n, z)

    def with_b(self, b):
        return MeijerSpec(self.a, b, self.m, self.n, self.z)

    def strip(self):
        """Open interval of Re(s) separating left and right pole families."""
        lo = max((x - 1 for x in self.a[: self.n]), default=-math.inf)
        hi = min(self.b[: self.m], default=math.inf)
        return lo, hi

    def log_kernel(self, s):
        """Log of the Mellin-Barnes integrand without the z^s factor."""
        s = np.asarray(s, dtype=complex)
        total = np.zeros_like(s)
        for x in self.b[: self.m]:
            total += special.loggamma(x - s)
        for x in self.a[: self.n]:
            total += special.loggamma(1 - x + s)
        for x in self.b[self.m :]:
            total -= special.loggamma(1 - x + s)
        for x in self.a[self.n :]:
            total -= special.loggamma(x - s)
        return total

    def __eq__(self, other):
        if not isinstance(other, MeijerSpec):
            return NotImplemented
        return (self.a, self.b, self.m, self.n, self.z) == (
            other.a,
            other.b,
            other.m,
            other.n,
            other.z,
        )

    def __hash__(self):
        return hash((self.a, self.b, self.m, self.n, self.z))

    def __repr__(self):
        a = ", ".join(f"{x:g}" for x in self.a) or "-"
        b = ", ".join(f"{x:g}" for x in self.b) or "-"
        return (
            f"G^{{{self.m},{self.n}}}_{{{self.p},{self.q}}}"
            f"[{self.z:g} | {a}; {b}]"
        )


class PoleClassification(
    namedtuple(
        "PoleClassification", ["locations", "groups", "multiplicities", "gap"]
    )
):
    __slots__ = ()

    @property
    def simple(self):
        return all(k == 1 for k in self.multiplicities)


def _integer_distance(x):
    return abs(x - round(x))


def classify_poles(spec, tolerance=SPLIT_TOLERANCE):
    """Group the right poles Gamma(b_j - s), j <= m, by integer coincidence."""

    bs = spec.b[: spec.m]
    parent = list(range(len(bs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gap = math.inf
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            distance = _integer_distance(bs[i] - bs[j])
            gap = min(gap, distance)
            if distance < tolerance:
                parent[find(i)] = find(j)

    grouped = {}
    for i in range(len(bs)):
        grouped.setdefault(find(i), []).append(i)
    groups = tuple(tuple(members) for members in sorted(grouped.values()))
    locations = tuple(min(bs[i] for i in members) for members in groups)
    multiplicities = tuple(len(members) for members in groups)
    return PoleClassification(locations, groups, multiplicities, gap)


def check_pole_collision(spec):
    """Raise when a left pole coincides with a right pole."""

    for k, a in enumerate(spec.a[: spec.n]):
        for j, b in enumerate(spec.b[: spec.m]):
            d = a - b
            if d > 0.5 and _integer_distance(d) < 1e-12:
                raise PoleError(
                    f"pole collision in {spec!r}: a[{k}] - b[{j}] = {d:g}",
                    parameter=(k, j),
                )


def epsilon_split(spec, epsilon=SPLIT_EPSILON, tolerance=SPLIT_TOLERANCE):
    """Symmetrically separate coincident right poles.

    Returns ``(spec, perturbed)``; colliding members of a group are moved by
    multiples of ``epsilon`` centred on their original values.
    """

    classification = classify_poles(spec, tolerance)
    if classification.simple:
        return spec, False
    b = list(spec.b)
    for members in classification.groups:
        count = len(members)
        for rank, index in enumerate(members):
            b[index] += epsilon * (2 * rank - (count - 1))
    logger.debug("epsilon-split %r -> b=%s", spec, b)
    return spec.with_b(b), True


def _oriented(spec):
    """Move to p <= q, and |z| <= 1 when p == q, via inversion."""
    if spec.p > spec.q or (spec.p == spec.q and spec.z > 1):
        return spec.inverted()
    return spec


def _slater_terms(spec):
    m, n, p, q = spec.orders
    a, b = spec.a, spec.b
    sign_z = (-1) ** (p - m - n)
    log_z = math.log(spec.z)
    contributions = []
    for h in range(m):
        bh = b[h]
        numerator = [b[j] - bh for j in range(m) if j != h]
        numerator += [1 + bh - a[j] for j in range(n)]
        denominator = [1 + bh - b[j] for j in range(m, q)]
        denominator += [a[j] - bh for j in range(n, p)]
        upper = [1 + bh - x for x in a]
        lower = [1 + bh - b[j] for j in range(q) if j != h]
        if any(x <= 0 and x == math.floor(x) for x in lower):
            raise ConvergenceError(
                f"Slater term {h} of {spec!r} needs a regularized series; "
                "use the contour path"
            )
        sign, log_coeff = gamma_product(numerator, denominator)
        if sign == 0:
            contributions.append((0.0, 0.0))
            continue
        exponent = log_coeff + bh * log_z
        if exponent > 700:
            raise ConvergenceError(
                f"Slater term {h} of {spec!r} overflows; use the contour path"
            )
        if exponent < -745:
            contributions.append((0.0, 0.0))
            continue
        series = gauss_hypergeometric_series(upper, lower, sign_z * spec.z)
        scale = math.exp(exponent)
        contributions.append(
            (sign * scale * series.value, scale * series.max_term)
        )
    return contributions


def meijer_g_slater(spec):
    """Slater residue series; ``spec`` must have simple right poles."""

    spec = _oriented(spec)
    if spec.p == spec.q and abs(spec.z - 1) < UNIT_CIRCLE_BAND:
        raise ConvergenceError(
            f"Slater series converges too slowly near |z| = 1 for {spec!r}; "
            "use the contour path"
        )
    classification = classify_poles(spec)
    if not classification.simple:
        raise ConvergenceError(
            f"{spec!r} has coincident poles; use the contour path"
        )
    contributions = _slater_terms(spec)
    value = math.fsum(v for v, _ in contributions)
    largest = max((s for _, s in contributions), default=0.0)
    if largest > CANCELLATION_LIMIT * max(abs(value), 1e-300):
        raise ConvergenceError(
            f"Slater series for {spec!r} cancels by "
            f"{largest / abs(value or 1e-300):.2e}; "
            "use the contour path"
        )
    return value


def _contour_abscissa(spec):
    lo, hi = spec.strip()
    if not lo < hi:
        raise ConvergenceError(
            f"contour cannot separate pole families of {spec!r} "
            f"(strip {lo:g} .. {hi:g})"
        )
    log_z = math.log(spec.z)
    reach = 50.0 + 2.0 * abs(log_z) + sum(abs(x) for x in spec.a + spec.b)
    if math.isinf(lo) and math.isinf(hi):
        lo_b, hi_b = -reach, reach
    elif math.isinf(lo):
        lo_b, hi_b = hi - reach, hi - min(0.5, 0.25 * reach)
    elif math.isinf(hi):
        lo_b, hi_b = lo + min(0.5, 0.25 * reach), lo + reach
    else:
        margin = min(0.5, 0.25 * (hi - lo))
        lo_b, hi_b = lo + margin, hi - margin

    def magnitude(c):
        return float(np.real(spec.log_kernel(c))) + c * log_z

    result = optimize.minimize_scalar(
        magnitude, bounds=(lo_b, hi_b), method="bounded"
    )
    c = float(result.x) if result.success else 0.5 * (lo_b + hi_b)
    distance = min(c - lo, hi - c)
    return c, distance


def meijer_g_contour(spec, rtol=1e-12):
    """Mellin-Barnes integral on Re(s) = c by a step-halving trapezoid."""

    spec = _oriented(spec)
    m, n, p, q = spec.orders
    if 2 * (m + n) <= p + q:
        raise ConvergenceError(
            f"Mellin-Barnes integrand of {spec!r} does not decay along "
            "vertical lines"
        )
    c, distance = _contour_abscissa(spec)
    log_z = math.log(spec.z)

    def log_integrand(y):
        s = c + 1j * np.asarray(y, dtype=float)
        return spec.log_kernel(s) + s * log_z

    log_peak = float(np.real(log_integrand(0.0)))

    height = 1.0
    while np.real(log_integrand(height)) - log_peak > TAIL_LOG_DROP:
        height *= 2.0
        if height > 1e4:
            raise ConvergenceError(
                f"integrand of {spec!r} does not fall below 1e-16 of its peak"
            )

    step = min(0.25, distance / 4.0)
    previous = None
    for _ in range(12):
        y = np.arange(-height, height + step / 2, step)
        values = np.exp(log_integrand(y) - log_peak)
        total = np.sum(values) * step
        if previous is not None and abs(total - previous) <= rtol * max(
            abs(total), 1e-300
        ) + 1e-15 * step * np.sum(np.abs(values)):
            break
        previous = total
        step /= 2.0
    else:
        raise ConvergenceError(
            f"trapezoid rule for {spec!r} did not converge "
            f"(last step {step:g})"
        )

    scale = math.exp(log_peak) / (2.0 * math.pi)
    real, imag = scale * total.real, scale * total.imag
    if abs(imag) > IMAGINARY_TOLERANCE * max(abs(real), scale * 1e-8):
        raise ConvergenceError(
            f"contour result for {spec!r} has imaginary residue {imag:.3e}"
        )
    logger.debug(
        "contour %r: c=%.4f, height=%g, step=%g", spec, c, height, step
    )
    return real


def meijer_g(spec, method="auto"):
    """Evaluate a real Meijer G function.

    ``method`` is ``"auto"`` (Slater when poles are simple and the series is
    well conditioned, contour otherwise), ``"slater"`` (epsilon-split of
    coincident poles, then Slater) or ``"contour"``.
    """

    check_pole_collision(spec)
    oriented = _oriented(spec)

    if method == "contour":
        return meijer_g_contour(oriented)
    if method == "slater":
        split, perturbed = epsilon_split(oriented)
        if perturbed:
            logger.debug("slater path on epsilon-split %r", split)
        return meijer_g_slater(split)
    if method != "auto":
        raise DomainError(f"unknown Meijer G method {method!r}")

    if classify_poles(oriented).simple:
        try:
            return meijer_g_slater(oriented)
        except ConvergenceError as exc:
            logger.debug("falling back to contour: %s", exc)
    return meijer_g_contour(oriented)


ResidueExpansion = namedtuple(
    "ResidueExpansion", ["exponents", "terms", "perturbed"]
)


def leading_residue_terms(spec, epsilon=SPLIT_EPSILON):
    """Leading small-argument terms, one per right pole family b_j, j <= m.

    Term h is the residue at s = b_h, i.e. the Slater coefficient times
    z^{b_h}; coincident poles are epsilon-split first.
    """

    check_pole_collision(spec)
    split, perturbed = epsilon_split(spec, epsilon)
    m, n, p, q = split.orders
    a, b = split.a, split.b
    log_z = math.log(split.z)
    exponents, terms = [], []
    for h in range(m):
        bh = b[h]
        numerator = [b[j] - bh for j in range(m) if j != h]
        numerator += [1 + bh - a[j] for j in range(n)]
        denominator = [1 + bh - b[j] for j in range(m, q)]
        denominator += [a[j] - bh for j in range(n, p)]
        sign, log_coeff = gamma_product(numerator, denominator)
        exponents.append(spec.b[h])
        if sign == 0 or log_coeff + bh * log_z < -745:
            terms.append(0.0)
            continue
        terms.append(sign * math.exp(log_coeff + bh * log_z))
    return ResidueExpansion(tuple(exponents), tuple(terms), perturbed)


__all__ = [
    "MeijerSpec",
    "PoleClassification",
    "classify_poles",
    "check_pole_collision",
    "epsilon_split",
    "meijer_g",
    "meijer_g_slater",
    "meijer_g_contour",
    "ResidueExpansion",
    "leading_residue_terms",
]
