import math
from collections import namedtuple

from risfso.errors import ConvergenceError, PoleError


HypergeometricSum = namedtuple(
    "HypergeometricSum", ["value", "truncation_bound", "max_term", "n_terms"]
)

MAX_TERMS = 20000
RELATIVE_TOLERANCE = 1e-17


def _non_positive_integer(x):
    return x <= 0 and x == math.floor(x)


def _terminates(coeff_a):
    return any(_non_positive_integer(a) for a in coeff_a)


def gauss_hypergeometric_series(coeff_a, coeff_b, z):
    """Partial sum of the generalized hypergeometric series pFq(a; b; z).

    Truncation is driven by the term ratio; the returned bound is the
    geometric tail estimate at the last term.
    """

    coeff_a = [float(a) for a in coeff_a]
    coeff_b = [float(b) for b in coeff_b]
    z = float(z)
    p, q = len(coeff_a), len(coeff_b)

    for b in coeff_b:
        if _non_positive_integer(b):
            raise PoleError(
                f"pFq lower parameter {b:g} is a non-positive integer",
                parameter=b,
            )

    terminating = _terminates(coeff_a)
    if z != 0 and not terminating:
        if p > q + 1:
            raise ConvergenceError(
                f"{p}F{q} diverges for z={z:g}; use the contour path"
            )
        if p == q + 1 and abs(z) >= 1:
            raise ConvergenceError(
                f"{p}F{q} diverges for |z|={abs(z):g} >= 1; "
                "use the contour path"
            )

    terms = [1.0]
    term = 1.0
    max_term = 1.0
    running = 1.0
    ratio = 0.0
    for k in range(MAX_TERMS):
        numerator = z
        for a in coeff_a:
            numerator *= a + k
        denominator = float(k + 1)
        for b in coeff_b:
            denominator *= b + k
        ratio = numerator / denominator
        term *= ratio
        if term == 0.0:
            return HypergeometricSum(math.fsum(terms), 0.0, max_term, k + 1)
        terms.append(term)
        max_term = max(max_term, abs(term))
        running += term
        if abs(ratio) < 1 and abs(term) <= RELATIVE_TOLERANCE * max(
            abs(running), 1e-300
        ):
            partial = math.fsum(terms)
            bound = abs(term) * abs(ratio) / (1 - abs(ratio))
            return HypergeometricSum(partial, bound, max_term, k + 2)

    raise ConvergenceError(
        f"{p}F{q} series did not converge within {MAX_TERMS} terms "
        f"(z={z:g}, last ratio {ratio:.3g})"
    )


__all__ = [
    "HypergeometricSum",
    "gauss_hypergeometric_series",
]
