import mpmath
import pytest

from risfso.errors import ConvergenceError, PoleError
from risfso.specfun import gauss_hypergeometric_series


@pytest.mark.parametrize(
    "a, b, z",
    [
        ([], [], -3.0),
        ([], [1.5], 4.0),
        ([0.5], [2.5], -6.0),
        ([1.2, 0.7], [2.0], 0.6),
        ([1.0, 1.0], [2.0], -0.9),
        ([0.3, 1.1, 2.0], [1.7, 3.2], 0.4),
    ],
)
def test_series_matches_mpmath(a, b, z):
    result = gauss_hypergeometric_series(a, b, z)

    expected = float(mpmath.hyper(a, b, z))
    assert result.value == pytest.approx(expected, rel=1e-12)
    assert result.truncation_bound <= 1e-12 * abs(result.value)


def test_terminating_series_is_a_polynomial():
    # 2F1(-2, 1; 1; z) = (1 - z)^2
    result = gauss_hypergeometric_series([-2.0, 1.0], [1.0], 3.0)

    assert result.value == pytest.approx(4.0)
    assert result.n_terms <= 4


def test_zero_argument_is_one():
    assert gauss_hypergeometric_series([2.0], [3.0], 0.0).value == 1.0


def test_max_term_reports_cancellation():
    result = gauss_hypergeometric_series([], [], -20.0)

    assert result.max_term > 1e7


@pytest.mark.parametrize("b", [0.0, -3.0])
def test_lower_parameter_pole(b):
    with pytest.raises(PoleError, match="non-positive integer"):
        gauss_hypergeometric_series([1.0], [b], 0.5)


def test_divergent_series_points_to_contour():
    with pytest.raises(ConvergenceError, match="contour"):
        gauss_hypergeometric_series([1.0, 1.0], [], 0.1)

    with pytest.raises(ConvergenceError, match=">= 1"):
        gauss_hypergeometric_series([0.5, 0.5], [1.0], 1.5)
