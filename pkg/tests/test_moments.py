import math

import numpy as np
import pytest
from scipy import integrate

from risfso.channel import (
    HopConstants,
    HopParams,
    LinkParams,
    MatchedGamma,
    MomentTable,
    composite_pdf,
    hop_moment,
    match_gamma,
    match_gamma_from_moments,
    moment,
)
from risfso.errors import MomentMatchingError, RisFsoError


def _random_hop(rng):
    return HopParams(
        alpha=float(rng.uniform(4.5, 12.0)),
        beta=float(rng.uniform(1.0, 6.0)),
        zeta=float(rng.uniform(0.5, 3.0)),
        pointing_loss_A=float(rng.uniform(0.3, 1.0)),
    )


def test_moment_factorises_over_hops():
    rng = np.random.default_rng(11)
    for _ in range(50):
        hop_s, hop_r = _random_hop(rng), _random_hop(rng)
        link = LinkParams(hop_s, hop_r)
        for k in (0.5, 1.0, 1.5, 2.0):
            expected = hop_moment(hop_s, k) * hop_moment(hop_r, k)

            assert moment(link, k).value == pytest.approx(expected, rel=1e-10)


def test_zeroth_moment_is_one():
    link = LinkParams.symmetric(HopParams.from_preset("weak"))

    assert moment(link, 0).value == pytest.approx(1.0)
    assert hop_moment(link.hop_s, 0) == pytest.approx(1.0)


def test_hop_moment_matches_integrated_density():
    hop = HopParams(6.0, 2.5, zeta=1.2, pointing_loss_A=0.9)

    for k in (1.0, 2.0):
        numeric, _ = integrate.quad(
            lambda i: i**k * composite_pdf(hop, i), 0, np.inf, limit=200
        )

        assert hop_moment(hop, k) == pytest.approx(numeric, rel=1e-6)


def test_validity_flag_tracks_lambda():
    strong = HopParams.from_preset("strong")
    link = LinkParams.symmetric(strong)

    assert moment(link, 1).valid
    assert not moment(link, 2).valid
    assert not MomentTable(link).valid(2)


def test_moment_table_constants():
    hop = HopParams(5.0, 2.0, zeta=2.0, pointing_loss_A=0.5)
    table = MomentTable(LinkParams.symmetric(hop))

    assert table.lambda_8 == pytest.approx(5.0 * 2.0 / (2.0 * 0.5))
    assert table.lambda_6 == pytest.approx(
        4.0 / (math.gamma(5.0) * math.gamma(2.0) * math.gamma(3.0))
    )
    assert HopConstants.of(hop).scale == table.lambda_9


def test_match_uses_the_table_moments():
    link = LinkParams.symmetric(HopParams.from_preset("moderate"), n_elements=3)
    table = MomentTable(link)

    fit = match_gamma(link)

    assert fit.mean_m == table.first.value
    assert fit.var_m == pytest.approx(table.second.value - fit.mean_m**2)
    assert fit.shape_l == pytest.approx(3 * fit.mean_m**2 / fit.var_m)


@pytest.mark.parametrize("detection", [1, 2])
def test_matched_gamma_reproduces_two_moments(detection):
    link = LinkParams.symmetric(
        HopParams.from_preset("moderate"), n_elements=3, detection=detection
    )

    fit = match_gamma(link)

    first, second = moment(link, 1).value, moment(link, 2).value
    assert fit.sum_mean == pytest.approx(3 * first)
    # Var[S] = N Var[M]
    assert fit.shape_l * fit.scale_k**2 == pytest.approx(
        3 * (second - first**2)
    )
    expected = fit.lambda_2**detection / detection**detection
    assert fit.lambda_4 == pytest.approx(expected)
    assert not fit.analytic_continuation


def test_strong_turbulence_needs_override():
    link = LinkParams.symmetric(HopParams.from_preset("strong"))

    with pytest.raises(MomentMatchingError, match="allow_analytic"):
        match_gamma(link)


def test_override_matches_on_continued_moments():
    link = LinkParams.symmetric(
        HopParams.from_preset("strong"), allow_analytic_continuation=True
    )

    fit = match_gamma(link)

    assert fit.analytic_continuation
    assert fit.shape_l > 0


def test_mixed_regimes_cannot_be_matched_even_with_override():
    link = LinkParams(
        HopParams.from_preset("strong"),
        HopParams.from_preset("moderate"),
        allow_analytic_continuation=True,
    )

    with pytest.raises(MomentMatchingError, match="undefined for this"):
        match_gamma(link)


def test_non_positive_variance_is_rejected():
    with pytest.raises(MomentMatchingError, match="undefined"):
        match_gamma_from_moments(1.0, 0.5, 2, 1)


def test_inconsistent_constants_are_rejected():
    with pytest.raises(RisFsoError, match="inconsistent matched constants"):
        MatchedGamma(
            mean_m=1.0,
            var_m=1.0,
            shape_l=2.0,
            scale_k=1.0,
            n_elements=2,
            detection=2,
            lambda_1=1.0,
            lambda_2=2.0,
            lambda_3=1.0,
            lambda_4=2.0,
        )
