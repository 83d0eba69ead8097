import math

import numpy as np
import pytest
from scipy import integrate

from risfso.channel import (
    HopParams,
    LinkParams,
    composite_pdf,
    db_to_linear,
    igg_pdf,
    match_gamma,
    mean_received_snr,
    pointing_pdf,
    product_pdf,
    snr_cdf,
    snr_cdf_reference,
    snr_pdf,
    snr_pdf_reference,
    snr_survival,
)
from risfso.errors import DomainError


@pytest.fixture
def moderate():
    return HopParams.from_preset("moderate")


@pytest.fixture(params=[1, 2], ids=["heterodyne", "im-dd"])
def link(request, moderate):
    return LinkParams.symmetric(moderate, detection=request.param)


def test_presets_carry_published_pairs():
    strong = HopParams.from_preset("strong")

    assert (strong.alpha, strong.beta) == (3.43, 1.43)
    assert HopParams.from_preset("weak").beta == 4.59
    assert HopParams.from_preset("moderate", zeta=2.0).zeta_sq == 4.0


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"alpha": 3.0, "beta": 1.0}, "alpha must exceed 3"),
        ({"alpha": 5.0, "beta": 0.0}, "beta must be positive"),
        ({"alpha": 5.0, "beta": 1.0, "zeta": -1.0}, "zeta must be positive"),
        (
            {"alpha": 5.0, "beta": 1.0, "pointing_loss_A": 0.0},
            "pointing loss A",
        ),
    ],
)
def test_hop_domain(kwargs, match):
    with pytest.raises(DomainError, match=match):
        HopParams(**kwargs)


def test_unknown_preset():
    with pytest.raises(DomainError, match="unknown turbulence preset"):
        HopParams.from_preset("calm")


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"detection": 3}, "detection order"),
        ({"n_elements": 0}, "element count"),
        ({"n_elements": 1.5}, "element count"),
    ],
)
def test_link_domain(moderate, kwargs, match):
    with pytest.raises(DomainError, match=match):
        LinkParams.symmetric(moderate, **kwargs)


def test_link_round_trips_through_dict(moderate):
    link = LinkParams(moderate, HopParams(6.0, 3.0, 1.5), mu_r_db=12.5)

    assert LinkParams.from_dict(link.as_dict()) == link
    assert link.with_mu_db(30).mu == pytest.approx(1000.0)
    assert db_to_linear(20.0) == pytest.approx(100.0)


def test_moments_exist_only_above_two():
    strong = HopParams.from_preset("strong")

    assert LinkParams.symmetric(HopParams.from_preset("moderate")).moments_exist
    assert not LinkParams.symmetric(strong).moments_exist


@pytest.mark.parametrize("preset", ["strong", "moderate", "weak"])
def test_igg_pdf_integrates_to_one(preset):
    hop = HopParams.from_preset(preset)

    mass, _ = integrate.quad(lambda x: igg_pdf(hop, x), 0, np.inf, limit=200)

    assert mass == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("preset", ["moderate", "weak"])
def test_igg_pdf_has_unit_mean(preset):
    hop = HopParams.from_preset(preset)

    mean, _ = integrate.quad(
        lambda x: x * igg_pdf(hop, x), 0, np.inf, limit=200
    )

    assert mean == pytest.approx(1.0, rel=1e-4)


def test_pointing_pdf_support():
    hop = HopParams(5.52, 2.34, zeta=1.5, pointing_loss_A=0.8)

    mass, _ = integrate.quad(lambda i: pointing_pdf(hop, i), 0, 0.8)

    assert mass == pytest.approx(1.0)
    assert pointing_pdf(hop, 0.9) == 0.0


def test_composite_pdf_reduces_to_turbulence_without_pointing_error():
    hop = HopParams(5.52, 2.34, zeta=1e3)
    bare = HopParams(5.52, 2.34)

    for i in (0.3, 0.8, 1.5, 3.0):
        expected = igg_pdf(bare, i)
        assert composite_pdf(hop, i) == pytest.approx(expected, rel=1e-3)


def test_composite_pdf_integrates_to_one(moderate):
    mass, _ = integrate.quad(
        lambda i: composite_pdf(moderate, i), 0, np.inf, limit=200
    )

    assert mass == pytest.approx(1.0, abs=1e-6)


def test_product_pdf_integrates_to_one(moderate):
    link = LinkParams(moderate, HopParams(6.3, 2.9, zeta=1.3))

    # integrate in log i to tame both tails
    mass, _ = integrate.quad(
        lambda x: math.exp(x) * product_pdf(link, math.exp(x)),
        -40,
        20,
        limit=400,
    )

    assert mass == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("ratio", [1e-3, 0.05, 0.5, 1.0, 4.0, 30.0])
def test_snr_cdf_matches_incomplete_gamma(link, ratio):
    gamma = ratio * link.mu

    assert snr_cdf(link, gamma) == pytest.approx(
        snr_cdf_reference(link, gamma), rel=1e-8, abs=1e-14
    )
    assert snr_cdf_reference(link, gamma) + snr_survival(
        link, gamma
    ) == pytest.approx(1.0)


@pytest.mark.parametrize("ratio", [1e-3, 0.05, 0.5, 1.0, 4.0])
def test_snr_pdf_matches_change_of_variables(link, ratio):
    gamma = ratio * link.mu

    assert snr_pdf(link, gamma) == pytest.approx(
        snr_pdf_reference(link, gamma), rel=1e-8
    )


def test_snr_cdf_is_monotone_and_starts_at_zero(link):
    grid = np.geomspace(1e-4, 1e4, 25) * link.mu
    values = [snr_cdf(link, g) for g in grid]

    assert snr_cdf(link, 0.0) == 0.0
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert 0.0 <= values[0] < values[-1] <= 1.0


def test_snr_reference_accepts_arrays(link):
    grid = np.array([0.0, 1.0, 10.0])

    pdf = snr_pdf_reference(link, grid)

    assert pdf.shape == (3,)
    assert pdf[0] == 0.0


def test_snr_domain(link):
    with pytest.raises(DomainError, match="non-negative"):
        snr_cdf(link, -1.0)
    with pytest.raises(DomainError, match="gamma must be positive"):
        snr_pdf(link, 0.0)


def test_mean_received_snr_follows_detection_order(moderate):
    heterodyne = LinkParams.symmetric(moderate, detection=1)
    im_dd = LinkParams.symmetric(moderate, detection=2)
    fit = match_gamma(im_dd)

    # gamma = mu (S / E[M])^r with E[S] = N E[M]
    assert mean_received_snr(heterodyne) == pytest.approx(2 * heterodyne.mu)
    assert mean_received_snr(im_dd) == pytest.approx(
        4 * im_dd.mu * (1.0 + 1.0 / fit.shape_l)
    )
