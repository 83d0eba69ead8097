import math

import pytest

from risfso.channel import HopParams, LinkParams, match_gamma
from risfso.metrics import (
    EPSILON_SPLIT,
    ModulationParams,
    SecrecyScenario,
    average_ber,
    average_ber_asymptotic,
    average_capacity,
    average_capacity_asymptotic,
    evaluate_metric,
    outage_probability,
    outage_probability_asymptotic,
    secrecy_outage_asymptotic,
    secrecy_outage_probability,
)
from risfso.metrics.closed_form import (
    ber_form,
    capacity_form,
    outage_form,
    residue_terms,
)
from risfso.metrics.secrecy import secrecy_outage_form

HIGH_SNR_DB = 80.0


def _link(detection=1, mu_db=HIGH_SNR_DB):
    hop = HopParams.from_preset("moderate")
    return LinkParams.symmetric(hop, mu_r_db=mu_db, detection=detection)


def _scenario(detection=1, mu_db=HIGH_SNR_DB):
    return SecrecyScenario(
        _link(detection, mu_db), _link(detection, 30.0), tau_s=0.1
    )


@pytest.mark.parametrize("detection", [1, 2])
def test_outage_asymptote_at_high_snr(detection):
    link = _link(detection)

    exact = outage_probability(link, 1.0)

    assert outage_probability_asymptotic(link, 1.0) == pytest.approx(
        exact, rel=1e-2
    )


@pytest.mark.parametrize("detection", [1, 2])
def test_ber_asymptote_at_high_snr(detection):
    link = _link(detection)
    mod = ModulationParams()

    assert average_ber_asymptotic(link, mod) == pytest.approx(
        average_ber(link, mod), rel=1e-2
    )


@pytest.mark.parametrize("detection", [1, 2])
def test_capacity_asymptote_at_high_snr(detection):
    link = _link(detection)

    assert average_capacity_asymptotic(link) == pytest.approx(
        average_capacity(link), rel=1e-2
    )


@pytest.mark.parametrize("detection", [1, 2])
def test_secrecy_outage_asymptote_at_high_snr(detection):
    scn = _scenario(detection)

    assert secrecy_outage_asymptotic(scn) == pytest.approx(
        secrecy_outage_probability(scn), rel=1e-2
    )


def test_heterodyne_outage_asymptote_is_leading_gamma_term():
    link = _link(mu_db=40.0)
    fit = match_gamma(link)
    gamma_star = 2.0
    l = fit.shape_l

    expected = (fit.lambda_2 * gamma_star / link.mu) ** l / math.gamma(l + 1)

    assert outage_probability_asymptotic(link, gamma_star) == pytest.approx(
        expected, rel=1e-9
    )


def test_heterodyne_ber_asymptote_is_leading_gamma_term():
    link = _link(mu_db=40.0)
    fit = match_gamma(link)
    mod = ModulationParams(0.5, 2.0)
    l = fit.shape_l

    expected = (
        (fit.lambda_2 / link.mu) ** l
        * math.gamma(mod.p + l)
        / (2 * math.gamma(mod.p) * math.gamma(l + 1) * mod.q**l)
    )

    assert average_ber_asymptotic(link, mod) == pytest.approx(
        expected, rel=1e-9
    )


@pytest.mark.parametrize("detection", [1, 2])
def test_one_term_per_right_pole_family(detection):
    link = _link(detection)
    scn = _scenario(detection)

    assert len(residue_terms(outage_form(link, 1.0)).terms) == detection
    assert len(residue_terms(ber_form(link, ModulationParams())).terms) == (
        detection
    )
    assert len(residue_terms(capacity_form(link)).terms) == detection + 2
    assert len(residue_terms(secrecy_outage_form(scn)).terms) == detection


def test_asymptote_decays_with_diversity_order():
    low, high = _link(mu_db=50.0), _link(mu_db=60.0)
    l = match_gamma(low).shape_l

    ratio = outage_probability_asymptotic(
        low, 1.0
    ) / outage_probability_asymptotic(high, 1.0)

    assert ratio == pytest.approx(10.0**l, rel=1e-9)


def test_capacity_asymptote_is_flagged_as_split():
    result = evaluate_metric("acc", _scenario())

    assert result.flagged(EPSILON_SPLIT)
    assert result.asymptotic == pytest.approx(result.value, rel=1e-2)


def test_outage_asymptote_is_not_split():
    result = evaluate_metric("op", _scenario())

    assert not result.flagged(EPSILON_SPLIT)
