import numpy as np
import pytest
from scipy import integrate, stats

from risfso.channel import HopParams, LinkParams, composite_pdf, hop_moment
from risfso.errors import DomainError
from risfso.metrics import (
    ModulationParams,
    SecrecyScenario,
    average_ber,
    average_capacity,
    average_secrecy_capacity,
    outage_probability,
)
from risfso.montecarlo import (
    EXACT,
    MATCHED,
    THREADS_ENV,
    EstimateWithError,
    SimConfig,
    default_threads,
    estimate_aber,
    estimate_acc,
    estimate_asc,
    estimate_op,
    estimate_sop,
    sample_hop,
    sample_snr,
    stream,
)


@pytest.fixture
def link():
    return LinkParams.symmetric(HopParams.from_preset("moderate"), mu_r_db=20)


def _config(n_samples=20_000, seed=3, mode=MATCHED, **kwargs):
    return SimConfig(n_samples, seed, mode, **kwargs)


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"n_samples": 10}, "n_samples must be an integer"),
        ({"n_samples": 1500.5}, "n_samples must be an integer"),
        ({"seed": -1}, "64-bit"),
        ({"mode": "approx"}, "simulation mode"),
        ({"batch_size": 0}, "batch_size must be positive"),
        ({"batch_size": 1000}, "at least 30 are required"),
    ],
)
def test_sim_config_domain(kwargs, match):
    with pytest.raises(DomainError, match=match):
        _config(**kwargs)


def test_batches_cover_every_sample():
    cfg = _config(n_samples=10_050)

    lengths = [cfg.batch_length(b) for b in range(cfg.n_batches)]

    assert cfg.effective_batch_size == 101
    assert sum(lengths) == 10_050
    assert lengths[-1] == 10_050 - 99 * 101


def test_replace_revalidates():
    cfg = _config()

    assert cfg.replace(seed=9).seed == 9
    with pytest.raises(DomainError):
        cfg.replace(n_samples=5)


def test_streams_are_keyed_by_cell():
    first = stream(1, 0, 0, 0, 0).random(4)
    again = stream(1, 0, 0, 0, 0).random(4)
    other = stream(1, 0, 0, 1, 0).random(4)

    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other)


def test_sample_hop_mean_matches_first_moment():
    hop = HopParams.from_preset("weak", zeta=1.5, pointing_loss_A=0.8)

    draws = sample_hop(hop, stream(0, 0, 0, 0, 0), 400_000)

    assert draws.min() > 0
    assert draws.mean() == pytest.approx(hop_moment(hop, 1), rel=2e-2)


def _cdf_from_density(pdf):
    def cdf(points):
        edges = np.concatenate([[0.0], points])
        pieces = [
            integrate.quad(pdf, a, b)[0] for a, b in zip(edges, edges[1:])
        ]
        return np.cumsum(pieces)

    return cdf


def test_sample_hop_passes_ks_against_composite_density():
    hop = HopParams.from_preset("moderate", zeta=1.5)

    draws = sample_hop(hop, stream(3, 0, 0, 0, 0), 500)
    result = stats.kstest(
        draws, _cdf_from_density(lambda i: composite_pdf(hop, i))
    )

    assert result.pvalue > 0.01


@pytest.mark.parametrize("mode", [EXACT, MATCHED])
def test_im_dd_samples_square_heterodyne_samples(link, mode):
    cfg = _config(mode=mode)

    heterodyne = sample_snr(link, cfg, 3)
    im_dd = sample_snr(link.replace(detection=2), cfg, 3)

    np.testing.assert_allclose(im_dd, heterodyne**2 / link.mu, rtol=1e-12)


def test_standard_error_halves_with_four_times_the_samples(link):
    small = estimate_acc(link, _config(n_samples=20_000), threads=2)
    large = estimate_acc(link, _config(n_samples=80_000), threads=2)

    assert small.n_batches == large.n_batches == 100
    assert small.std_error / large.std_error == pytest.approx(2.0, rel=0.25)


@pytest.mark.parametrize("mode", [EXACT, MATCHED])
def test_batches_regenerate_alone(link, mode):
    cfg = _config(mode=mode)

    first = sample_snr(link, cfg, 5)
    again = sample_snr(link, cfg, 5)

    np.testing.assert_array_equal(first, again)
    assert len(first) == cfg.batch_length(5)


@pytest.mark.parametrize("mode", [EXACT, MATCHED])
def test_estimate_does_not_depend_on_thread_count(link, mode):
    cfg = _config(mode=mode)

    serial = estimate_op(link, cfg, 1.0, threads=1)
    parallel = estimate_op(link, cfg, 1.0, threads=4)

    assert serial == parallel


def test_estimate_changes_with_seed(link):
    first = estimate_op(link, _config(seed=1), 100.0, threads=1)
    second = estimate_op(link, _config(seed=2), 100.0, threads=1)

    assert first.estimate != second.estimate


def test_matched_outage_estimate_brackets_closed_form(link):
    estimate = estimate_op(link, _config(n_samples=50_000), 100.0, threads=2)

    assert estimate.n_effective == 50_000
    assert estimate.n_batches == 100
    assert estimate.within(outage_probability(link, 100.0), k=4.0)


def test_matched_ber_estimate_brackets_closed_form(link):
    mod = ModulationParams()

    estimate = estimate_aber(link, _config(n_samples=50_000), mod, threads=2)

    assert estimate.within(average_ber(link, mod), k=4.0)


def test_matched_capacity_estimate_brackets_closed_form(link):
    estimate = estimate_acc(link, _config(n_samples=50_000), threads=2)

    assert estimate.within(average_capacity(link), k=4.0)


def test_matched_secrecy_capacity_estimate_brackets_quadrature(link):
    eve = LinkParams.symmetric(HopParams.from_preset("weak"), mu_r_db=10)
    scn = SecrecyScenario(link, eve)

    estimate = estimate_asc(scn, _config(n_samples=50_000), threads=2)

    assert estimate.estimate > 0.0
    assert estimate.within(average_secrecy_capacity(scn), k=4.0)


@pytest.mark.slow
@pytest.mark.parametrize("mode", [EXACT, MATCHED])
@pytest.mark.parametrize("exact_event", [False, True])
def test_identical_links_give_even_secrecy_outage(link, mode, exact_event):
    scn = SecrecyScenario(link, link, tau_s=0.0)

    estimate = estimate_sop(
        scn, _config(n_samples=200_000, mode=mode), exact=exact_event
    )

    assert estimate.within(0.5, k=4.0)


def test_estimate_with_error_helpers():
    estimate = EstimateWithError(0.25, 0.01, 10_000, 100)

    assert estimate.within(0.27)
    assert not estimate.within(0.3)
    assert estimate.within(0.3, floor=0.05)
    assert str(estimate) == "0.25 +/- 0.01 (n=10000)"


def test_default_threads_reads_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")

    assert default_threads() == 3


def test_default_threads_falls_back_to_cpu_count(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)

    assert default_threads() >= 1


@pytest.mark.parametrize("value", ["many", "0"])
def test_default_threads_rejects_bad_values(monkeypatch, value):
    monkeypatch.setenv(THREADS_ENV, value)

    with pytest.raises(DomainError, match=THREADS_ENV):
        default_threads()
