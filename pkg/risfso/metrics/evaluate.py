import logging

from risfso.channel import match_gamma
from risfso.errors import DomainError, PoleError, UnsupportedError
from risfso.metrics import closed_form, reference, secrecy
from risfso.metrics.scenario import (
    ANALYTIC_CONTINUATION,
    BIVARIATE_UNSUPPORTED,
    EPSILON_SPLIT,
    MetricResult,
    ModulationParams,
)

logger = logging.getLogger(__name__)

METRICS = ("op", "aber", "acc", "asc", "sop")


def _continuation_flags(*links):
    flags = set()
    for link in links:
        if match_gamma(link).analytic_continuation:
            flags.add(ANALYTIC_CONTINUATION)
    return flags


def _asymptotic(form):
    try:
        value, perturbed = closed_form.residue_sum(form)
    except PoleError as exc:
        logger.warning("no asymptotic value: %s", exc)
        return None, set()
    return value, {EPSILON_SPLIT} if perturbed else set()


def _maybe_asymptotic(form, options):
    if not options["asymptotic"]:
        return None, set()
    return _asymptotic(form)


def _evaluate_op(scn, options):
    link = scn.link_d
    form = closed_form.outage_form(link, options["gamma_star"])
    flags = _continuation_flags(link)
    value = closed_form.clamp(
        closed_form.evaluate_form(form), 0.0, 1.0, "OP"
    )
    asymptotic, extra = _maybe_asymptotic(form, options)
    ref = None
    if options["reference"]:
        ref = reference.outage_probability_reference(
            link, options["gamma_star"]
        )
    return MetricResult(value, asymptotic, ref, frozenset(flags | extra))


def _evaluate_aber(scn, options):
    link, mod = scn.link_d, options["modulation"]
    form = closed_form.ber_form(link, mod)
    flags = _continuation_flags(link)
    value = closed_form.clamp(
        closed_form.evaluate_form(form), 0.0, 0.5, "ABER"
    )
    asymptotic, extra = _maybe_asymptotic(form, options)
    ref = None
    if options["reference"]:
        ref = reference.average_ber_reference(link, mod)
    return MetricResult(value, asymptotic, ref, frozenset(flags | extra))


def _evaluate_acc(scn, options):
    link = scn.link_d
    form = closed_form.capacity_form(link)
    flags = _continuation_flags(link)
    value = closed_form.average_capacity(link)
    asymptotic, extra = None, set()
    if options["asymptotic"]:
        nats, extra = _asymptotic(form)
        asymptotic = None if nats is None else nats / (2.0 * closed_form.LN2)
    ref = None
    if options["reference"]:
        ref = reference.average_capacity_reference(link)
    return MetricResult(value, asymptotic, ref, frozenset(flags | extra))


def _evaluate_asc(scn, options):
    flags = _continuation_flags(scn.link_d, scn.link_e)
    value = None
    if options["asc_closed_form"]:
        try:
            value = secrecy.average_secrecy_capacity_closed_form(scn)
        except UnsupportedError as exc:
            logger.info("bivariate ASC unsupported: %s", exc)
            flags.add(BIVARIATE_UNSUPPORTED)
    ref = max(0.0, reference.average_secrecy_capacity_reference(scn))
    return MetricResult(
        value, None, ref, frozenset(flags), reference_first=True
    )


def _evaluate_sop(scn, options):
    form = secrecy.secrecy_outage_form(scn)
    flags = _continuation_flags(scn.link_d, scn.link_e)
    value = closed_form.clamp(
        closed_form.evaluate_form(form), 0.0, 1.0, "SOP_L"
    )
    asymptotic, extra = _maybe_asymptotic(form, options)
    ref = None
    if options["reference"]:
        ref = reference.secrecy_outage_reference(scn)
    return MetricResult(value, asymptotic, ref, frozenset(flags | extra))


HANDLERS = {
    "op": _evaluate_op,
    "aber": _evaluate_aber,
    "acc": _evaluate_acc,
    "asc": _evaluate_asc,
    "sop": _evaluate_sop,
}


def evaluate_metric(
    metric,
    scn,
    gamma_star=1.0,
    modulation=None,
    with_asymptotic=True,
    with_reference=False,
    asc_closed_form=False,
):
    """Evaluate one metric of a scenario into a :class:`MetricResult`.

    Link metrics (OP, ABER, ACC) use the legitimate link of ``scn``.
    """

    try:
        handler = HANDLERS[metric]
    except KeyError:
        raise DomainError(
            f"unknown metric '{metric}'; expected one of {list(METRICS)}"
        )
    options = {
        "gamma_star": gamma_star,
        "modulation": modulation or ModulationParams(),
        "asymptotic": with_asymptotic,
        "reference": with_reference,
        "asc_closed_form": asc_closed_form,
    }
    return handler(scn, options)


__all__ = ["METRICS", "evaluate_metric"]
