import logging
from concurrent.futures import ThreadPoolExecutor

from risfso.errors import RisFsoError
from risfso.metrics import evaluate_metric
from risfso.montecarlo import (
    default_threads,
    estimate_aber,
    estimate_acc,
    estimate_asc,
    estimate_op,
    estimate_sop,
)
from risfso.results import SWEEP_COLUMNS, RunReport, sweep_row

logger = logging.getLogger(__name__)


def _simulate(spec, scn):
    sim = spec.sim
    if spec.metric == "op":
        return estimate_op(scn.link_d, sim, spec.gamma_star, threads=1)
    if spec.metric == "aber":
        return estimate_aber(scn.link_d, sim, spec.modulation, threads=1)
    if spec.metric == "acc":
        return estimate_acc(scn.link_d, sim, threads=1)
    if spec.metric == "asc":
        return estimate_asc(scn, sim, threads=1)
    return estimate_sop(scn, sim, threads=1)


def _error_text(exc):
    return f"{type(exc).__name__}: {exc}"


def evaluate_point(spec, curve, value):
    """One report row; a failing evaluation becomes an error marker."""

    cells = {
        "curve": curve,
        "metric": spec.metric,
        "axis": spec.axis,
        "value": value,
        "flags": frozenset(),
    }
    try:
        scn = spec.point(value)
        result = evaluate_metric(
            spec.metric,
            scn,
            gamma_star=spec.gamma_star,
            modulation=spec.modulation,
            with_asymptotic=spec.with_asymptotic,
            with_reference=spec.with_reference,
            asc_closed_form=spec.asc_closed_form,
        )
    except RisFsoError as exc:
        logger.warning("%s at %s=%s: %s", curve, spec.axis, value, exc)
        cells["error"] = _error_text(exc)
        return sweep_row(**cells)

    cells.update(
        closed_form=result.closed_form,
        asymptotic=result.asymptotic,
        quadrature=result.quadrature_ref,
        flags=result.flags,
    )
    if spec.sim is not None:
        try:
            estimate = _simulate(spec, scn)
        except RisFsoError as exc:
            logger.warning(
                "%s at %s=%s: simulation failed: %s",
                curve,
                spec.axis,
                value,
                exc,
            )
            cells["error"] = _error_text(exc)
        else:
            cells["mc_estimate"] = estimate.estimate
            cells["mc_std_error"] = estimate.std_error
    return sweep_row(**cells)


def run_sweep(specs, threads=None):
    """Evaluate every curve of ``specs`` into one sweep report.

    Points run concurrently; rows keep curve order, then axis order.
    """

    jobs = []
    for index, spec in enumerate(specs):
        curve = spec.label or f"curve{index}"
        jobs.extend((spec, curve, value) for value in spec.values)
    logger.info("sweeping %d point(s) over %d curve(s)", len(jobs), len(specs))

    threads = threads or default_threads()
    if threads == 1:
        rows = [evaluate_point(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(lambda job: evaluate_point(*job), jobs))

    seeds = {spec.sim.seed for spec in specs if spec.sim is not None}
    seed = seeds.pop() if len(seeds) == 1 else None
    failed = sum(1 for row in rows if row["error"])
    if failed:
        logger.warning("%d of %d point(s) reported errors", failed, len(rows))
    return RunReport(
        rows,
        column_names=SWEEP_COLUMNS,
        kind="sweep",
        config=[spec.to_dict() for spec in specs],
        seed=seed,
    )


__all__ = ["evaluate_point", "run_sweep"]
