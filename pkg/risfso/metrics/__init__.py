"""OP, ABER, ACC, ASC and SOP of the legitimate and eavesdropper links."""

from .closed_form import (
    average_ber,
    average_ber_asymptotic,
    average_capacity,
    average_capacity_asymptotic,
    diversity_order,
    outage_probability,
    outage_probability_asymptotic,
)
from .evaluate import METRICS, evaluate_metric
from .reference import (
    average_ber_reference,
    average_capacity_reference,
    average_secrecy_capacity_reference,
    integrate_half_line,
    outage_probability_reference,
    secrecy_outage_reference,
)
from .scenario import (
    ANALYTIC_CONTINUATION,
    BIVARIATE_UNSUPPORTED,
    EPSILON_SPLIT,
    MetricResult,
    ModulationParams,
    SecrecyScenario,
)
from .secrecy import (
    average_secrecy_capacity,
    average_secrecy_capacity_closed_form,
    secrecy_outage_asymptotic,
    secrecy_outage_probability,
)

__all__ = [
    "ModulationParams",
    "SecrecyScenario",
    "MetricResult",
    "ANALYTIC_CONTINUATION",
    "BIVARIATE_UNSUPPORTED",
    "EPSILON_SPLIT",
    "outage_probability",
    "outage_probability_asymptotic",
    "average_ber",
    "average_ber_asymptotic",
    "average_capacity",
    "average_capacity_asymptotic",
    "average_secrecy_capacity",
    "average_secrecy_capacity_closed_form",
    "secrecy_outage_probability",
    "secrecy_outage_asymptotic",
    "diversity_order",
    "integrate_half_line",
    "outage_probability_reference",
    "average_ber_reference",
    "average_capacity_reference",
    "average_secrecy_capacity_reference",
    "secrecy_outage_reference",
    "METRICS",
    "evaluate_metric",
]
