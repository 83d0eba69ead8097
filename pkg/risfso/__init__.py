"""Performance metrics of RIS-assisted free-space optical links.

Closed-form Meijer G expressions, their high-SNR asymptotics, definitional
quadratures and a seeded Monte Carlo oracle, behind a sweep CLI.
"""

from risfso.channel import (
    HopParams,
    LinkParams,
    MatchedGamma,
    match_gamma,
    moment,
    snr_cdf,
    snr_pdf,
)
from risfso.errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    MomentMatchingError,
    PoleError,
    RisFsoError,
    UnsupportedError,
)
from risfso.metrics import (
    MetricResult,
    ModulationParams,
    SecrecyScenario,
    average_ber,
    average_capacity,
    average_secrecy_capacity,
    evaluate_metric,
    outage_probability,
    secrecy_outage_probability,
)
from risfso.montecarlo import EstimateWithError, SimConfig
from risfso.results import TOOL_VERSION, RunReport
from risfso.row import Row
from risfso.specfun import MeijerSpec, meijer_g

__version__ = TOOL_VERSION

__all__ = [
    "__version__",
    "RisFsoError",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "UnsupportedError",
    "MomentMatchingError",
    "ConfigError",
    "MeijerSpec",
    "meijer_g",
    "HopParams",
    "LinkParams",
    "MatchedGamma",
    "match_gamma",
    "moment",
    "snr_pdf",
    "snr_cdf",
    "ModulationParams",
    "SecrecyScenario",
    "MetricResult",
    "evaluate_metric",
    "outage_probability",
    "average_ber",
    "average_capacity",
    "average_secrecy_capacity",
    "secrecy_outage_probability",
    "SimConfig",
    "EstimateWithError",
    "Row",
    "RunReport",
]
