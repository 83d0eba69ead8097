import math
from dataclasses import dataclass, field

from risfso.errors import DomainError

ANALYTIC_CONTINUATION = "analytic-continuation"
BIVARIATE_UNSUPPORTED = "bivariate-unsupported"
EPSILON_SPLIT = "epsilon-split"


@dataclass(frozen=True)
class ModulationParams:
    """Modulation pair (p, q) of the ABER integral."""

    p: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if not self.p > 0 or not self.q > 0:
            raise DomainError(
                f"modulation pair must be positive, "
                f"got (p, q)=({self.p}, {self.q})"
            )


@dataclass(frozen=True)
class SecrecyScenario:
    """Legitimate link, eavesdropper link and target secrecy rate."""

    link_d: object
    link_e: object
    tau_s: float = 0.1

    def __post_init__(self):
        if not self.tau_s >= 0:
            raise DomainError(
                f"target secrecy rate must be non-negative, got {self.tau_s}"
            )
        if self.link_d.detection != self.link_e.detection:
            raise DomainError(
                "legitimate and eavesdropper links must share the detection "
                f"order, got r_d={self.link_d.detection}, "
                f"r_e={self.link_e.detection}"
            )

    @property
    def psi(self):
        return 2.0**self.tau_s

    @property
    def r(self):
        return self.link_d.detection

    def with_mu_d_db(self, mu_r_db):
        return SecrecyScenario(
            self.link_d.with_mu_db(mu_r_db), self.link_e, self.tau_s
        )


@dataclass(frozen=True)
class MetricResult:
    """One metric evaluation with its optional cross-checks and flags."""

    closed_form: float = None
    asymptotic: float = None
    quadrature_ref: float = None
    flags: frozenset = field(default_factory=frozenset)
    reference_first: bool = False

    @property
    def value(self):
        """Authoritative value: the quadrature when ``reference_first``."""
        if self.reference_first and self.quadrature_ref is not None:
            return self.quadrature_ref
        if self.closed_form is not None:
            return self.closed_form
        return self.quadrature_ref

    @property
    def relative_gap(self):
        """|closed form - quadrature| / |quadrature|, when both exist."""
        if self.closed_form is None or self.quadrature_ref is None:
            return None
        if self.quadrature_ref == 0:
            return 0.0 if self.closed_form == 0 else math.inf
        return abs(self.closed_form - self.quadrature_ref) / abs(
            self.quadrature_ref
        )

    def flagged(self, flag):
        return flag in self.flags


__all__ = [
    "ANALYTIC_CONTINUATION",
    "BIVARIATE_UNSUPPORTED",
    "EPSILON_SPLIT",
    "ModulationParams",
    "SecrecyScenario",
    "MetricResult",
]
