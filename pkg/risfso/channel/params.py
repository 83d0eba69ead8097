from dataclasses import asdict, dataclass, field, replace

from risfso.errors import DomainError


STRONG = (3.43, 1.43)
MODERATE = (5.52, 2.34)
WEAK = (10.67, 4.59)

TURBULENCE_PRESETS = {
    "strong": STRONG,
    "moderate": MODERATE,
    "weak": WEAK,
}

HETERODYNE = 1
IM_DD = 2


def db_to_linear(value_db):
    """Power ratio from decibels: 10^(dB/10)."""
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class HopParams:
    """One inverted Gamma-Gamma hop with pointing error.

    ``lam`` (the inversion shape) is always ``alpha - 2``.
    """

    alpha: float
    beta: float
    zeta: float = 1.0
    pointing_loss_A: float = 1.0

    def __post_init__(self):
        if not self.alpha > 3:
            raise DomainError(
                f"alpha must exceed 3 so that lambda = alpha - 2 > 1, "
                f"got alpha={self.alpha}"
            )
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if not self.zeta > 0:
            raise DomainError(f"zeta must be positive, got {self.zeta}")
        if not self.pointing_loss_A > 0:
            raise DomainError(
                f"pointing loss A must be positive, got {self.pointing_loss_A}"
            )

    @property
    def lam(self):
        return self.alpha - 2.0

    @property
    def zeta_sq(self):
        return self.zeta * self.zeta

    @classmethod
    def from_preset(cls, name, zeta=1.0, pointing_loss_A=1.0):
        try:
            alpha, beta = TURBULENCE_PRESETS[name]
        except KeyError:
            raise DomainError(
                f"unknown turbulence preset '{name}'; "
                f"expected one of {sorted(TURBULENCE_PRESETS)}"
            )
        return cls(alpha, beta, zeta, pointing_loss_A)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class LinkParams:
    """Source -> RIS -> receiver link: two hops, N elements, detection r."""

    hop_s: HopParams
    hop_r: HopParams
    n_elements: int = 2
    detection: int = HETERODYNE
    mu_r_db: float = 20.0
    allow_analytic_continuation: bool = field(default=False, compare=True)

    def __post_init__(self):
        if self.detection not in (HETERODYNE, IM_DD):
            raise DomainError(
                f"detection order r must be 1 (heterodyne) or 2 (IM/DD), "
                f"got {self.detection}"
            )
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise DomainError(
                f"RIS element count must be a positive integer, "
                f"got {self.n_elements}"
            )

    @property
    def r(self):
        return self.detection

    @property
    def mu(self):
        return db_to_linear(self.mu_r_db)

    @property
    def moments_exist(self):
        """True when E[M^2] is a genuine moment (both lambdas above 2)."""
        return self.hop_s.lam > 2 and self.hop_r.lam > 2

    def with_mu_db(self, mu_r_db):
        return replace(self, mu_r_db=float(mu_r_db))

    def replace(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["hop_s"] = HopParams(**data["hop_s"])
        data["hop_r"] = HopParams(**data["hop_r"])
        return cls(**data)

    @classmethod
    def symmetric(cls, hop, **kwargs):
        """Link whose two hops share the same parameters."""
        return cls(hop_s=hop, hop_r=hop, **kwargs)


__all__ = [
    "STRONG",
    "MODERATE",
    "WEAK",
    "TURBULENCE_PRESETS",
    "HETERODYNE",
    "IM_DD",
    "db_to_linear",
    "HopParams",
    "LinkParams",
]
