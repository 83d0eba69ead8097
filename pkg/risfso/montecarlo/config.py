import math
import os
from dataclasses import dataclass

from risfso.errors import DomainError

EXACT = "exact"
MATCHED = "matched"
MODES = (EXACT, MATCHED)

MIN_SAMPLES = 1000
MIN_BATCHES = 30
DEFAULT_BATCHES = 100
THREADS_ENV = "RISFSO_THREADS"


def default_threads():
    """Worker count from ``RISFSO_THREADS``, else the CPU count."""
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            threads = int(value)
        except ValueError:
            raise DomainError(
                f"{THREADS_ENV} must be an integer, got {value!r}"
            )
        if threads < 1:
            raise DomainError(f"{THREADS_ENV} must be positive, got {threads}")
        return threads
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SimConfig:
    """Sample count, seed, channel mode and batching of one MC run."""

    n_samples: int = 10**6
    seed: int = 0
    mode: str = MATCHED
    batch_size: int = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(
                f"simulation mode must be one of {list(MODES)}, "
                f"got {self.mode!r}"
            )
        samples = self.n_samples
        if int(samples) != samples or samples < MIN_SAMPLES:
            raise DomainError(
                f"n_samples must be an integer >= {MIN_SAMPLES}, "
                f"got {self.n_samples}"
            )
        if not 0 <= self.seed < 2**64:
            raise DomainError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}"
            )
        if self.batch_size is not None:
            if self.batch_size < 1:
                raise DomainError(
                    f"batch_size must be positive, got {self.batch_size}"
                )
            if self.n_batches < MIN_BATCHES:
                raise DomainError(
                    f"batch_size {self.batch_size} leaves {self.n_batches} "
                    f"batches; at least {MIN_BATCHES} are required"
                )

    @property
    def effective_batch_size(self):
        if self.batch_size is not None:
            return self.batch_size
        return math.ceil(self.n_samples / DEFAULT_BATCHES)

    @property
    def n_batches(self):
        return math.ceil(self.n_samples / self.effective_batch_size)

    def batch_length(self, batch):
        size = self.effective_batch_size
        return min(size, self.n_samples - batch * size)

    def replace(self, **changes):
        values = {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "mode": self.mode,
            "batch_size": self.batch_size,
        }
        values.update(changes)
        return SimConfig(**values)


@dataclass(frozen=True)
class EstimateWithError:
    """Sample mean of a per-sample statistic and its standard error."""

    estimate: float
    std_error: float
    n_effective: int
    n_batches: int = 0

    def within(self, value, k=3.0, floor=0.0):
        """True when ``value`` lies within ``k`` standard errors."""
        return abs(self.estimate - value) <= k * self.std_error + floor

    def __str__(self):
        return (
            f"{self.estimate:.6g} +/- {self.std_error:.2g} "
            f"(n={self.n_effective})"
        )


__all__ = [
    "EXACT",
    "MATCHED",
    "MODES",
    "THREADS_ENV",
    "default_threads",
    "SimConfig",
    "EstimateWithError",
]
