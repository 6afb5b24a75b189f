"""Result containers returned by the measures and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import AgreementError


class Band(str, Enum):
    GOOD = "good"
    TENTATIVE = "tentative"
    DISCOUNT = "discount"


TENTATIVE_THRESHOLD = 0.67
GOOD_THRESHOLD = 0.8


@dataclass(frozen=True)
class InterpretationBand:
    band: Band
    thresholds: tuple[float, float] = (TENTATIVE_THRESHOLD, GOOD_THRESHOLD)

    def __str__(self):
        return self.band.value


def interpret(k_value: float) -> InterpretationBand:
    """Map a chance-corrected value onto the good / tentative / discount scale.

    Both thresholds are strict: 0.8 itself is tentative and 0.67 is discount.
    """
    if not np.isfinite(k_value) or not -1.0 <= k_value <= 1.0:
        raise AgreementError(f"value {k_value!r} is outside [-1, 1]")
    if k_value > GOOD_THRESHOLD:
        return InterpretationBand(Band.GOOD)
    if k_value > TENTATIVE_THRESHOLD:
        return InterpretationBand(Band.TENTATIVE)
    return InterpretationBand(Band.DISCOUNT)


def band_for(value: float) -> InterpretationBand:
    # chance-corrected statistics can dip below -1 on tiny panels
    return interpret(max(value, -1.0))


@dataclass(frozen=True)
class NullDistribution:
    """Monte Carlo sample of a statistic under column-permutation chance."""

    seed: int
    iterations: int
    samples: tuple[float, ...]
    observed: float
    p_value: float
    statistic: str = "kappa"

    def __post_init__(self):
        if len(self.samples) != self.iterations:
            raise AgreementError("samples must have one value per iteration")

    @classmethod
    def from_samples(cls, samples, observed, seed, statistic="kappa"):
        samples = np.sort(np.asarray(samples, dtype=float))
        # tolerance keeps replicates equal to the observed value from flipping on rounding
        extreme = np.abs(samples) >= abs(observed) - 1e-12
        p_value = (1.0 + float(extreme.sum())) / (len(samples) + 1.0)
        return cls(
            seed=int(seed),
            iterations=len(samples),
            samples=tuple(float(s) for s in samples),
            observed=float(observed),
            p_value=p_value,
            statistic=statistic,
        )


PERCENT_MEASURES = frozenset(
    {"boundary-jaccard", "percent-pair", "percent-allpairs", "percent-majority"}
)


@dataclass(frozen=True)
class MeasureResult:
    """A computed agreement statistic together with its ingredients."""

    measure_id: str
    value: float
    n_items: int
    n_coders: int
    n_categories: int
    observed_agreement: float | None = None
    expected_agreement: float | None = None
    observed_disagreement: float | None = None
    expected_disagreement: float | None = None
    band: InterpretationBand | None = None
    significance: NullDistribution | None = None
    coders: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    @property
    def chance_corrected(self) -> bool:
        return self.measure_id not in PERCENT_MEASURES

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DiagnosticRow:
    subject: str
    value: float | None
    delta: float | None


@dataclass(frozen=True)
class DiagnosticReport:
    """Per-subject statistics compared against the full-panel baseline."""

    kind: str
    baseline: float
    rows: tuple[DiagnosticRow, ...]
    warnings: tuple[str, ...] = ()

    def __getitem__(self, subject):
        for row in self.rows:
            if row.subject == subject:
                return row
        raise KeyError(subject)

    def values(self) -> dict[str, float | None]:
        return {row.subject: row.value for row in self.rows}
