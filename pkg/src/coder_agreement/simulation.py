"""Random-coder simulation for checking chance agreement and building fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import AgreementError
from .model import AnnotationMatrix, CategorySet
from .rng import categorical, check_seed, master_generator, replicate_generator
from .stats import _observed_codes

PROB_TOL = 1e-9


def _check_distribution(marginals: Mapping[str, float], what: str) -> dict[str, float]:
    marginals = {str(k): float(v) for k, v in dict(marginals).items()}
    if not marginals:
        raise AgreementError(f"{what} has no labels")
    for label, p in marginals.items():
        if not np.isfinite(p) or not 0.0 <= p <= 1.0:
            raise AgreementError(f"{what}: probability of {label!r} is {p}, not in [0, 1]")
    total = sum(marginals.values())
    if abs(total - 1.0) > PROB_TOL:
        raise AgreementError(f"{what}: probabilities sum to {total}, not 1")
    return marginals


@dataclass(frozen=True)
class CoderProfile:
    """How a simulated coder labels: its label distribution and, optionally,
    how often it reports a latent true label instead of guessing."""

    marginals: Mapping[str, float]
    accuracy: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "marginals", _check_distribution(self.marginals, "profile"))
        if self.accuracy is not None:
            acc = float(self.accuracy)
            if not np.isfinite(acc) or not 0.0 <= acc <= 1.0:
                raise AgreementError(f"accuracy {acc} is not in [0, 1]")
            object.__setattr__(self, "accuracy", acc)

    @classmethod
    def uniform(cls, labels: Sequence[str], accuracy=None) -> "CoderProfile":
        return cls({lab: 1.0 / len(labels) for lab in labels}, accuracy)


def _categories(*distributions) -> CategorySet:
    labels = set()
    for dist in distributions:
        labels.update(dist)
    return CategorySet(tuple(sorted(labels)))


def _probs(marginals, categories):
    return np.array([marginals.get(lab, 0.0) for lab in categories.labels])


def _ids(n_items, n_coders):
    return [f"u{i + 1}" for i in range(n_items)], [f"c{j + 1}" for j in range(n_coders)]


def _check_panel(n_items, profiles):
    if int(n_items) < 1:
        raise AgreementError(f"n_items must be at least 1, got {n_items}")
    if len(profiles) < 2:
        raise AgreementError("need at least 2 coder profiles")
    return [p if isinstance(p, CoderProfile) else CoderProfile(p) for p in profiles]


def _draw_codes(rng, n_items, profiles, categories):
    # coder-major draws: column j consumes n_items doubles after column j-1
    return np.stack(
        [categorical(rng, _probs(p.marginals, categories), n_items) for p in profiles],
        axis=1,
    )


def simulate_coders(n_items: int, profiles: Sequence[CoderProfile], seed: int = 0) -> AnnotationMatrix:
    """Complete matrix whose cells are drawn independently per coder profile."""
    profiles = _check_panel(n_items, profiles)
    seed = check_seed(seed)
    categories = _categories(*(p.marginals for p in profiles))
    codes = _draw_codes(master_generator(seed), int(n_items), profiles, categories)
    items, coders = _ids(int(n_items), len(profiles))
    return AnnotationMatrix(items, coders, codes, categories)


def monte_carlo_pe(profiles: Sequence[CoderProfile], n_items: int, replicates: int = 50,
                   seed: int = 0) -> float:
    """Mean observed agreement of independent random coders.

    Replicate ``r`` is ``simulate_coders`` driven by stream ``r`` of ``seed``.
    """
    profiles = _check_panel(n_items, profiles)
    if replicates < 10:
        raise AgreementError(f"replicates must be at least 10, got {replicates}")
    seed = check_seed(seed)
    categories = _categories(*(p.marginals for p in profiles))
    k = len(categories)
    total = 0.0
    for r in range(replicates):
        codes = _draw_codes(replicate_generator(seed, r), int(n_items), profiles, categories)
        total += float(_observed_codes(codes, k))
    return total / replicates


def simulate_with_truth(n_items: int, truth_marginals: Mapping[str, float],
                        profiles: Sequence[CoderProfile], seed: int = 0) -> AnnotationMatrix:
    """Coders who echo a latent true label with probability ``accuracy``.

    Per item a true label is drawn from ``truth_marginals``; each coder
    reports it with its accuracy and otherwise guesses from its own
    marginals.
    """
    profiles = _check_panel(n_items, profiles)
    truth_marginals = _check_distribution(truth_marginals, "truth")
    for j, p in enumerate(profiles):
        if p.accuracy is None:
            raise AgreementError(f"profile {j + 1} has no accuracy")
    seed = check_seed(seed)
    n_items = int(n_items)
    categories = _categories(truth_marginals, *(p.marginals for p in profiles))
    rng = master_generator(seed)
    truth = categorical(rng, _probs(truth_marginals, categories), n_items)
    cols = []
    for p in profiles:
        echo = rng.random(n_items) < p.accuracy
        guess = categorical(rng, _probs(p.marginals, categories), n_items)
        cols.append(np.where(echo, truth, guess))
    items, coders = _ids(n_items, len(profiles))
    return AnnotationMatrix(items, coders, np.stack(cols, axis=1), categories)
