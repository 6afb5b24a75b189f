"""Seeded random streams.

Every random draw in the package comes from numpy's PCG64 bit generator
seeded through :class:`numpy.random.SeedSequence`. Stream ``i`` of master
seed ``s`` is ``SeedSequence(s, spawn_key=(i,))``, i.e. the ``i``-th child
``SeedSequence(s).spawn`` would hand out, so replicate ``i`` is identical no
matter how many replicates run or in which order. Only ``Generator.random``
(53-bit uniform doubles) is used; categorical draws and permutations are
built on top of it so results do not depend on numpy's higher-level
sampling routines.
"""

from __future__ import annotations

import numpy as np

from .exceptions import AgreementError

MAX_SEED = 2**64 - 1


def check_seed(seed) -> int:
    try:
        seed = int(seed)
    except (TypeError, ValueError):
        raise AgreementError(f"seed must be an integer, got {seed!r}") from None
    if not 0 <= seed <= MAX_SEED:
        raise AgreementError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def replicate_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def master_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def categorical(rng: np.random.Generator, probabilities: np.ndarray, size: int) -> np.ndarray:
    """Inverse-CDF categorical draws from one uniform double per sample."""
    cdf = np.cumsum(probabilities)
    u = rng.random(size) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
