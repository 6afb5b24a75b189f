"""Chance-corrected agreement: kappa, Scott's pi, Krippendorff's alpha.

The batch helpers (``_*_codes``) take integer code arrays of shape
``(..., n_items, n_coders)`` so that the permutation test can evaluate
thousands of replicates in one numpy pass; the public functions wrap them
for a single :class:`~coder_agreement.model.AnnotationMatrix`.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .exceptions import AgreementError
from .legacy import category_counts
from .model import MISSING, AnnotationMatrix, CategorySet, label_counts
from .results import MeasureResult, NullDistribution, band_for
from .rng import MAX_SEED, check_seed, replicate_generator

UNDEFINED_TOL = 1e-12


class DistanceMetric(str, Enum):
    NOMINAL = "nominal"
    INTERVAL = "interval"
    RATIO = "ratio"


def distance_matrix(categories: CategorySet, metric: DistanceMetric | str) -> np.ndarray:
    """Pairwise label distances; ``nan`` where the ratio metric is undefined."""
    metric = DistanceMetric(metric)
    k = len(categories)
    if metric is DistanceMetric.NOMINAL:
        return 1.0 - np.eye(k)
    v = categories.values_array()
    diff = v[:, None] - v[None, :]
    if metric is DistanceMetric.INTERVAL:
        return diff**2
    total = v[:, None] + v[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = (diff / total) ** 2
    delta[~np.isfinite(delta)] = np.nan
    delta[np.eye(k, dtype=bool)] = 0.0
    return delta


# -- batch kernels ---------------------------------------------------------

def _observed_codes(codes, k):
    m = codes.shape[-1]
    counts = category_counts(codes, k)
    per_item = (counts * (counts - 1)).sum(axis=-1) / (m * (m - 1))
    return per_item.mean(axis=-1)


def _expected_codes(codes, k):
    counts = category_counts(codes, k).sum(axis=-2)
    p = counts / counts.sum(axis=-1, keepdims=True)
    return (p**2).sum(axis=-1)


def _corrected(pa, pe):
    pa, pe = np.asarray(pa, dtype=float), np.asarray(pe, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = (pa - pe) / (1.0 - pe)
    return np.where(pe >= 1.0 - UNDEFINED_TOL, np.nan, value)


def _kappa_codes(codes, k):
    return _corrected(_observed_codes(codes, k), _expected_codes(codes, k))


def _expert_parts(codes, k, expert):
    naive = np.delete(codes, expert, axis=-1)
    exp_col = codes[..., expert]
    pa = (naive == exp_col[..., None]).mean(axis=(-2, -1))
    q = category_counts(exp_col[..., None], k).sum(axis=-2)
    q = q / q.sum(axis=-1, keepdims=True)
    r = category_counts(naive, k).sum(axis=-2)
    r = r / r.sum(axis=-1, keepdims=True)
    pe = (q * r).sum(axis=-1)
    return pa, pe


def _expert_codes(codes, k, expert):
    return _corrected(*_expert_parts(codes, k, expert))


def _alpha_parts(codes, delta):
    """Return ``(D_o, D_e, n, included)`` for (batches of) code arrays."""
    k = delta.shape[0]
    counts = category_counts(codes, k)
    m_u = counts.sum(axis=-1)
    included = m_u >= 2
    counts = np.where(included[..., None], counts, 0.0)
    n = counts.sum(axis=(-2, -1))
    weight = np.where(included, 1.0 / np.maximum(m_u - 1, 1.0), 0.0)
    # coincidences: o[c, c'] = sum_u n_uc (n_uc' - [c == c']) / (m_u - 1)
    coinc = np.einsum("...u,...uc,...ud->...cd", weight, counts, counts)
    diag = np.einsum("...u,...uc->...c", weight, counts)
    coinc = coinc - diag[..., :, None] * np.eye(k)
    n_c = coinc.sum(axis=-1)
    delta0 = np.nan_to_num(delta, nan=0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        d_o = (coinc * delta0).sum(axis=(-2, -1)) / n
        d_e = np.einsum("...c,...d,cd->...", n_c, n_c, delta0) / (n * (n - 1))
    return d_o, d_e, n, included


def _alpha_codes(codes, delta):
    d_o, d_e, n, _ = _alpha_parts(codes, delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = 1.0 - d_o / d_e
    return np.where((n >= 2) & (d_e > UNDEFINED_TOL), value, np.nan)


# -- public measures -------------------------------------------------------

def observed_agreement(matrix: AnnotationMatrix) -> float:
    """Mean over items of the share of coder pairs that agree."""
    matrix.require_complete("observed agreement")
    return float(_observed_codes(matrix.codes, len(matrix.categories)))


def expected_agreement(matrix: AnnotationMatrix) -> float:
    """Chance agreement: the sum of squared pooled label proportions."""
    counts = label_counts(matrix)
    p = counts / counts.sum()
    return float((p**2).sum())


def _chance_result(measure_id, pa, pe, matrix, coders=None):
    if pe >= 1.0 - UNDEFINED_TOL:
        raise AgreementError(f"{measure_id} undefined: degenerate marginals")
    value = float((pa - pe) / (1.0 - pe))
    return MeasureResult(
        measure_id,
        value,
        n_items=matrix.n_items,
        n_coders=matrix.n_coders,
        n_categories=len(matrix.categories),
        observed_agreement=float(pa),
        expected_agreement=float(pe),
        band=band_for(value),
        coders=tuple(coders if coders is not None else matrix.coders),
    )


def kappa(matrix: AnnotationMatrix) -> MeasureResult:
    """Multi-coder kappa with pooled marginals.

    P(A) is the mean share of agreeing coder pairs per item and P(E) the
    sum of squared pooled label proportions.
    """
    pa = observed_agreement(matrix)
    pe = expected_agreement(matrix)
    return _chance_result("kappa", pa, pe, matrix)


def scotts_pi(matrix: AnnotationMatrix) -> MeasureResult:
    if matrix.n_coders != 2:
        raise AgreementError(f"Scott's pi needs exactly 2 coders, got {matrix.n_coders}")
    pa = observed_agreement(matrix)
    pe = expected_agreement(matrix)
    return _chance_result("pi", pa, pe, matrix)


def krippendorff_alpha(matrix: AnnotationMatrix,
                       metric: DistanceMetric | str = DistanceMetric.NOMINAL) -> MeasureResult:
    """Krippendorff's alpha, ``1 - D_o / D_e``, tolerating missing cells.

    Items with fewer than two labels are pairable with nothing and are left
    out (and named in ``warnings``). Interval and ratio metrics read label
    values from ``matrix.categories.numeric_values``.
    """
    metric = DistanceMetric(metric)
    delta = distance_matrix(matrix.categories, metric)
    d_o, d_e, n, included = _alpha_parts(matrix.codes, delta)
    if n < 2:
        raise AgreementError("alpha undefined: fewer than 2 pairable labels")
    used = np.flatnonzero(_included_only(matrix, included))
    if np.isnan(delta[np.ix_(used, used)]).any():
        raise AgreementError("ratio metric undefined: two labels have values summing to 0")
    if d_e <= UNDEFINED_TOL:
        raise AgreementError("alpha undefined: no expected disagreement")
    value = float(1.0 - d_o / d_e)
    warnings = tuple(
        f"alpha: item {item} has fewer than 2 labels and was excluded"
        for item, inc in zip(matrix.items, included) if not inc
    )
    return MeasureResult(
        f"alpha-{metric.value}",
        value,
        n_items=int(included.sum()),
        n_coders=matrix.n_coders,
        n_categories=len(matrix.categories),
        observed_disagreement=float(d_o),
        expected_disagreement=float(d_e),
        band=band_for(value),
        coders=matrix.coders,
        warnings=warnings,
    )


def _included_only(matrix, included):
    codes = matrix.codes[included]
    return np.bincount(codes[codes != MISSING], minlength=len(matrix.categories))


def expert_kappa(matrix: AnnotationMatrix, expert: str) -> MeasureResult:
    """Kappa restricted to naive-versus-expert pairings.

    P(A) is how often naive coders match the expert; P(E) pairs the
    expert's own label distribution with the pooled naive distribution.
    """
    matrix.require_complete("expert kappa")
    e = matrix.coder_index(expert)
    pa, pe = _expert_parts(matrix.codes, len(matrix.categories), e)
    naive = tuple(c for c in matrix.coders if c != expert)
    return _chance_result("expert-kappa", float(pa), float(pe), matrix, (expert,) + naive)


# -- significance ----------------------------------------------------------

CHANCE_MEASURES = ("kappa", "pi", "alpha-nominal", "alpha-interval", "alpha-ratio", "expert-kappa")


def measure(matrix: AnnotationMatrix, statistic: str, expert: str | None = None) -> MeasureResult:
    """Dispatch a chance-corrected statistic by its identifier."""
    if statistic == "kappa":
        return kappa(matrix)
    if statistic == "pi":
        return scotts_pi(matrix)
    if statistic.startswith("alpha-"):
        return krippendorff_alpha(matrix, statistic[len("alpha-"):])
    if statistic == "expert-kappa":
        if expert is None:
            raise AgreementError("expert-kappa needs an expert coder")
        return expert_kappa(matrix, expert)
    raise AgreementError(f"unknown chance-corrected statistic {statistic!r}")


def _batch_kernel(matrix, statistic, expert):
    k = len(matrix.categories)
    if statistic in ("kappa", "pi"):
        return lambda codes: _kappa_codes(codes, k)
    if statistic == "expert-kappa":
        e = matrix.coder_index(expert)
        return lambda codes: _expert_codes(codes, k, e)
    delta = distance_matrix(matrix.categories, statistic[len("alpha-"):])
    return lambda codes: _alpha_codes(codes, delta)


def permuted_codes(codes: np.ndarray, seed: int, start: int, stop: int) -> np.ndarray:
    """Column-permuted copies of ``codes`` for replicates ``start..stop-1``.

    Replicate ``i`` draws an ``n_coders x n_items`` block of uniform doubles
    from :func:`~coder_agreement.rng.replicate_generator` and permutes each
    coder's column by the stable argsort of its row.
    """
    n, m = codes.shape
    out = np.empty((stop - start, n, m), dtype=codes.dtype)
    cols = np.arange(m)
    for b, i in enumerate(range(start, stop)):
        keys = replicate_generator(seed, i).random((m, n))
        order = np.argsort(keys, axis=1, kind="stable")
        out[b] = codes[order.T, cols]
    return out


def significance(matrix: AnnotationMatrix, statistic: str = "kappa",
                 iterations: int = 1000, seed: int = 0,
                 expert: str | None = None) -> NullDistribution:
    """Permutation test of a chance-corrected statistic against chance.

    Each coder's column is shuffled independently, which keeps every
    coder's label distribution and destroys item alignment. Replicates on
    which the statistic is undefined are discarded and replaced by further
    ones, up to ``10 * iterations`` attempts in total.
    """
    if statistic not in CHANCE_MEASURES:
        raise AgreementError(f"significance needs a chance-corrected statistic, got {statistic!r}")
    if iterations < 100:
        raise AgreementError(f"iterations must be at least 100, got {iterations}")
    seed = check_seed(seed)
    observed = measure(matrix, statistic, expert).value
    kernel = _batch_kernel(matrix, statistic, expert)

    kept: list[np.ndarray] = []
    n_kept = 0
    attempt = 0
    cap = 10 * iterations
    while n_kept < iterations:
        if attempt >= cap:
            raise AgreementError(
                f"{statistic} undefined on too many permuted replicates "
                f"({n_kept} of {iterations} after {cap} attempts)"
            )
        stop = min(attempt + min(iterations - n_kept, 2048), cap)
        values = kernel(permuted_codes(matrix.codes, seed, attempt, stop))
        values = values[np.isfinite(values)][: iterations - n_kept]
        kept.append(values)
        n_kept += len(values)
        attempt = stop
    return NullDistribution.from_samples(np.concatenate(kept), observed, seed, statistic)


__all__ = [
    "CHANCE_MEASURES",
    "DistanceMetric",
    "MAX_SEED",
    "distance_matrix",
    "expected_agreement",
    "expert_kappa",
    "kappa",
    "krippendorff_alpha",
    "measure",
    "observed_agreement",
    "permuted_codes",
    "scotts_pi",
    "significance",
]
