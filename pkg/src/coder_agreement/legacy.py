"""Raw percent-agreement measures that ignore chance agreement.

These are kept so their behaviour can be compared against kappa: none of
them corrects for the agreement coders would reach by guessing.
"""

from __future__ import annotations

from typing import AbstractSet

import numpy as np

from .exceptions import AgreementError
from .model import AnnotationMatrix
from .results import MeasureResult


def boundary_ratio(expert_marks: AbstractSet[int], naive_marks: AbstractSet[int]) -> MeasureResult:
    """Sites both coders marked over sites either coder marked."""
    expert_marks, naive_marks = set(expert_marks), set(naive_marks)
    union = expert_marks | naive_marks
    if not union:
        raise AgreementError("ratio undefined: no boundaries marked")
    value = len(expert_marks & naive_marks) / len(union)
    return MeasureResult(
        "boundary-jaccard", value, n_items=len(union), n_coders=2, n_categories=2
    )


def agreeing_pairs(codes: np.ndarray, n_categories: int) -> np.ndarray:
    """Number of agreeing unordered coder pairs per item (missing cells ignored)."""
    counts = category_counts(codes, n_categories)
    return (counts * (counts - 1) / 2).sum(axis=-1)


def category_counts(codes: np.ndarray, n_categories: int) -> np.ndarray:
    """Per item, how many coders chose each category. Works on batches."""
    flat = codes.reshape(-1, codes.shape[-1])
    rows = np.arange(len(flat))[:, None] * n_categories + flat
    counts = np.bincount(rows[flat >= 0], minlength=len(flat) * n_categories)
    return counts.reshape(*codes.shape[:-1], n_categories).astype(float)


def percent_pairwise(matrix: AnnotationMatrix, coder_a: str, coder_b: str) -> MeasureResult:
    matrix.require_complete("pairwise percent agreement")
    a, b = matrix.coder_index(coder_a), matrix.coder_index(coder_b)
    if a == b:
        raise AgreementError("pairwise agreement needs two distinct coders")
    agree = matrix.codes[:, a] == matrix.codes[:, b]
    return MeasureResult(
        "percent-pair",
        float(agree.mean()),
        n_items=matrix.n_items,
        n_coders=2,
        n_categories=len(matrix.categories),
        observed_agreement=float(agree.mean()),
        coders=(coder_a, coder_b),
    )


def percent_all_pairs(matrix: AnnotationMatrix) -> MeasureResult:
    """Agreeing coder pairs over all possible pairs, pooled across items."""
    matrix.require_complete("all-pairs percent agreement")
    m = matrix.n_coders
    pairs = agreeing_pairs(matrix.codes, len(matrix.categories))
    value = float(pairs.sum() / (matrix.n_items * m * (m - 1) / 2))
    return MeasureResult(
        "percent-allpairs",
        value,
        n_items=matrix.n_items,
        n_coders=m,
        n_categories=len(matrix.categories),
        observed_agreement=value,
        coders=matrix.coders,
    )


def percent_majority(matrix: AnnotationMatrix) -> MeasureResult:
    """Agreement of each coder with the per-item majority label.

    Items with no strict majority are left out of both numerator and
    denominator; each exclusion is reported in ``warnings``.
    """
    matrix.require_complete("majority percent agreement")
    m = matrix.n_coders
    counts = category_counts(matrix.codes, len(matrix.categories))
    top = counts.max(axis=1)
    tied = (counts == top[:, None]).sum(axis=1) > 1
    if tied.all():
        raise AgreementError("majority undefined on every item")
    value = float(top[~tied].sum() / (m * (~tied).sum()))
    warnings = tuple(
        f"majority tie: item {item} excluded"
        for item, t in zip(matrix.items, tied) if t
    )
    return MeasureResult(
        "percent-majority",
        value,
        n_items=int((~tied).sum()),
        n_coders=m,
        n_categories=len(matrix.categories),
        coders=matrix.coders,
        warnings=warnings,
    )
