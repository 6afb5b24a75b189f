"""Input validation helpers for array-like annotation data."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import AgreementError
from .model import MISSING, AnnotationMatrix, CategorySet, with_numeric_categories


def _is_missing(value) -> bool:
    if value is None:
        return True
    if isinstance(value, str):
        return value == ""
    if isinstance(value, numbers.Real):
        return bool(np.isnan(value))
    return False


def _as_label(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return format(float(value), "g")
    return str(value)


def check_annotations(X, *, items=None, coders=None, categories: CategorySet | None = None,
                      numeric: bool = False) -> AnnotationMatrix:
    """Coerce ``X`` into an :class:`AnnotationMatrix`.

    Parameters
    ----------
    X : AnnotationMatrix, DataFrame or array-like of shape (n_items, n_coders)
        Labels per item (rows) and coder (columns). ``None``, NaN and the
        empty string mark missing cells. A DataFrame contributes its index
        as item ids and its columns as coder ids.
    items, coders : sequence of str, optional
        Identifiers overriding the defaults ``u1..uN`` and ``c1..cm``.
    categories : CategorySet, optional
        Vocabulary to validate against; inferred (sorted) when omitted.
    numeric : bool
        Parse labels as numbers so interval and ratio metrics apply.

    Returns
    -------
    AnnotationMatrix
    """
    if isinstance(X, AnnotationMatrix):
        matrix = X
    else:
        if hasattr(X, "columns") and hasattr(X, "index") and hasattr(X, "to_numpy"):
            items = items if items is not None else [str(i) for i in X.index]
            coders = coders if coders is not None else [str(c) for c in X.columns]
            X = X.to_numpy(dtype=object)
        arr = np.asarray(X, dtype=object)
        if arr.ndim != 2:
            raise AgreementError(f"expected a 2-d array of shape (n_items, n_coders), got ndim={arr.ndim}")
        n, m = arr.shape
        items = [f"u{i + 1}" for i in range(n)] if items is None else [str(i) for i in items]
        coders = [f"c{j + 1}" for j in range(m)] if coders is None else [str(c) for c in coders]
        if len(items) != n or len(coders) != m:
            raise AgreementError(f"got {len(items)} item ids and {len(coders)} coder ids for shape {arr.shape}")
        labels = [[None if _is_missing(v) else _as_label(v) for v in row] for row in arr]
        if categories is None:
            categories = CategorySet(tuple(sorted({lab for row in labels for lab in row if lab is not None})))
        codes = np.array(
            [[MISSING if lab is None else categories.index(lab) for lab in row] for row in labels],
            dtype=np.int64,
        ).reshape(n, m)
        matrix = AnnotationMatrix(items, coders, codes, categories)
    if categories is not None and matrix.categories != categories:
        unknown = set(matrix.categories.labels) - set(categories.labels)
        if unknown:
            raise AgreementError(f"labels {sorted(unknown)} are not in the category set")
    if numeric:
        matrix = with_numeric_categories(matrix)
    return matrix
