"""Annotation data model shared by every agreement measure.

An :class:`AnnotationMatrix` is an items x coders table of category labels
in which cells may be missing. Internally the labels are stored as integer
codes into the matrix's :class:`CategorySet` (``-1`` marks a missing cell),
which is what the statistics operate on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import AgreementError

MISSING = -1


@dataclass(frozen=True)
class CategorySet:
    """Ordered label vocabulary, optionally carrying numeric values."""

    labels: tuple[str, ...]
    numeric_values: Mapping[str, float] | None = None

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise AgreementError("category set must contain at least one label")
        if len(set(labels)) != len(labels):
            raise AgreementError("category labels must be pairwise distinct")
        if self.numeric_values is not None:
            values = dict(self.numeric_values)
            if set(values) != set(labels):
                missing = sorted(set(labels) - set(values))
                extra = sorted(set(values) - set(labels))
                raise AgreementError(
                    f"numeric values must cover every label exactly "
                    f"(missing={missing}, unknown={extra})"
                )
            object.__setattr__(
                self, "numeric_values", {k: float(values[k]) for k in labels}
            )

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise AgreementError(f"label {label!r} is not in the category set") from None

    def values_array(self) -> np.ndarray:
        if self.numeric_values is None:
            raise AgreementError("category set carries no numeric values")
        return np.array([self.numeric_values[label] for label in self.labels], dtype=float)

    @classmethod
    def from_numeric(cls, labels: Iterable[str]) -> "CategorySet":
        """Build a category set whose labels parse as numbers.

        Labels are ordered by their numeric value.
        """
        labels = list(labels)
        try:
            values = {label: float(label) for label in labels}
        except ValueError as exc:
            raise AgreementError(f"label is not numeric: {exc}") from None
        ordered = sorted(labels, key=lambda lab: (values[lab], lab))
        return cls(tuple(ordered), values)


@dataclass(frozen=True, eq=False)
class AnnotationMatrix:
    """Items x coders table of labels drawn from ``categories``.

    ``codes[i, j]`` is the index of coder ``j``'s label for item ``i`` in
    ``categories.labels``, or ``MISSING``.
    """

    items: tuple[str, ...]
    coders: tuple[str, ...]
    codes: np.ndarray
    categories: CategorySet

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "coders", tuple(self.coders))
        codes = np.array(self.codes, dtype=np.int64, copy=True)
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        n, m = len(self.items), len(self.coders)
        if m < 2:
            raise AgreementError(f"need at least 2 coders, got {m}")
        if n < 1:
            raise AgreementError("need at least 1 item")
        if len(set(self.items)) != n:
            raise AgreementError("item identifiers must be distinct")
        if len(set(self.coders)) != m:
            raise AgreementError("coder identifiers must be distinct")
        if codes.shape != (n, m):
            raise AgreementError(f"codes shape {codes.shape} does not match ({n}, {m})")
        if ((codes < MISSING) | (codes >= len(self.categories))).any():
            raise AgreementError("codes reference labels outside the category set")
        empty = np.flatnonzero((codes == MISSING).all(axis=1))
        if empty.size:
            raise AgreementError(f"item {self.items[empty[0]]!r} has no labels")

    @property
    def n_items(self) -> int:
        return len(self.items)

    @property
    def n_coders(self) -> int:
        return len(self.coders)

    def complete(self) -> bool:
        return bool((self.codes != MISSING).all())

    def label(self, item: str, coder: str) -> str | None:
        code = self.codes[self.items.index(item), self.coder_index(coder)]
        return None if code == MISSING else self.categories.labels[code]

    def coder_index(self, coder: str) -> int:
        try:
            return self.coders.index(coder)
        except ValueError:
            raise AgreementError(f"unknown coder {coder!r}") from None

    def records(self) -> list[tuple[str, str, str]]:
        """Flatten to ``(item, coder, label)`` records, item-major."""
        labels = self.categories.labels
        return [
            (item, coder, labels[self.codes[i, j]])
            for i, item in enumerate(self.items)
            for j, coder in enumerate(self.coders)
            if self.codes[i, j] != MISSING
        ]

    def select_coders(self, coders: Sequence[str]) -> "AnnotationMatrix":
        """Submatrix over ``coders``; items left without labels are dropped."""
        cols = [self.coder_index(c) for c in coders]
        codes = self.codes[:, cols]
        keep = (codes != MISSING).any(axis=1)
        items = [it for it, k in zip(self.items, keep) if k]
        return AnnotationMatrix(items, tuple(coders), codes[keep], self.categories)

    def with_codes(self, codes: np.ndarray, categories: CategorySet | None = None):
        return AnnotationMatrix(
            self.items, self.coders, codes, categories or self.categories
        )

    def require_complete(self, what: str = "this measure"):
        if not self.complete():
            missing = int((self.codes == MISSING).sum())
            raise AgreementError(
                f"{what} requires a complete matrix ({missing} missing cells)"
            )

    def __eq__(self, other):
        if not isinstance(other, AnnotationMatrix):
            return NotImplemented
        return (
            self.items == other.items
            and self.coders == other.coders
            and self.categories == other.categories
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((self.items, self.coders, self.categories.labels, self.codes.tobytes()))

    def __repr__(self):
        return (
            f"AnnotationMatrix(n_items={self.n_items}, coders={list(self.coders)}, "
            f"categories={list(self.categories.labels)}, complete={self.complete()})"
        )


@dataclass(frozen=True)
class BoundaryTrack:
    """Per-coder sets of marked boundary sites.

    ``site_count`` is the size of the site universe when known.
    """

    marks: Mapping[str, frozenset[int]]
    site_count: int | None = None

    def __post_init__(self):
        marks = {str(c): frozenset(int(s) for s in sites) for c, sites in self.marks.items()}
        object.__setattr__(self, "marks", marks)
        for coder, sites in marks.items():
            if any(s < 0 for s in sites):
                raise AgreementError(f"negative site index for coder {coder!r}")
        if self.site_count is not None:
            if self.site_count < 1:
                raise AgreementError("site count must be positive")
            for coder, sites in marks.items():
                bad = [s for s in sites if s >= self.site_count]
                if bad:
                    raise AgreementError(
                        f"index {min(bad)} >= sites {self.site_count} for coder {coder!r}"
                    )

    @property
    def coders(self) -> tuple[str, ...]:
        return tuple(self.marks)

    def max_index(self) -> int:
        return max((max(s) for s in self.marks.values() if s), default=-1)


def build_matrix(records: Iterable[tuple[str, str, str]],
                 categories: CategorySet | None = None) -> AnnotationMatrix:
    """Assemble an :class:`AnnotationMatrix` from ``(item, coder, label)`` records.

    Items and coders keep their order of first appearance. When
    ``categories`` is omitted it is inferred from the observed labels,
    sorted lexicographically.
    """
    records = [tuple(r) for r in records]
    if not records:
        raise AgreementError("no annotation records")
    items: dict[str, int] = {}
    coders: dict[str, int] = {}
    cells: dict[tuple[int, int], str] = {}
    for rec in records:
        if len(rec) != 3:
            raise AgreementError(f"record {rec!r} must have 3 fields")
        item, coder, label = rec
        i = items.setdefault(item, len(items))
        j = coders.setdefault(coder, len(coders))
        prev = cells.get((i, j))
        if prev is not None and prev != label:
            raise AgreementError(f"conflicting labels for ({item},{coder})")
        if categories is not None and label not in categories:
            raise AgreementError(f"label {label!r} is not in the category set")
        cells[(i, j)] = label
    if categories is None:
        categories = CategorySet(tuple(sorted(set(cells.values()))))
    index = categories._index
    codes = np.full((len(items), len(coders)), MISSING, dtype=np.int64)
    for (i, j), label in cells.items():
        codes[i, j] = index[label]
    return AnnotationMatrix(tuple(items), tuple(coders), codes, categories)


def label_counts(matrix: AnnotationMatrix) -> np.ndarray:
    """Count of present cells per category, in category order."""
    present = matrix.codes[matrix.codes != MISSING]
    return np.bincount(present, minlength=len(matrix.categories)).astype(float)


def pooled_proportions(matrix: AnnotationMatrix) -> dict[str, float]:
    """Share of present cells carrying each label.

    Every label of the category set appears in the result, unused ones with
    proportion 0.
    """
    counts = label_counts(matrix)
    total = counts.sum()
    return {label: float(c / total) for label, c in zip(matrix.categories.labels, counts)}


BOUNDARY_CATEGORIES = CategorySet(("no", "yes"))


def to_boundary_matrix(track: BoundaryTrack, site_count: int | None = None) -> AnnotationMatrix:
    """Recode boundary marks as a complete yes/no matrix, one item per site."""
    if site_count is None:
        site_count = track.site_count
    if site_count is None:
        raise AgreementError("site count unknown; only the boundary ratio is available")
    if site_count < 1:
        raise AgreementError(f"invalid site count {site_count}")
    if len(track.marks) < 2:
        raise AgreementError("need at least 2 coders")
    codes = np.zeros((site_count, len(track.marks)), dtype=np.int64)
    for j, (coder, sites) in enumerate(track.marks.items()):
        for s in sites:
            if s >= site_count:
                raise AgreementError(
                    f"index {s} >= sites {site_count} for coder {coder!r}"
                )
            codes[s, j] = 1
    items = tuple(str(s) for s in range(site_count))
    return AnnotationMatrix(items, track.coders, codes, BOUNDARY_CATEGORIES)


def with_numeric_categories(matrix: AnnotationMatrix) -> AnnotationMatrix:
    """Re-encode a matrix whose labels are numbers so its categories carry values."""
    if matrix.categories.numeric_values is not None:
        return matrix
    numeric = CategorySet.from_numeric(matrix.categories.labels)
    remap = np.array([numeric.index(lab) for lab in matrix.categories.labels] + [MISSING])
    return matrix.with_codes(remap[matrix.codes], numeric)
