"""Odd-man-out analyses that locate where disagreement comes from.

Each report isolates one kind of subject (a coder, a coder pair, a
category) and lists its kappa next to the full-panel kappa.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .exceptions import AgreementError
from .legacy import category_counts
from .model import BOUNDARY_CATEGORIES, AnnotationMatrix, BoundaryTrack, CategorySet, to_boundary_matrix
from .results import DiagnosticReport, DiagnosticRow
from .stats import kappa


def _row(subject, value, baseline):
    return DiagnosticRow(subject, value, None if value is None else value - baseline)


def leave_one_coder_out(matrix: AnnotationMatrix) -> DiagnosticReport:
    """Kappa of the panel with each coder removed in turn."""
    matrix.require_complete("leave-one-coder-out")
    if matrix.n_coders < 3:
        raise AgreementError("leave-one-coder-out needs at least 3 coders")
    baseline = kappa(matrix).value
    rows, warnings = [], []
    for coder in matrix.coders:
        rest = [c for c in matrix.coders if c != coder]
        try:
            value = kappa(matrix.select_coders(rest)).value
        except AgreementError as exc:
            value = None
            warnings.append(f"without {coder}: {exc}")
        rows.append(_row(coder, value, baseline))
    return DiagnosticReport("loo", baseline, tuple(rows), tuple(warnings))


def pairwise_kappa_matrix(matrix: AnnotationMatrix) -> DiagnosticReport:
    """Two-coder kappa for every unordered coder pair, in input order."""
    matrix.require_complete("pairwise kappa")
    baseline = kappa(matrix).value
    rows, warnings = [], []
    for a, b in combinations(matrix.coders, 2):
        try:
            value = kappa(matrix.select_coders([a, b])).value
        except AgreementError as exc:
            value = None
            warnings.append(f"pair {a},{b}: {exc}")
        rows.append(_row(f"{a},{b}", value, baseline))
    return DiagnosticReport("pairs", baseline, tuple(rows), tuple(warnings))


def per_category_kappa(matrix: AnnotationMatrix) -> DiagnosticReport:
    """Kappa after collapsing to "this category versus the rest".

    Categories nobody used are skipped. A collapse with degenerate
    marginals gets ``value=None`` and a warning.
    """
    matrix.require_complete("per-category kappa")
    used = np.flatnonzero(np.bincount(matrix.codes.ravel(), minlength=len(matrix.categories)))
    if len(used) < 2:
        raise AgreementError("per-category kappa needs at least 2 categories in use")
    baseline = kappa(matrix).value
    binary = CategorySet(("other", "target"))
    rows, warnings = [], []
    for j in used:
        label = matrix.categories.labels[j]
        collapsed = matrix.with_codes((matrix.codes == j).astype(np.int64), binary)
        try:
            value = kappa(collapsed).value
        except AgreementError:
            value = None
            warnings.append(f"category {label}: kappa undefined after collapse")
        rows.append(_row(label, value, baseline))
    return DiagnosticReport("per-category", baseline, tuple(rows), tuple(warnings))


@dataclass(frozen=True)
class UnitProfile:
    item: str
    label: str
    count: int
    tied: bool = False
    strength: int | None = None


def unit_profile(matrix: AnnotationMatrix) -> list[UnitProfile]:
    """Modal label per item and how many coders chose it.

    Ties go to the label earliest in the category order and are flagged.
    For yes/no boundary matrices ``strength`` is the number of "yes" votes.
    """
    matrix.require_complete("unit profile")
    counts = category_counts(matrix.codes, len(matrix.categories)).astype(int)
    modal = counts.argmax(axis=1)
    top = counts.max(axis=1)
    tied = (counts == top[:, None]).sum(axis=1) > 1
    boundary = matrix.categories.labels == BOUNDARY_CATEGORIES.labels
    yes = BOUNDARY_CATEGORIES.index("yes")
    labels = matrix.categories.labels
    return [
        UnitProfile(
            item,
            labels[modal[i]],
            int(top[i]),
            bool(tied[i]),
            int(counts[i, yes]) if boundary else None,
        )
        for i, item in enumerate(matrix.items)
    ]


def unitization_sweep(track: BoundaryTrack, site_counts: Sequence[int]) -> list[tuple[int, float]]:
    """Kappa of the same boundary marks over site universes of different size."""
    if len(track.marks) < 2:
        raise AgreementError("need at least 2 coders")
    needed = track.max_index() + 1
    out = []
    for s in site_counts:
        if int(s) < max(needed, 1):
            raise AgreementError(f"invalid site count {s}: marks reach index {needed - 1}")
        out.append((int(s), kappa(to_boundary_matrix(track, int(s))).value))
    return out
