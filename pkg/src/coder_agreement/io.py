"""Input parsers and report serialization.

Three input dialects are understood:

* long CSV, header ``item,coder,label``, one judgment per row;
* wide CSV, header ``item,<coder1>,<coder2>,...``, an empty field is a
  missing cell;
* boundary files, a first line ``sites=<S>`` (or ``sites=?``) followed by
  ``<coder>:<space-separated site indices>`` lines.

Reports are JSON with a fixed key order. Reals are rounded to 12
significant digits and then written in the shortest form that reads back
as the rounded value, so golden files are stable across runs and
platforms.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .diagnostics import UnitProfile
from .exceptions import AgreementError, InputFormatError
from .model import MISSING, AnnotationMatrix, BoundaryTrack, CategorySet, build_matrix
from .results import DiagnosticReport, MeasureResult, NullDistribution

SIGNIFICANT_DIGITS = 12


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"input is not valid UTF-8 ({exc.reason})") from None


def _rows(text: str):
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        for row in reader:
            if row:
                yield reader.line_num, row
    except csv.Error as exc:
        raise InputFormatError(str(exc), reader.line_num) from None


def parse_long_csv(data: bytes | str) -> AnnotationMatrix:
    rows = _rows(_decode(data))
    first = next(rows, None)
    if first is None or first[1] != ["item", "coder", "label"]:
        raise InputFormatError("header must be exactly 'item,coder,label'", 1 if first is None else first[0])
    records = []
    seen: dict[tuple[str, str], str] = {}
    for line, row in rows:
        if len(row) != 3:
            raise InputFormatError(f"expected 3 fields, got {len(row)}", line)
        item, coder, label = row
        prev = seen.setdefault((item, coder), label)
        if prev != label:
            raise InputFormatError(f"conflicting labels for ({item},{coder})", line)
        records.append((item, coder, label))
    if not records:
        raise InputFormatError("no annotation rows after the header", 1)
    return build_matrix(records)


def parse_wide_csv(data: bytes | str) -> AnnotationMatrix:
    rows = _rows(_decode(data))
    first = next(rows, None)
    if first is None or first[1][0] != "item" or len(first[1]) < 3:
        raise InputFormatError("header must be 'item,<coder1>,<coder2>,...'", 1)
    header_line, header = first
    coders = header[1:]
    if len(set(coders)) != len(coders):
        dup = next(c for c in coders if coders.count(c) > 1)
        raise InputFormatError(f"duplicate coder {dup!r} in header", header_line)
    items: list[str] = []
    seen_items: set[str] = set()
    rows_labels: list[list[str]] = []
    for line, row in rows:
        if len(row) != len(header):
            raise InputFormatError(f"expected {len(header)} fields, got {len(row)}", line)
        item = row[0]
        if item in seen_items:
            raise InputFormatError(f"duplicate item {item!r}", line)
        seen_items.add(item)
        if all(lab == "" for lab in row[1:]):
            raise InputFormatError(f"item {item!r} has no labels", line)
        items.append(item)
        rows_labels.append(row[1:])
    if not items:
        raise InputFormatError("no annotation rows after the header", header_line)
    categories = CategorySet(tuple(sorted({lab for r in rows_labels for lab in r if lab != ""})))
    codes = np.array(
        [[MISSING if lab == "" else categories.index(lab) for lab in r] for r in rows_labels],
        dtype=np.int64,
    )
    return AnnotationMatrix(tuple(items), tuple(coders), codes, categories)


def parse_boundary_file(data: bytes | str) -> BoundaryTrack:
    lines = _decode(data).splitlines()
    numbered = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not numbered or not numbered[0][1].startswith("sites="):
        raise InputFormatError("first line must be 'sites=<S>' or 'sites=?'", numbered[0][0] if numbered else 1)
    line, head = numbered[0]
    raw = head[len("sites="):].strip()
    if raw == "?":
        site_count = None
    else:
        if not raw.isdigit() or int(raw) < 1:
            raise InputFormatError(f"invalid site count {raw!r}", line)
        site_count = int(raw)
    marks: dict[str, frozenset[int]] = {}
    for line, text in numbered[1:]:
        coder, sep, rest = text.partition(":")
        coder = coder.strip()
        if not sep or not coder:
            raise InputFormatError("expected '<coder>:<site indices>'", line)
        if coder in marks:
            raise InputFormatError(f"duplicate coder {coder!r}", line)
        sites = set()
        for tok in rest.split():
            if not tok.isdigit():
                raise InputFormatError(f"non-numeric site index {tok!r}", line)
            idx = int(tok)
            if site_count is not None and idx >= site_count:
                raise InputFormatError(f"index {idx} >= sites {site_count}", line)
            sites.add(idx)
        marks[coder] = frozenset(sites)
    if not marks:
        raise InputFormatError("no coder lines", line)
    return BoundaryTrack(marks, site_count)


def to_long_csv(matrix: AnnotationMatrix) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["item", "coder", "label"])
    writer.writerows(matrix.records())
    return buf.getvalue()


def to_wide_csv(matrix: AnnotationMatrix) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["item", *matrix.coders])
    labels = matrix.categories.labels
    for item, row in zip(matrix.items, matrix.codes):
        writer.writerow([item, *("" if c == MISSING else labels[c] for c in row)])
    return buf.getvalue()


def to_boundary_file(track: BoundaryTrack) -> str:
    head = "sites=?" if track.site_count is None else f"sites={track.site_count}"
    lines = [head] + [
        f"{coder}:{' '.join(str(s) for s in sorted(sites))}" for coder, sites in track.marks.items()
    ]
    return "\n".join(lines) + "\n"


# -- reports ---------------------------------------------------------------

def format_real(x: float | None) -> float | None:
    """Round to 12 significant digits; ``repr`` of the result is the rendering."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        raise AgreementError(f"cannot render non-finite value {x!r}")
    rounded = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return rounded + 0.0  # folds -0.0 into 0.0


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def null_to_dict(null: NullDistribution) -> dict:
    return {
        "statistic": null.statistic,
        "seed": null.seed,
        "iterations": null.iterations,
        "observed": format_real(null.observed),
        "p_value": format_real(null.p_value),
    }


def result_to_dict(result: MeasureResult) -> dict:
    return {
        "measure": result.measure_id,
        "value": format_real(result.value),
        "observed_agreement": format_real(result.observed_agreement),
        "expected_agreement": format_real(result.expected_agreement),
        "observed_disagreement": format_real(result.observed_disagreement),
        "expected_disagreement": format_real(result.expected_disagreement),
        "n_items": result.n_items,
        "n_coders": result.n_coders,
        "n_categories": result.n_categories,
        "band": None if result.band is None else result.band.band.value,
        "coders": list(result.coders),
        "significance": None if result.significance is None else null_to_dict(result.significance),
    }


def diagnostic_to_dict(report: DiagnosticReport | Sequence[UnitProfile], kind: str | None = None) -> dict:
    if isinstance(report, DiagnosticReport):
        return {
            "kind": report.kind,
            "baseline": format_real(report.baseline),
            "rows": [
                {"subject": r.subject, "value": format_real(r.value), "delta": format_real(r.delta)}
                for r in report.rows
            ],
        }
    return {
        "kind": kind or "units",
        "baseline": None,
        "rows": [
            {"subject": u.item, "label": u.label, "count": u.count, "tied": u.tied, "strength": u.strength}
            for u in report
        ],
    }


@dataclass
class ReportDocument:
    input_digest: str
    results: list[MeasureResult] = field(default_factory=list)
    diagnostics: list | None = None
    warnings: list[str] = field(default_factory=list)
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
            "results": [result_to_dict(r) for r in self.results],
            "diagnostics": None if self.diagnostics is None else [diagnostic_to_dict(d) for d in self.diagnostics],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        doc = self.to_dict()
        out = [f"tool_version: {doc['tool_version']}", f"input_digest: {doc['input_digest']}"]
        for r in doc["results"]:
            parts = [f"{r['measure']}: value={r['value']!r}"]
            for key, name in [
                ("observed_agreement", "P(A)"),
                ("expected_agreement", "P(E)"),
                ("observed_disagreement", "D_o"),
                ("expected_disagreement", "D_e"),
            ]:
                if r[key] is not None:
                    parts.append(f"{name}={r[key]!r}")
            parts.append(f"items={r['n_items']} coders={r['n_coders']} categories={r['n_categories']}")
            if r["band"] is not None:
                parts.append(f"band={r['band']}")
            if r["coders"]:
                parts.append("over=" + ",".join(r["coders"]))
            out.append("  ".join(parts))
            sig = r["significance"]
            if sig is not None:
                out.append(
                    f"  significance: p={sig['p_value']!r} iterations={sig['iterations']} seed={sig['seed']}"
                )
        for d in doc["diagnostics"] or []:
            head = f"{d['kind']}:"
            if d["baseline"] is not None:
                head += f" baseline={d['baseline']!r}"
            out.append(head)
            for row in d["rows"]:
                if "delta" in row:
                    value = "undefined" if row["value"] is None else repr(row["value"])
                    delta = "" if row["delta"] is None else f" delta={row['delta']!r}"
                    out.append(f"  {row['subject']}: {value}{delta}")
                else:
                    line = f"  {row['subject']}: {row['label']} x{row['count']}"
                    if row["tied"]:
                        line += " (tie)"
                    if row["strength"] is not None:
                        line += f" strength={row['strength']}"
                    out.append(line)
        for w in doc["warnings"]:
            out.append(f"warning: {w}")
        return "\n".join(out) + "\n"


def collect_warnings(items: Iterable) -> list[str]:
    out = []
    for obj in items:
        out.extend(getattr(obj, "warnings", ()))
    return out
