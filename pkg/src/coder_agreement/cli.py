"""Command-line interface: ``compute``, ``diagnose`` and ``simulate``.

Exit codes: 0 success, 1 data or validation error (a single ``error:``
line on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import stats
from .diagnostics import leave_one_coder_out, pairwise_kappa_matrix, per_category_kappa, unit_profile
from .exceptions import AgreementError
from .io import (
    ReportDocument,
    digest,
    parse_boundary_file,
    parse_long_csv,
    parse_wide_csv,
    to_long_csv,
)
from .legacy import boundary_ratio, percent_all_pairs, percent_majority, percent_pairwise
from .model import BOUNDARY_CATEGORIES, BoundaryTrack, to_boundary_matrix, with_numeric_categories
from .rng import check_seed
from .simulation import CoderProfile, simulate_coders, simulate_with_truth

MEASURES = (
    "kappa", "pi", "alpha-nominal", "alpha-interval", "alpha-ratio",
    "percent-pair", "percent-allpairs", "percent-majority", "boundary-jaccard",
)
REPORTS = ("loo", "pairs", "per-category", "units")


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise AgreementError(f"cannot read {path}: {exc.strerror}") from None


def _load(data, fmt):
    """Return ``(matrix_or_None, track_or_None)``."""
    if fmt == "long":
        return parse_long_csv(data), None
    if fmt == "wide":
        return parse_wide_csv(data), None
    track = parse_boundary_file(data)
    matrix = to_boundary_matrix(track) if track.site_count is not None and len(track.marks) >= 2 else None
    return matrix, track


def _require_matrix(matrix, track):
    if matrix is None:
        if track is not None and track.site_count is None:
            raise AgreementError("site count unknown (sites=?): only boundary-jaccard is available")
        raise AgreementError("need at least 2 coders")
    return matrix


def _track_from_matrix(matrix):
    if matrix.categories.labels != BOUNDARY_CATEGORIES.labels:
        raise AgreementError("boundary-jaccard needs boundary data or yes/no labels")
    matrix.require_complete("boundary-jaccard")
    yes = BOUNDARY_CATEGORIES.index("yes")
    marks = {c: frozenset(int(i) for i in (matrix.codes[:, j] == yes).nonzero()[0])
             for j, c in enumerate(matrix.coders)}
    return BoundaryTrack(marks, matrix.n_items)


def _boundary_results(track, expert):
    coders = track.coders
    if expert is None:
        if len(coders) != 2:
            raise AgreementError(f"boundary-jaccard with {len(coders)} coders needs --expert")
        expert = coders[0]
    if expert not in track.marks:
        raise AgreementError(f"unknown coder {expert!r}")
    results = []
    for naive in coders:
        if naive == expert:
            continue
        r = boundary_ratio(track.marks[expert], track.marks[naive])
        results.append(replace(r, coders=(expert, naive)))
    return results


def _compute(args, data):
    matrix, track = _load(data, args.format)
    if args.measure == "boundary-jaccard":
        if track is None:
            track = _track_from_matrix(matrix)
        return _boundary_results(track, args.expert)
    matrix = _require_matrix(matrix, track)
    if args.measure == "percent-pair":
        a, b = args.coder_a, args.coder_b
        if a is None or b is None:
            if matrix.n_coders != 2:
                raise AgreementError("percent-pair with more than 2 coders needs --coder-a and --coder-b")
            a, b = matrix.coders
        return [percent_pairwise(matrix, a, b)]
    if args.measure == "percent-allpairs":
        return [percent_all_pairs(matrix)]
    if args.measure == "percent-majority":
        return [percent_majority(matrix)]
    statistic = args.measure
    if statistic == "kappa" and args.expert is not None:
        statistic = "expert-kappa"
    if statistic in ("alpha-interval", "alpha-ratio"):
        matrix = with_numeric_categories(matrix)
    result = stats.measure(matrix, statistic, args.expert)
    if args.significance is not None:
        null = stats.significance(matrix, statistic, args.significance, args.seed, args.expert)
        result = replace(result, significance=null)
    return [result]


def _diagnose(args, data):
    matrix = _require_matrix(*_load(data, args.format))
    if args.report == "loo":
        return leave_one_coder_out(matrix)
    if args.report == "pairs":
        return pairwise_kappa_matrix(matrix)
    if args.report == "per-category":
        return per_category_kappa(matrix)
    return unit_profile(matrix)


def _parse_distribution(spec, what):
    dist = {}
    for part in spec.split(","):
        label, sep, prob = part.strip().rpartition(":")
        if not sep or not label:
            raise AgreementError(f"bad {what} entry {part!r}; expected LABEL:PROB")
        if label in dist:
            raise AgreementError(f"label {label!r} repeated in {what}")
        try:
            dist[label] = float(prob)
        except ValueError:
            raise AgreementError(f"bad probability {prob!r} in {what}") from None
    return dist


def parse_profiles(spec, accuracy=None):
    """``A:0.95,B:0.05;A:0.5,B:0.5`` -> one :class:`CoderProfile` per coder."""
    chunks = [c for c in spec.split(";") if c.strip()]
    return [CoderProfile(_parse_distribution(c, "profile"), accuracy) for c in chunks]


def _simulate(args):
    if args.truth is not None and args.accuracy is None:
        raise AgreementError("--truth needs --accuracy")
    if args.accuracy is not None and args.truth is None:
        raise AgreementError("--accuracy needs --truth")
    profiles = parse_profiles(args.profiles, args.accuracy)
    if args.truth is not None:
        truth = _parse_distribution(args.truth, "truth")
        return simulate_with_truth(args.items, truth, profiles, args.seed)
    return simulate_coders(args.items, profiles, args.seed)


def _seed(text):
    try:
        return check_seed(int(text, 10))
    except (ValueError, AgreementError):
        raise argparse.ArgumentTypeError(f"seed must be a decimal 64-bit unsigned integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coder-agreement", description="Inter-coder agreement statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="input file, or - for stdin")
        p.add_argument("--format", choices=("long", "wide", "boundary"), default="long")
        p.add_argument("--output", choices=("json", "text"), default="json")

    compute = sub.add_parser("compute", help="compute one agreement measure")
    add_input(compute)
    compute.add_argument("--measure", choices=MEASURES, required=True)
    compute.add_argument("--expert", help="expert coder (kappa becomes expert kappa)")
    compute.add_argument("--coder-a")
    compute.add_argument("--coder-b")
    compute.add_argument("--significance", type=int, metavar="N", help="permutation replicates")
    compute.add_argument("--seed", type=_seed, default=0)

    diagnose = sub.add_parser("diagnose", help="odd-man-out diagnostics")
    add_input(diagnose)
    diagnose.add_argument("--report", choices=REPORTS, required=True)

    simulate = sub.add_parser("simulate", help="emit random-coder annotations")
    simulate.add_argument("--items", type=int, required=True)
    simulate.add_argument("--profiles", required=True, help="A:0.95,B:0.05;A:0.5,B:0.5 (one per coder)")
    simulate.add_argument("--seed", type=_seed, default=0)
    simulate.add_argument("--truth", help="latent truth marginals, e.g. A:0.5,B:0.5")
    simulate.add_argument("--accuracy", type=float, help="probability each coder echoes the truth")
    simulate.add_argument("--emit", choices=("long",), default="long")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "simulate":
            sys.stdout.write(to_long_csv(_simulate(args)))
            return 0
        data = _read(args.input)
        if args.command == "compute":
            if args.significance is not None and args.measure.startswith(("percent", "boundary")):
                raise AgreementError(f"--significance is not available for {args.measure}")
            results = _compute(args, data)
            doc = ReportDocument(digest(data), results=results,
                                 warnings=[w for r in results for w in r.warnings])
        else:
            report = _diagnose(args, data)
            doc = ReportDocument(digest(data), diagnostics=[report],
                                 warnings=list(getattr(report, "warnings", ())))
        sys.stdout.write(doc.to_json() if args.output == "json" else doc.to_text())
        return 0
    except AgreementError as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=sys.stderr)
        return 1


run_cli = main


if __name__ == "__main__":
    sys.exit(main())
