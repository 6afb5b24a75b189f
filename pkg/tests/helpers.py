"""Shared fixtures data and matrix builders for the tests."""

from pathlib import Path

from coder_agreement import build_matrix

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

# PASS/FAIL lines from the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []

# M1: 2 coders, 4 items; items u1, u3, u4 agree.
#   pooled A=5, B=3 of 8 -> P(E) = 25/64 + 9/64 = 34/64 = 0.53125
#   kappa = (0.75 - 0.53125) / 0.46875 = 7/15
#   alpha: D_o = 2/8, D_e = 2*5*3/(8*7) = 30/56 -> 1 - 14/30 = 8/15
M1_ROWS = [["A", "A"], ["A", "B"], ["B", "B"], ["A", "A"]]

# M2: 3 coders, 3 items; agreeing pairs per item 3, 1, 3 -> P(A) = 7/9
#   pooled Y=5, N=4 of 9 -> P(E) = 41/81; kappa = (63 - 41)/40 = 0.55
#   majority matched by 3, 2, 3 of 3 coders -> 8/9
#   expert c1 vs c2 (3 hits) and c3 (2 hits): P(A) = 5/6;
#   expert marginals 2/3, 1/3 x naive 1/2, 1/2 -> P(E) = 1/2 -> 2/3
M2_ROWS = [["Y", "Y", "Y"], ["Y", "Y", "N"], ["N", "N", "N"]]


def from_rows(rows, coders=None):
    coders = coders or [f"c{j + 1}" for j in range(len(rows[0]))]
    return build_matrix(
        (f"u{i + 1}", c, lab)
        for i, row in enumerate(rows)
        for c, lab in zip(coders, row)
        if lab is not None
    )


def random_rows(rng, n_items, n_coders, n_labels):
    labels = [chr(ord("A") + k) for k in range(n_labels)]
    return [[labels[v] for v in row] for row in rng.integers(0, n_labels, size=(n_items, n_coders))]
