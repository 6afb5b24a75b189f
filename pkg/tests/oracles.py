"""Brute-force reference computations used as test oracles.

Everything here works on plain lists of labels with exact ``Fraction``
arithmetic and enumerates coder pairs explicitly, so it shares no code
path with the numpy implementation under test.
"""

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations


def pair_agreement(rows):
    """Mean over items of agreeing unordered coder pairs / all pairs."""
    total = Fraction(0)
    for row in rows:
        pairs = list(combinations(row, 2))
        total += Fraction(sum(a == b for a, b in pairs), len(pairs))
    return total / len(rows)


def pooled_chance(rows):
    counts = Counter(lab for row in rows for lab in row)
    n = sum(counts.values())
    return sum(Fraction(c, n) ** 2 for c in counts.values())


def kappa(rows):
    pa, pe = pair_agreement(rows), pooled_chance(rows)
    return (pa - pe) / (1 - pe)


def cohen_from_table(table):
    """Two-coder kappa from a confusion table {(label_a, label_b): count}."""
    n = sum(table.values())
    pa = Fraction(sum(c for (a, b), c in table.items() if a == b), n)
    row, col = Counter(), Counter()
    for (a, b), c in table.items():
        row[a] += c
        col[b] += c
    pe = sum(Fraction(row[k], n) * Fraction(col[k], n) for k in set(row) | set(col))
    return (pa - pe) / (1 - pe)


def expert_kappa(rows, expert):
    naive_pairs = [(row[expert], lab) for row in rows for j, lab in enumerate(row) if j != expert]
    pa = Fraction(sum(e == v for e, v in naive_pairs), len(naive_pairs))
    ec = Counter(row[expert] for row in rows)
    nc = Counter(v for _, v in naive_pairs)
    pe = sum(Fraction(ec[k], len(rows)) * Fraction(nc[k], len(naive_pairs)) for k in set(ec) | set(nc))
    return (pa - pe) / (1 - pe)


def nominal(a, b):
    return 0 if a == b else 1


def alpha(rows, delta=nominal):
    """Krippendorff's alpha by enumerating ordered value pairs.

    ``rows`` may contain ``None`` for missing cells.
    """
    units = [[v for v in row if v is not None] for row in rows]
    units = [u for u in units if len(u) >= 2]
    values = [v for u in units for v in u]
    n = len(values)
    d_o = Fraction(0)
    for u in units:
        s = sum(Fraction(delta(a, b)) for a, b in permutations(u, 2))
        d_o += s / (len(u) - 1)
    d_o /= n
    d_e = sum(Fraction(delta(a, b)) for a, b in permutations(values, 2)) / (n * (n - 1))
    return 1 - d_o / d_e, d_o, d_e


def majority_percent(rows):
    hits = possible = 0
    for row in rows:
        counts = Counter(row).most_common()
        if len(counts) > 1 and counts[0][1] == counts[1][1]:
            continue
        hits += counts[0][1]
        possible += len(row)
    return Fraction(hits, possible)
