import math

from hypothesis import assume, given, settings, strategies as st

from coder_agreement import AgreementError, krippendorff_alpha, kappa, percent_all_pairs

from helpers import from_rows

panels = st.integers(2, 5).flatmap(
    lambda m: st.lists(st.lists(st.sampled_from("ABC"), min_size=m, max_size=m), min_size=2, max_size=12)
)


def _value(f, rows):
    try:
        return f(from_rows(rows)).value
    except AgreementError:
        return None


@settings(max_examples=200, derandomize=True)
@given(panels, st.randoms(use_true_random=False))
def test_invariant_under_item_and_coder_order(rows, rnd):
    shuffled = [list(r) for r in rows]
    rnd.shuffle(shuffled)
    order = list(range(len(rows[0])))
    rnd.shuffle(order)
    shuffled = [[r[j] for j in order] for r in shuffled]
    for f in (kappa, krippendorff_alpha, percent_all_pairs):
        a, b = _value(f, rows), _value(f, shuffled)
        assert (a is None and b is None) or math.isclose(a, b, abs_tol=1e-12)


@settings(max_examples=200, derandomize=True)
@given(panels)
def test_invariant_under_label_renaming(rows):
    rename = {"A": "z", "B": "x", "C": "y"}
    renamed = [[rename[lab] for lab in r] for r in rows]
    for f in (kappa, krippendorff_alpha):
        a, b = _value(f, rows), _value(f, renamed)
        assert (a is None and b is None) or math.isclose(a, b, abs_tol=1e-12)


@settings(max_examples=200, derandomize=True)
@given(panels)
def test_bounds(rows):
    k = _value(kappa, rows)
    assume(k is not None)
    assert -1.0 <= k <= 1.0
    assert 0.0 <= percent_all_pairs(from_rows(rows)).value <= 1.0


@settings(max_examples=100, derandomize=True)
@given(panels)
def test_duplicating_every_item_keeps_observed_agreement(rows):
    assert math.isclose(_value(percent_all_pairs, rows), _value(percent_all_pairs, rows + rows), abs_tol=1e-12)
