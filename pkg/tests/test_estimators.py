import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from coder_agreement import (
    AgreementError,
    AgreementEstimator,
    OddManOutAnalysis,
    check_annotations,
    kappa,
    significance,
)

from helpers import M1_ROWS, M2_ROWS


def test_params_round_trip():
    est = AgreementEstimator(measure="expert-kappa", expert="c1", n_permutations=200, seed=7)
    assert est.get_params() == {
        "measure": "expert-kappa", "expert": "c1", "coder_a": None, "coder_b": None,
        "n_permutations": 200, "seed": 7,
    }
    twin = clone(est)
    assert twin is not est and twin.get_params() == est.get_params()
    assert est.set_params(seed=8).seed == 8


def test_fit_on_list_of_rows(m2):
    est = AgreementEstimator().fit(M2_ROWS)
    assert abs(est.value_ - 0.55) <= 1e-12
    assert est.result_ == kappa(m2)
    assert est.coders_ == ("c1", "c2", "c3")
    assert est.categories_.labels == ("N", "Y")
    assert est.null_distribution_ is None


def test_fit_accepts_matrix(m1):
    assert AgreementEstimator(measure="alpha-nominal").fit(m1).value_ == pytest.approx(8 / 15, abs=1e-12)


def test_dataframe_ids():
    pd = pytest.importorskip("pandas")
    df = pd.DataFrame(M2_ROWS, index=["a", "b", "c"], columns=["ann", "bob", "cy"])
    est = AgreementEstimator(measure="expert-kappa", expert="ann").fit(df)
    assert est.coders_ == ("ann", "bob", "cy")
    assert est.value_ == pytest.approx(2 / 3, abs=1e-12)


def test_numeric_array_with_missing():
    X = np.array([[1.0, 1.0, np.nan], [2.0, 2.0, 3.0], [3.0, 3.0, 3.0], [4.0, np.nan, 4.0]])
    matrix = check_annotations(X, numeric=True)
    assert matrix.categories.labels == ("1", "2", "3", "4")
    interval = AgreementEstimator(measure="alpha-interval").fit(X).value_
    nominal = AgreementEstimator(measure="alpha-nominal").fit(X).value_
    # the single disagreement is one step apart, cheap under the interval metric
    assert interval > nominal


def test_non_numeric_labels_rejected_for_interval():
    with pytest.raises(AgreementError):
        AgreementEstimator(measure="alpha-interval").fit(M2_ROWS)


def test_percent_pair_defaults_to_the_two_coders():
    assert AgreementEstimator(measure="percent-pair").fit(M1_ROWS).value_ == 0.75
    with pytest.raises(AgreementError, match="coder_a"):
        AgreementEstimator(measure="percent-pair").fit(M2_ROWS)
    est = AgreementEstimator(measure="percent-pair", coder_a="c1", coder_b="c3").fit(M2_ROWS)
    assert est.value_ == pytest.approx(2 / 3, abs=1e-12)


def test_permutations(m2):
    est = AgreementEstimator(n_permutations=150, seed=4).fit(M2_ROWS)
    assert est.null_distribution_ == significance(m2, "kappa", 150, seed=4)
    assert est.p_value_ == est.null_distribution_.p_value
    with pytest.raises(AgreementError, match="not available"):
        AgreementEstimator(measure="percent-allpairs", n_permutations=150).fit(M2_ROWS)


def test_p_value_requires_fit_and_permutations():
    with pytest.raises(NotFittedError):
        AgreementEstimator().p_value_
    with pytest.raises(AttributeError):
        AgreementEstimator().fit(M2_ROWS).p_value_


def test_score_does_not_refit():
    est = AgreementEstimator().fit(M2_ROWS)
    assert est.score(M1_ROWS) == pytest.approx(7 / 15, abs=1e-12)
    assert est.value_ == pytest.approx(0.55, abs=1e-12)


def test_unknown_measure():
    with pytest.raises(AgreementError, match="unknown measure"):
        AgreementEstimator(measure="tau").fit(M2_ROWS)


def test_bad_shapes():
    with pytest.raises(AgreementError, match="2-d"):
        check_annotations(["A", "B"])
    with pytest.raises(AgreementError, match="coder ids"):
        check_annotations(M2_ROWS, coders=["a", "b"])


def test_odd_man_out():
    rows = [row + [row[0]] for row in M2_ROWS]
    analysis = OddManOutAnalysis().fit(rows)
    deltas = analysis.deltas()
    assert max(deltas, key=deltas.get) == "c3"
    assert analysis.baseline_ == pytest.approx(23 / 35, abs=1e-12)
    assert [u.label for u in analysis.units_] == ["Y", "Y", "N"]
    pairs = OddManOutAnalysis(report="pairs").fit(M2_ROWS).deltas()
    assert list(pairs) == ["c1,c2", "c1,c3", "c2,c3"]


def test_odd_man_out_errors():
    with pytest.raises(AgreementError, match="unknown report"):
        OddManOutAnalysis(report="units").fit(M2_ROWS)
    with pytest.raises(NotFittedError):
        OddManOutAnalysis().deltas()
