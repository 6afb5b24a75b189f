"""scikit-learn style wrappers.

The estimators take an items x coders label array in ``fit`` and keep the
computed statistic in trailing-underscore attributes, so they can be
configured through ``get_params``/``set_params``, cloned and grid-searched
like any other estimator.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .diagnostics import leave_one_coder_out, pairwise_kappa_matrix, per_category_kappa, unit_profile
from .exceptions import AgreementError
from .legacy import percent_all_pairs, percent_majority, percent_pairwise
from .stats import CHANCE_MEASURES, measure, significance
from .validation import check_annotations

MEASURES = CHANCE_MEASURES + ("percent-pair", "percent-allpairs", "percent-majority")


class AgreementEstimator(BaseEstimator):
    """Compute one agreement statistic over an annotation table.

    Parameters
    ----------
    measure : str, default="kappa"
        One of ``kappa``, ``pi``, ``alpha-nominal``, ``alpha-interval``,
        ``alpha-ratio``, ``expert-kappa``, ``percent-pair``,
        ``percent-allpairs`` or ``percent-majority``.
    expert : str, optional
        Expert coder id, required by ``expert-kappa``.
    coder_a, coder_b : str, optional
        The pair compared by ``percent-pair``.
    n_permutations : int, optional
        When set, run the permutation significance test with that many
        replicates and store it in ``null_distribution_``.
    seed : int, default=0
        Master seed of the permutation test.

    Attributes
    ----------
    result_ : MeasureResult
    value_ : float
    null_distribution_ : NullDistribution or None
    coders_ : tuple of str
    categories_ : CategorySet
    """

    def __init__(self, measure="kappa", expert=None, coder_a=None, coder_b=None,
                 n_permutations=None, seed=0):
        self.measure = measure
        self.expert = expert
        self.coder_a = coder_a
        self.coder_b = coder_b
        self.n_permutations = n_permutations
        self.seed = seed

    def _compute(self, matrix):
        if self.measure not in MEASURES:
            raise AgreementError(f"unknown measure {self.measure!r}")
        if self.measure == "percent-pair":
            a, b = self.coder_a, self.coder_b
            if a is None or b is None:
                if matrix.n_coders != 2:
                    raise AgreementError("percent-pair needs coder_a and coder_b")
                a, b = matrix.coders
            return percent_pairwise(matrix, a, b)
        if self.measure == "percent-allpairs":
            return percent_all_pairs(matrix)
        if self.measure == "percent-majority":
            return percent_majority(matrix)
        return measure(matrix, self.measure, self.expert)

    def _check(self, X):
        return check_annotations(X, numeric=self.measure in ("alpha-interval", "alpha-ratio"))

    def fit(self, X, y=None):
        matrix = self._check(X)
        self.result_ = self._compute(matrix)
        self.null_distribution_ = None
        if self.n_permutations is not None:
            if self.measure not in CHANCE_MEASURES:
                raise AgreementError(f"significance is not available for {self.measure!r}")
            self.null_distribution_ = significance(
                matrix, self.measure, self.n_permutations, self.seed, self.expert
            )
        self.value_ = self.result_.value
        self.coders_ = matrix.coders
        self.categories_ = matrix.categories
        return self

    def score(self, X, y=None):
        """The configured statistic evaluated on ``X`` (the fitted state is untouched)."""
        return self._compute(self._check(X)).value

    @property
    def p_value_(self):
        check_is_fitted(self, "result_")
        if self.null_distribution_ is None:
            raise AttributeError("p_value_ needs n_permutations to be set")
        return self.null_distribution_.p_value


_REPORTS = {
    "loo": leave_one_coder_out,
    "pairs": pairwise_kappa_matrix,
    "per-category": per_category_kappa,
}


class OddManOutAnalysis(BaseEstimator):
    """Locate the coders, pairs or categories that drive disagreement.

    ``report`` is ``"loo"``, ``"pairs"`` or ``"per-category"``; after
    ``fit`` the :class:`DiagnosticReport` is in ``report_`` and the per-item
    modal labels in ``units_``.
    """

    def __init__(self, report="loo"):
        self.report = report

    def fit(self, X, y=None):
        if self.report not in _REPORTS:
            raise AgreementError(f"unknown report {self.report!r}; choose from {sorted(_REPORTS)}")
        matrix = check_annotations(X)
        self.report_ = _REPORTS[self.report](matrix)
        self.units_ = unit_profile(matrix)
        self.baseline_ = self.report_.baseline
        return self

    def deltas(self):
        check_is_fitted(self, "report_")
        return {row.subject: row.delta for row in self.report_.rows}
