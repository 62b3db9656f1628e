import numpy as np
import pytest

from mcfqc.cones import (
    Classification,
    CpStatus,
    SearchBudget,
    classify_ds,
    cp_factorize,
    cp_sufficient,
    is_dnn,
)
from mcfqc.presets import BOUND6_M
from mcfqc.sampling import random_dnn_matrix
from mcfqc.states import Conclusion, is_ppt
from mcfqc.symmetric_states import ds_from_m_matrix, ds_to_density

FAST_BUDGET = SearchBudget(restarts=20, max_iters=20_000, residual_target=1e-7, seed=0)


class TestIsDnn:
    def test_bound6_matrix(self):
        assert is_dnn(BOUND6_M)

    def test_indefinite_nonnegative_matrix(self):
        assert not is_dnn([[1, 2], [2, 1]])

    def test_gram_of_nonnegative_factor(self):
        rng = np.random.default_rng(0)
        b = rng.random((5, 3))
        assert is_dnn(b @ b.T)

    def test_negative_entry(self):
        assert not is_dnn([[1.0, -0.1], [-0.1, 1.0]])

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            is_dnn([[1.0, 0.5], [0.0, 1.0]])


class TestCpSufficient:
    def test_identity_is_diag_dominant(self):
        assert cp_sufficient(np.eye(4)) == "diag-dominant"

    def test_small_example(self):
        assert cp_sufficient([[2.0, 1.0], [1.0, 2.0]]) is not None

    def test_small_dimension_fallback(self):
        # PSD and nonnegative but not diagonally dominant
        m = np.array([[1.0, 0.9, 0.9], [0.9, 1.0, 0.9], [0.9, 0.9, 1.0]])
        assert np.linalg.eigvalsh(m).min() > 0
        assert cp_sufficient(m) == "small-dimension"

    def test_bound6_matrix_has_no_cheap_certificate(self):
        assert cp_sufficient(BOUND6_M) is None


class TestCpFactorize:
    def test_planted_factorization_recovered(self):
        rng = np.random.default_rng(7)
        b = rng.random((6, 4))
        result = cp_factorize(b @ b.T, SearchBudget(restarts=100, max_iters=100_000, seed=1))
        assert result.found
        assert result.best_residual <= 1e-7
        assert result.factor.min() >= 0.0

    def test_random_small_dnn_factorizes(self):
        rng = np.random.default_rng(1)
        m = random_dnn_matrix(3, rng)
        result = cp_factorize(m, FAST_BUDGET)
        assert result.found

    def test_evidence_is_checkable(self):
        rng = np.random.default_rng(2)
        m = random_dnn_matrix(4, rng)
        result = cp_factorize(m, FAST_BUDGET)
        assert result.found
        recomputed = np.linalg.norm(m - result.factor @ result.factor.T)
        assert recomputed <= 1e-7

    def test_bound6_matrix_not_found(self):
        # no nonnegative factorization exists; the search must bottom out
        # well above the target instead of faking success
        result = cp_factorize(BOUND6_M, FAST_BUDGET)
        assert not result.found
        assert result.factor is None
        assert result.best_residual > 1e-4
        assert result.restarts_run == FAST_BUDGET.restarts

    def test_non_dnn_is_rejected_without_search(self):
        result = cp_factorize([[1.0, 2.0], [2.0, 1.0]], FAST_BUDGET)
        assert not result.found
        assert result.restarts_run == 0

    def test_determinism_per_seed(self):
        rng = np.random.default_rng(3)
        m = random_dnn_matrix(5, rng)
        budget = SearchBudget(restarts=4, max_iters=2_000, residual_target=1e-12, seed=11)
        a = cp_factorize(m, budget)
        b = cp_factorize(m, budget)
        assert a.best_residual == b.best_residual
        assert a.total_iterations == b.total_iterations
        assert a.restarts_run == b.restarts_run

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            SearchBudget(restarts=0)
        with pytest.raises(ValueError):
            SearchBudget(residual_target=0.0)


class TestClassifyDs:
    def test_small_dimension_dnn_is_separable(self):
        rng = np.random.default_rng(4)
        classification, cone = classify_ds(random_dnn_matrix(3, rng), FAST_BUDGET)
        assert classification == Classification.SEPARABLE
        assert cone.dnn and cone.cp == CpStatus.YES

    def test_indefinite_matrix_is_npt(self):
        classification, cone = classify_ds([[1.0, 2.0], [2.0, 1.0]], FAST_BUDGET)
        assert classification == Classification.NPT_ENTANGLED
        assert cone.cp == CpStatus.NO
        assert cone.evidence == "not-dnn"

    def test_bound6_matrix_is_candidate(self):
        classification, cone = classify_ds(BOUND6_M, FAST_BUDGET)
        assert classification == Classification.PPT_ENTANGLED_CANDIDATE
        assert cone.dnn
        assert cone.cp == CpStatus.UNKNOWN
        assert cone.evidence == "search-not-found"
        assert cone.search is not None and not cone.search.found

    def test_scale_invariance(self):
        c1, _ = classify_ds(BOUND6_M, FAST_BUDGET)
        c2, _ = classify_ds(37.0 * BOUND6_M, FAST_BUDGET)
        assert c1 == c2

    def test_small_dimensions_never_emit_candidates(self):
        rng = np.random.default_rng(5)
        for d in (2, 3, 4):
            for _ in range(10):
                classification, _ = classify_ds(random_dnn_matrix(d, rng), FAST_BUDGET)
                assert classification != Classification.PPT_ENTANGLED_CANDIDATE

    def test_non_dnn_bridges_to_npt_verdict_on_the_state(self):
        # a pair-weight matrix with a negative eigenvalue must show up as a
        # negative partial-transpose eigenvalue of the expanded state
        rng = np.random.default_rng(6)
        checked = 0
        while checked < 5:
            d = 4
            m = np.abs(rng.standard_normal((d, d)))
            m = (m + m.T) / 2
            np.fill_diagonal(m, 0.01 * rng.random(d))
            m /= m.sum()
            try:
                dnn = is_dnn(m)
            except ValueError:
                continue
            if dnn:
                continue
            rho = ds_to_density(ds_from_m_matrix(m))
            assert is_ppt(rho).flag == Conclusion.ENTANGLED
            checked += 1
