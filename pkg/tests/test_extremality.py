import numpy as np
import pytest

import qmarginal as qm
from qmarginal.extremality import _scaled_factors, _stacked_products

from helpers import haar_unitary, sigma_corpus


def small_corpus():
    """(state, sigma) members at assorted feasible ranks."""
    out = []
    for sigma in sigma_corpus(max_n=4, seed=555):
        for m in (2, 3):
            lo, hi = qm.element_rank_range(sigma.rank, m)
            for k in {lo, min(lo + 1, hi), hi}:
                out.append((qm.construct_rank_k(sigma, m, k), sigma))
    return out


class TestIsExtreme:
    def test_rank_one_always_extreme(self):
        for seed in range(4):
            sigma = qm.random_density(3, min(2, 3), seed=400 + seed)
            state = qm.purify(sigma, 2)
            rep = qm.is_extreme(state)
            assert rep.is_extreme
            assert rep.certificate is None

    def test_uniform_on_six_not_extreme(self):
        state = qm.bipartite(np.eye(6) / 6, 2, 3)
        rep = qm.is_extreme(state)
        assert not rep.is_extreme
        assert rep.rank == 6
        assert rep.certificate is not None
        defect = np.abs(rep.certificate - rep.certificate.conj().T).max()
        assert defect <= 1e-12

    def test_min_rank_member_extreme(self):
        sigma = qm.validate_density(np.eye(3) / 3)
        rep = qm.is_extreme(qm.construct_rank_k(sigma, 2, 2))
        assert rep.is_extreme

    def test_min_rank_completeness_over_corpus(self):
        for sigma in sigma_corpus(max_n=5, seed=771):
            for m in (2, 3, 4):
                k = qm.element_rank_range(sigma.rank, m).k_min
                state = qm.construct_rank_k(sigma, m, k)
                assert qm.is_extreme(state).is_extreme, (sigma.dim, sigma.rank, m, k)

    def test_low_rank_regime_constructions_all_extreme(self):
        # the superposition construction is extreme at every k up to the
        # marginal rank, not only at the minimum
        for sigma in sigma_corpus(max_n=5, seed=772):
            for m in (2, 3):
                lo, _ = qm.element_rank_range(sigma.rank, m)
                for k in range(lo, sigma.rank + 1):
                    state = qm.construct_rank_k(sigma, m, k)
                    assert qm.is_extreme(state).is_extreme, (sigma.dim, sigma.rank, m, k)

    def test_rank_above_second_dim_not_extreme(self):
        sigma = qm.random_density(3, 3, seed=61)
        for k in (4, 5, 6):
            state = qm.construct_rank_k(sigma, 2, k)
            assert not qm.is_extreme(state).is_extreme

    def test_extreme_rank_ceiling(self):
        # reported-extreme members never exceed min(marginal rank, n)
        for state, sigma in small_corpus():
            rep = qm.is_extreme(state)
            if rep.is_extreme:
                assert rep.rank <= min(sigma.rank, state.n)

    def test_refactorization_invariance(self):
        state = qm.construct_rank_k(qm.random_density(4, 4, seed=62), 2, 3)
        z = _scaled_factors(state)
        r = z.shape[1]
        rows = _stacked_products(z, state.m, state.n)
        q = haar_unitary(r, 63)
        rows_q = _stacked_products(z @ q, state.m, state.n)
        def verdict(rows):
            s = np.linalg.svd(rows, compute_uv=False)
            gmin = s[-1] ** 2 if rows.shape[0] <= rows.shape[1] else 0.0
            return gmin > 1e-8 * s[0] ** 2
        assert verdict(rows) == verdict(rows_q)


class TestSplitNonextreme:
    def test_uniform_on_six(self):
        state = qm.bipartite(np.eye(6) / 6, 2, 3)
        rep = qm.is_extreme(state)
        rho1, rho2 = qm.split_nonextreme(state, rep.certificate)
        assert rho1.rank <= 5
        mid = (rho1.matrix + rho2.matrix) / 2
        assert np.abs(mid - state.matrix).max() <= 1e-10
        target = qm.partial_trace_first(state)
        for part in (rho1, rho2):
            assert np.abs(qm.partial_trace_first(part) - target).max() <= 1e-10

    def test_constructed_nonextreme_splits_with_rank_drop(self):
        sigma = qm.validate_density(np.eye(3) / 3)
        state = qm.nonextreme_of_rank_k(sigma, 2, 3)
        rep = qm.is_extreme(state)
        assert not rep.is_extreme
        rho1, rho2 = qm.split_nonextreme(state, rep.certificate)
        assert rho1.rank < state.rank
        assert np.abs((rho1.matrix + rho2.matrix) / 2 - state.matrix).max() <= 1e-10

    def test_split_soundness_over_corpus(self):
        for state, sigma in small_corpus():
            rep = qm.is_extreme(state)
            if rep.is_extreme:
                continue
            rho1, rho2 = qm.split_nonextreme(state, rep.certificate)
            assert rho1.rank < state.rank
            assert np.abs((rho1.matrix + rho2.matrix) / 2 - state.matrix).max() <= 1e-10
            target = qm.partial_trace_first(state)
            for part in (rho1, rho2):
                assert np.abs(qm.partial_trace_first(part) - target).max() <= 1e-10

    def test_invalid_certificate_rejected(self):
        state = qm.bipartite(np.eye(6) / 6, 2, 3)
        bogus = np.eye(6)  # identity never annihilates the factor products
        with pytest.raises(qm.InvalidCertificateError):
            qm.split_nonextreme(state, bogus)

    def test_wrong_shape_rejected(self):
        state = qm.bipartite(np.eye(6) / 6, 2, 3)
        with pytest.raises(qm.InvalidCertificateError):
            qm.split_nonextreme(state, np.eye(2))
