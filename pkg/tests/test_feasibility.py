import numpy as np
import pytest

import qmarginal as qm

from helpers import random_prob_vector


class TestRankRanges:
    def test_rank3_m2(self):
        assert qm.element_rank_range(3, 2) == (2, 6)

    def test_pure_marginal(self):
        for m in range(1, 6):
            assert qm.element_rank_range(1, m) == (1, m)

    def test_rank4_m2(self):
        assert qm.element_rank_range(4, 2) == (2, 8)

    def test_extreme_rank3_m2(self):
        assert qm.extreme_rank_range(3, 2) == (2, 3)

    def test_extreme_pure(self):
        assert qm.extreme_rank_range(1, 4) == (1, 1)

    def test_extreme_rank6_m3(self):
        assert qm.extreme_rank_range(6, 3) == (2, 6)

    def test_lower_endpoints_agree(self):
        for r in range(1, 13):
            for m in range(1, 7):
                assert qm.element_rank_range(r, m).k_min == qm.extreme_rank_range(r, m).k_min

    def test_invalid_inputs(self):
        with pytest.raises(qm.DimensionError):
            qm.element_rank_range(0, 2)


class TestExactLowRankExists:
    def test_too_small(self):
        assert not qm.exact_low_rank_exists(4, 2, 1)

    def test_purification_regime(self):
        for n in range(1, 6):
            assert qm.exact_low_rank_exists(n, n, 1)
            assert qm.exact_low_rank_exists(n, n + 2, 1)

    def test_boundary(self):
        assert qm.exact_low_rank_exists(3, 2, 2)


class TestNecessaryCompat:
    def test_spiked_pair_passes_though_infeasible(self):
        # necessity only: this pair passes all three checks but no state exists
        lam = [1 / 3, 1 / 3, 1 / 3]
        mu = [0.5, 0.1, 0.1, 0.1, 0.1, 0.1]
        rep = qm.necessary_spectra_compat(lam, mu, 2)
        assert rep.holds
        assert rep.check("marginal_vs_mu_block_sums").passed
        assert not qm.compat_2x3(lam, mu).holds

    def test_pure_product(self):
        rep = qm.necessary_spectra_compat([1.0, 0.0], [1.0, 0.0, 0.0, 0.0], 2)
        assert rep.holds

    def test_real_states_pass(self):
        for trial in range(50):
            rho = qm.random_density(6, 1 + trial % 6, seed=500 + trial)
            state = qm.BipartiteState(2, 3, rho)
            lam = qm.spectrum(qm.partial_trace_first(state))
            rep = qm.necessary_spectra_compat(lam, rho.eigenvalues, 2)
            assert rep.holds

    def test_dimension_mismatch(self):
        with pytest.raises(qm.DimensionError):
            qm.necessary_spectra_compat([0.5, 0.5], [1.0, 0.0, 0.0], 2)


class TestCompat2x2:
    def test_boundary(self):
        assert qm.compat_2x2([0.5, 0.5], [0.25, 0.25, 0.25, 0.25])

    def test_infeasible(self):
        assert not qm.compat_2x2([1.0, 0.0], [0.25, 0.25, 0.25, 0.25])

    def test_pure_product(self):
        assert qm.compat_2x2([1.0, 0.0], [1.0, 0.0, 0.0, 0.0])


class TestCompat2x3:
    def test_spiked_infeasible(self):
        rep = qm.compat_2x3([1 / 3, 1 / 3, 1 / 3], [0.5, 0.1, 0.1, 0.1, 0.1, 0.1])
        assert not rep.holds
        assert not rep.check("lambda3 <= mu2+mu3").passed

    def test_rank3_uniform_blocks(self):
        rep = qm.compat_2x3([1 / 3, 1 / 3, 1 / 3], [1 / 3, 1 / 3, 1 / 3, 0, 0, 0])
        assert rep.holds

    def test_maximally_mixed(self):
        rep = qm.compat_2x3([1 / 3, 1 / 3, 1 / 3], np.full(6, 1 / 6))
        assert rep.holds

    def test_dimension_mismatch(self):
        with pytest.raises(qm.DimensionError):
            qm.compat_2x3([0.5, 0.5], np.full(6, 1 / 6))


def test_uniform_marginal_predicate_equivalence():
    # for the uniform qutrit marginal the four checks collapse to
    # a2+a3 >= 1/3 >= a4+a5 over random joint spectra
    lam = np.full(3, 1 / 3)
    rng = qm.PortableRng(123)
    agree = 0
    for _ in range(10_000):
        a = random_prob_vector(6, rng)
        simple = a[1] + a[2] >= 1 / 3 - 1e-10 and 1 / 3 >= a[3] + a[4] - 1e-10
        assert qm.compat_2x3(lam, a).holds == simple
        agree += simple
    assert 0 < agree < 10_000  # both outcomes exercised


def test_census_soundness():
    cfg = qm.SamplerConfig(seed=2024, trials=1000)
    for lam, mu in qm.spectra_pair_census(2, 3, cfg):
        assert qm.compat_2x3(lam, mu).holds
        assert qm.necessary_spectra_compat(lam, mu, 2).holds


def test_census_soundness_first_factor_larger():
    # the majorization checks are necessary in the m >= n regime too
    for m, n in [(3, 2), (3, 3), (4, 2)]:
        cfg = qm.SamplerConfig(seed=2025 + m * 10 + n, trials=200)
        for lam, mu in qm.spectra_pair_census(m, n, cfg):
            assert qm.necessary_spectra_compat(lam, mu, m).holds


def test_block_majorization_implies_constructible():
    # for m >= n, every pair passing the block-sum majorization is realized
    rng = qm.PortableRng(321)
    built = 0
    for _ in range(100):
        n = 2 + rng.index(3)
        m = n + rng.index(3)
        mu = random_prob_vector(m * n, rng)
        w = mu.reshape(n, m).sum(axis=1)
        lam = np.sort(rng.uniform(n))[::-1]
        lam /= lam.sum()
        lam = 0.5 * lam + 0.5 * np.sort(w)[::-1]  # pull toward the block sums
        lam /= lam.sum()
        if not qm.majorizes(lam, w).holds:
            continue
        state = qm.construct_with_spectra(lam, mu, m)
        assert np.abs(state.rho.eigenvalues - mu).max() <= 1e-8
        built += 1
    assert built >= 20
