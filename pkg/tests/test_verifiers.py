import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import geometric_truncated, interior_fractions, pmfs, ulc_pmfs
from thinent import (
    DegenerateAlpha,
    DomainError,
    LengthMismatch,
    PreconditionFailed,
    decompose,
    entropy,
    entropy_power,
    make_pmf,
    mean,
    point_mass,
    poisson_entropy,
    poisson_pmf,
    random_ulc,
    thin,
)
from thinent import verifiers as V


@pytest.fixture
def fair():
    return make_pmf([0.5, 0.5])


class TestSlackReport:
    def test_sign_convention(self):
        r = V.SlackReport(lhs=1.0, rhs=1.5, tolerance=0.1)
        assert r.slack == -0.5 and not r.passed
        assert V.SlackReport(1.0, 1.05, 0.1).passed

    def test_preconditions_gate_pass(self):
        assert not V.SlackReport(2.0, 1.0, 0.0, preconditions_met=False).passed


class TestMixtureConcavity:
    def test_fair_coins(self, fair):
        rep = V.check_concavity_thm2(fair, fair, 0.5, 0.5)
        assert rep.passed and rep.slack >= 0
        # T_.5 Bern(.5) = Bern(.25); sum of two is Binomial(2, .25)
        w = [0.5625, 0.375, 0.0625]
        assert rep.lhs == pytest.approx(-sum(x * math.log(x) for x in w), abs=1e-14)
        assert rep.rhs == pytest.approx(math.log(2), abs=1e-15)

    def test_alpha_one(self, binom, fair):
        f = binom(4, 0.3)
        rep = V.check_concavity_thm2(f, fair, 1.0, 0.0)
        assert rep.lhs == pytest.approx(entropy(f), abs=1e-14)
        assert rep.slack == pytest.approx(0.0, abs=1e-14)

    def test_point_masses(self):
        rep = V.check_concavity_thm2(point_mass(0), point_mass(0), 0.3, 0.4)
        assert rep.lhs == 0.0 and rep.rhs == 0.0

    def test_rejects_non_ulc(self, fair):
        with pytest.raises(PreconditionFailed):
            V.check_concavity_thm2(geometric_truncated(0.5, 10), fair, 0.5, 0.5)

    def test_rejects_alpha_beta_over_one(self, fair):
        with pytest.raises(PreconditionFailed):
            V.check_concavity_thm2(fair, fair, 0.7, 0.4)

    @settings(max_examples=200, deadline=None)
    @given(ulc_pmfs, ulc_pmfs, st.floats(0, 1), st.floats(0, 1))
    def test_holds(self, f, g, alpha, share):
        beta = (1 - alpha) * share
        assert V.check_concavity_thm2(f, g, alpha, beta).slack >= -1e-9


class TestProp1:
    def test_alpha_one(self, binom):
        assert V.check_prop1(binom(5, 0.5), 1.0).slack == 0.0

    def test_alpha_zero(self, binom):
        rep = V.check_prop1(binom(5, 0.5), 0.0)
        assert rep.lhs == 0.0 and rep.rhs == 0.0

    def test_non_ulc_geometric(self):
        assert V.check_prop1(geometric_truncated(0.5, 20), 0.5).passed

    @settings(max_examples=200, deadline=None)
    @given(pmfs, st.floats(0, 1))
    def test_holds_for_any_pmf(self, f, alpha):
        assert V.check_prop1(f, alpha).slack >= -1e-9


class TestDThin:
    def test_poisson(self):
        rep = V.check_dthin(poisson_pmf(2.0, 1e-15), 0.4)
        assert abs(rep.lhs) < 1e-7 and abs(rep.rhs) < 1e-7

    def test_fair_coin(self, fair):
        rep = V.check_dthin(fair, 0.5)
        # D(Bern(p) || Po(p)) = (1-p) log((1-p) / e^-p) + p log(p / (p e^-p))
        def d_bern(p):
            return (1 - p) * (math.log(1 - p) + p) + p * p
        assert rep.lhs == pytest.approx(0.5 * d_bern(0.5), abs=1e-12)
        assert rep.rhs == pytest.approx(d_bern(0.25), abs=1e-12)
        assert rep.passed

    def test_alpha_one(self, binom):
        assert V.check_dthin(binom(3, 0.7), 1.0).slack == 0.0


class TestDSubadditive:
    def test_poisson(self):
        p = poisson_pmf(1.0, 1e-15)
        assert abs(V.check_d_subadditive(p, p).slack) < 1e-8

    def test_fair_coins(self, fair):
        assert V.check_d_subadditive(fair, fair).passed

    def test_point_masses(self):
        rep = V.check_d_subadditive(point_mass(1), point_mass(1))
        assert rep.lhs == pytest.approx(2.0, abs=1e-12)
        assert rep.rhs == pytest.approx(2 - 2 * math.log(2) + math.log(2), abs=1e-12)
        assert rep.passed


class TestLSingle:
    def test_decomposition_identity(self, binom):
        f = binom(6, 0.3)
        dec = decompose(thin(f, 0.4))
        assert V.l_alpha_single(f, 0.4) == pytest.approx(-dec.h - dec.d, abs=1e-10)

    def test_first_derivative(self, binom):
        f = binom(6, 0.3)
        fd = V.first_difference(lambda a: V.l_alpha_single(f, a), 0.4, 1e-5)
        assert abs(V.l_prime_single(f, 0.4) - fd) < 1e-6

    def test_second_derivative_closed_form(self, binom):
        f = binom(6, 0.3)
        fd = V.second_difference(lambda a: V.l_alpha_single(f, a), 0.4, 1e-3)
        closed = V.l2_single_closed_form(f, 0.4)
        assert abs(fd - closed) / (1 + abs(closed)) < 1e-4
        assert closed >= 0

    def test_convex_on_grid(self, binom):
        rep = V.convexity_single(binom(6, 0.3), 33)
        assert rep.min_second >= -1e-8
        assert np.all(rep.closed_second >= -1e-8)

    def test_degenerate(self, binom):
        with pytest.raises(DegenerateAlpha):
            V.l_alpha_single(binom(3, 0.5), 0.0)
        with pytest.raises(DegenerateAlpha):
            V.l_prime_single(binom(3, 0.5), 0.0)


class TestLTwo:
    def test_poisson_pair_is_constant(self):
        p = poisson_pmf(2.0, 1e-15)
        rep = V.convexity_two(p, p, 17)
        assert np.max(np.abs(rep.fd_second)) < 1e-8
        assert np.max(np.abs(rep.closed_second)) < 1e-8

    def test_decomposition_identity(self, binom):
        f, g = binom(4, 0.6), binom(5, 0.2)
        dec = decompose(V.thinned_mixture(f, g, 0.3, 0.7))
        assert V.l_alpha_two(f, g, 0.3) == pytest.approx(-dec.h - dec.d, abs=1e-10)

    def test_convex_on_grid(self, binom):
        rep = V.convexity_two(binom(4, 0.6), binom(5, 0.2), 33)
        assert rep.min_second >= -1e-8

    def test_closed_form_matches_fd(self, binom):
        f, g = binom(4, 0.6), binom(5, 0.2)
        closed = V.l2_closed_form(f, g, 0.5)
        fd = V.second_difference(lambda a: V.l_alpha_two(f, g, a), 0.5, 1e-3)
        assert abs(closed - fd) / (1 + abs(closed)) < 1e-4

    def test_endpoints(self, binom):
        with pytest.raises(DegenerateAlpha):
            V.l_alpha_two(binom(2, 0.5), binom(2, 0.5), 1.0)
        with pytest.raises(DegenerateAlpha):
            V.l2_closed_form(binom(2, 0.5), binom(2, 0.5), 0.0)

    @settings(max_examples=80, deadline=None)
    @given(ulc_pmfs, ulc_pmfs, interior_fractions)
    def test_nonnegative_on_ulc(self, f, g, alpha):
        if mean(f) < 1e-8 or mean(g) < 1e-8:
            return
        assert V.l2_closed_form(f, g, alpha) >= -1e-8


class TestABKernel:
    def test_identity_at_origin(self):
        assert abs(V.ab_identity_residual(0, 0, 0.3, 1.0, 2.0)) < 1e-12

    def test_equal_means(self):
        assert abs(V.ab_identity_residual(2, 3, 0.4, 1.5, 1.5)) < 1e-12

    def test_direct_values(self):
        # a(2, 1) with alpha = .3, lambda = 1, mu = 2: M = .3 + 1.4 = 1.7
        a, b = V.ab_kernel(V.ABKernelSample(2, 1, 0.3, 1.0, 2.0))
        den = 1.7 * 0.09 * 0.49
        assert a == pytest.approx((2 / 0.09 - 0.7 * 2 * 1 / den) * math.log(2 / 3), rel=1e-14)
        assert b == pytest.approx((2 / 0.49 - 0.3 * 1 * 2 / den) * math.log(2 / 3), rel=1e-14)

    def test_a_decreasing_in_i(self):
        vals = [V.ab_kernel(V.ABKernelSample(i, 2, 0.3, 1.0, 2.0))[0] for i in (1, 2, 3)]
        assert vals[0] > vals[1] > vals[2]

    def test_zero_coefficient_boundary(self):
        assert V.ab_kernel(V.ABKernelSample(1, 0, 0.5, 1.0, 1.0))[0] == 0.0
        assert V.ab_kernel(V.ABKernelSample(0, 1, 0.5, 1.0, 1.0))[1] == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            V.ab_kernel(V.ABKernelSample(0, 0, 0.5, 1.0, 1.0))
        with pytest.raises(DomainError):
            V.ab_kernel(V.ABKernelSample(1, 1, 0.5, 0.0, 1.0))

    def test_randomized_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            i, j = rng.integers(0, 51, size=2)
            alpha = rng.uniform(0.05, 0.95)
            lam, mu = rng.uniform(0.1, 10.0, size=2)
            assert abs(V.ab_identity_residual(int(i), int(j), alpha, lam, mu)) < 1e-10

    @pytest.mark.parametrize("j", [0, 1, 4])
    def test_a_monotone_rows(self, j):
        for alpha in (0.2, 0.5, 0.8):
            a = [V.ab_kernel(V.ABKernelSample(i, j, alpha, 1.3, 0.6))[0] for i in range(1, 15)]
            assert np.all(np.diff(a) <= 1e-12)


class TestSheppOlkin:
    def test_disjoint_supports_concave(self):
        rep = V.check_shepp_olkin_segment([0.7, 0.0], [0.0, 0.4], 33)
        assert rep.proved_regime
        assert rep.max_second <= 1e-9

    def test_constant_segment(self):
        rep = V.check_shepp_olkin_segment([0.3, 0.6], [0.3, 0.6], 9)
        assert np.max(np.abs(rep.second_diffs)) < 1e-9
        assert not rep.proved_regime

    def test_binary_entropy(self):
        rep = V.check_shepp_olkin_segment([0.0], [1.0], 21)
        t = rep.ts
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -np.nan_to_num(t * np.log(t)) - np.nan_to_num((1 - t) * np.log(1 - t))
        np.testing.assert_allclose(rep.entropies, h, atol=1e-14)
        assert rep.concave()

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            V.check_shepp_olkin_segment([0.1], [0.1, 0.2], 5)

    def test_slack_helper(self):
        rep = V.shepp_olkin_slack([0.7, 0.0], [0.0, 0.4], 0.5)
        assert rep.passed and not rep.conjecture


class TestEntropyPowerChecks:
    def test_thinned_epi_identical_pair_recorded(self, binom):
        f = binom(4, 0.5)
        rep = V.check_thinned_epi(f, f, 0.5)
        assert rep.conjecture
        assert rep.rhs == pytest.approx(entropy_power(f), abs=1e-12)

    @pytest.mark.parametrize("lam", [0.5, 2.0])
    def test_thinned_epi_poisson_equality(self, lam):
        p = poisson_pmf(lam, 1e-15)
        rep = V.check_thinned_epi(p, p, 0.3)
        assert rep.lhs == pytest.approx(lam, abs=1e-6)
        assert rep.rhs == pytest.approx(lam, abs=1e-6)

    def test_thinned_epi_equal_weight_instance(self, binom):
        f = binom(6, 0.5)
        mu = 0.5 * entropy_power(f)
        rep = V.check_thinned_epi(f, poisson_pmf(mu, 1e-15), 0.4)
        assert rep.slack >= -1e-6

    def test_thinned_epi_requires_ulc(self):
        with pytest.raises(PreconditionFailed):
            V.check_thinned_epi(geometric_truncated(0.5, 8), point_mass(1), 0.5)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 3.0])
    def test_rtepi_poisson_equality(self, lam):
        rep = V.check_rtepi(poisson_pmf(lam, 1e-15), 0.37)
        assert abs(rep.slack) <= 1e-6

    def test_rtepi_alpha_one(self, binom):
        assert V.check_rtepi(binom(6, 0.5), 1.0).slack == 0.0

    def test_rtepi_binomial(self, binom):
        rep = V.check_rtepi(binom(6, 0.5), 0.5)
        assert rep.passed and rep.context["proof_announced"]

    def test_prop2_boundary(self):
        # with beta + gamma = 1 both ratio bounds equal 1, so V(X) = V(Y) and alpha = beta
        x = poisson_pmf(2.0, 1e-15)
        rep = V.check_prop2(x, x, 0.4, 0.6)
        assert rep.context["condition_met"]
        assert rep.context["alpha"] == pytest.approx(0.4, abs=1e-6)
        assert rep.context["alpha_ok"]

    def test_prop2_condition_evaluated(self, binom):
        rep = V.check_prop2(binom(6, 0.5), poisson_pmf(1.0, 1e-15), 0.3, 0.3)
        vx, vy = entropy_power(binom(6, 0.5)), 1.0
        assert rep.context["condition_met"] == (0.3 / 0.7 <= vy / vx <= 0.7 / 0.3)
        assert rep.rhs == pytest.approx(0.3 * vx + 0.3 * rep.context["ratio"] * vx, abs=1e-6)

    def test_prop2_condition_failure_reported(self, binom):
        rep = V.check_prop2(binom(6, 0.5), poisson_pmf(20.0, 1e-15), 0.3, 0.3)
        assert not rep.context["condition_met"]
        assert not rep.passed

    def test_prop2_matches_mixture_construction(self, binom):
        f = binom(6, 0.5)
        alpha, gamma = 0.4, 0.1
        mu = 0.5 * entropy_power(f)
        z = poisson_pmf(mu * (1 - alpha) / gamma, 1e-15)
        p2 = V.check_prop2(f, z, alpha, gamma)
        epi = V.check_thinned_epi(f, poisson_pmf(mu, 1e-15), alpha)
        assert p2.context["condition_met"] and p2.context["alpha_ok"]
        assert p2.lhs == pytest.approx(epi.lhs, abs=1e-6)
        assert p2.rhs == pytest.approx(epi.rhs, abs=1e-6)


class TestCounterexample:
    def test_violation(self):
        rep = V.naive_epi_counterexample()
        assert rep.context["is_ulc"]
        assert rep.context["additive_slack"] < -1e-6
        assert rep.passed

    def test_sum_mean(self):
        from thinent import convolve

        f = make_pmf([1, 4, 1])
        assert mean(convolve(f, f)) == pytest.approx(2.0, abs=1e-14)


class TestThinNumbers:
    def test_poisson_fixed_point(self):
        lam = 1.5
        rows = V.law_of_thin_numbers_trace(poisson_pmf(lam, 1e-15), 8)
        e = poisson_entropy(lam)
        for r in rows:
            assert r.tv_to_poisson < 1e-10
            assert r.rel_entropy < 1e-7
            assert r.entropy == pytest.approx(e, abs=1e-9)

    def test_bernoulli_monotone(self):
        rows = V.law_of_thin_numbers_trace(make_pmf([0.7, 0.3]), 30)
        h = np.array([r.entropy for r in rows])
        d = np.array([r.rel_entropy for r in rows])
        tv = np.array([r.tv_to_poisson for r in rows])
        assert np.all(np.diff(h) >= 0)
        assert np.all(np.diff(d) <= 0)
        assert tv[-1] < tv[0]

    def test_rejects_zero_mean(self):
        with pytest.raises(PreconditionFailed):
            V.law_of_thin_numbers_trace(point_mass(0), 3)


@pytest.mark.parametrize("seed", range(200))
def test_chebyshev_ratio_non_increasing(seed):
    f = random_ulc(8, seed)
    for alpha in (0.2, 0.6, 0.9):
        r = V.chebyshev_ratios(f, alpha)
        assert np.all(np.diff(r) <= 1e-12 * np.maximum(1.0, r[:-1]))
