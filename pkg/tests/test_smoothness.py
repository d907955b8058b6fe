"""Semi-smoothness scans, niceness, the pure-deviation ratio search,
certificate parameters, and the optimum floors."""

import itertools
from fractions import Fraction

import pytest

from conflictgames.games import (
    GameKind,
    canonical_deviation_profile,
    harmonic,
    make_instance,
    player_value,
    uniform_profile,
)
from conflictgames.instances import (
    gen_bwc_multipartite,
    gen_bwcf_lower,
    gen_bwf_cliques,
    gen_maxcut_edge,
    gen_random,
    gen_swc_pos,
)
from conflictgames.oracle import enumerate_states, state_count
from conflictgames.smoothness import (
    certificate_params,
    check_nice,
    check_opt_lower_bounds,
    check_semi_smooth,
    make_params,
    max_rho_pure_sigma,
    semi_smooth_lhs,
)

from conftest import ALL_KINDS, small_instance

F = Fraction


def _definitional_lhs(inst, state, profile):
    total = F(0)
    for i in range(1, inst.n + 1):
        for k in range(1, inst.m + 1):
            q = profile[i - 1][k - 1]
            if q:
                moved = state[: i - 1] + (k,) + state[i:]
                total += q * player_value(inst, moved, i)
    return total


class TestLhs:
    def test_bwc_uniform_per_player_form(self):
        # per player the uniform deviation costs (n + d_i + m - 1) / m
        inst = gen_bwc_multipartite(2)
        prof = uniform_profile(inst)
        n, m = inst.n, inst.m
        expected = sum(F(n + 2 + m - 1, m) for _ in range(n))  # every degree is 2
        for state in [(1, 1, 1, 1), (1, 2, 1, 2), (1, 1, 2, 2)]:
            assert semi_smooth_lhs(inst, state, prof) == expected

    def test_maxcut_uniform_is_edge_count(self):
        inst = gen_maxcut_edge()
        prof = uniform_profile(inst)
        for state in enumerate_states(inst):
            assert semi_smooth_lhs(inst, state, prof) == 1

    def test_edgeless_two_by_two(self):
        inst = make_instance(GameKind.BWC, 2, 2)
        assert semi_smooth_lhs(inst, (1, 1), uniform_profile(inst)) == 3

    def test_matches_definitional_double_sum(self, mixed_pool):
        for inst in mixed_pool:
            if state_count(inst) > 256:
                continue
            prof = canonical_deviation_profile(inst)
            for state in itertools.islice(enumerate_states(inst), 7):
                assert semi_smooth_lhs(inst, state, prof) == _definitional_lhs(
                    inst, state, prof
                )


class TestCheckSemiSmooth:
    def test_bwc_certificate_passes(self):
        for m in (2, 3):
            inst = gen_bwc_multipartite(m)
            params, _ = certificate_params(inst.kind, inst.n, inst.m)
            assert check_semi_smooth(inst, params).holds

    def test_k22_certificate_is_tight(self):
        inst = gen_bwc_multipartite(2)
        params, _ = certificate_params(inst.kind, inst.n, inst.m)
        verdict = check_semi_smooth(inst, params)
        assert verdict.holds and verdict.slack == 0

    def test_swc_certificate_passes(self):
        for seed in range(5):
            inst = gen_random(4, 3, GameKind.SWC, F(1, 2), seed=seed, weighted=seed % 2 == 0)
            params, _ = certificate_params(inst.kind, inst.n, inst.m)
            assert check_semi_smooth(inst, params).holds

    def test_lambda_one_fails_with_witness(self):
        inst = gen_bwc_multipartite(2)
        verdict = check_semi_smooth(inst, make_params(inst.kind, 1, 0))
        assert not verdict.holds
        assert verdict.slack < 0
        # the witness is a genuine violation of the per-state inequality
        prof = canonical_deviation_profile(inst)
        lhs = semi_smooth_lhs(inst, verdict.worst_state, prof)
        assert lhs > 1 * 8  # lam * OPT with mu = 0

    def test_monotone_in_parameters(self):
        # payoff orientation: smaller lambda / larger mu only weakens the bound
        inst = gen_random(4, 2, GameKind.SWC, F(1, 2), seed=2)
        params, _ = certificate_params(inst.kind, inst.n, inst.m)
        assert check_semi_smooth(inst, params).holds
        weaker = make_params(inst.kind, params.lam / 2, params.mu + 1)
        assert check_semi_smooth(inst, weaker).holds

    def test_explicit_profile_respected(self):
        inst = gen_maxcut_edge()
        point = ((F(1), F(0)), (F(1), F(0)))  # both deviate to partition 1
        params = make_params(inst.kind, F(1, 2), 0)
        assert not check_semi_smooth(inst, params, profile=point).holds

    def test_n_below_m_branches(self):
        # BwC uses its small-n parameter branch; sharing scales with support
        inst = make_instance(GameKind.BWC, 2, 3, conflict_edges=[(1, 2)])
        params, _ = certificate_params(GameKind.BWC, 2, 3)
        assert params.lam == 1 + F(2, 3)
        assert check_semi_smooth(inst, params).holds
        for seed in range(4):
            swc = gen_random(2, 3, GameKind.SWC, F(1, 2), seed=seed)
            p, pota = certificate_params(GameKind.SWC, 2, 3)
            assert (p.lam, p.mu, pota) == (F(1, 2), F(0), 2)
            assert check_semi_smooth(swc, p).holds


class TestCheckNice:
    def test_bwc_niceness_constant(self):
        inst = gen_bwc_multipartite(2)
        assert check_nice(inst, make_params(inst.kind, 2 - F(2, 4), 0)).holds

    def test_lambda_one_fails(self):
        inst = gen_bwc_multipartite(2)
        assert not check_nice(inst, make_params(inst.kind, 1, 0)).holds

    def test_single_player_best_response_is_optimal(self):
        inst = make_instance(GameKind.BWC, 1, 3)
        assert check_nice(inst, make_params(inst.kind, 1, 0)).holds

    def test_semi_smooth_implies_nice(self, mixed_pool):
        # the joint best response dominates any fixed deviation profile
        for inst in mixed_pool[::4]:
            if state_count(inst) > 256:
                continue
            params, _ = certificate_params(
                inst.kind, inst.n, inst.m, inst.alpha, inst.beta, inst.gamma
            )
            if inst.kind is GameKind.BWCF and inst.n < inst.m:
                continue  # combined-kind certificate assumes n >= m
            if check_semi_smooth(inst, params).holds:
                assert check_nice(inst, params).holds


class TestPureSigmaRatio:
    def test_split_deviation_caps_at_one_third(self):
        inst = gen_maxcut_edge()
        lo, hi = max_rho_pure_sigma(inst, (1, 2))
        assert hi - lo <= F(1, 10**9)
        assert lo <= F(1, 3) <= hi + F(1, 10**9)

    def test_clustered_deviation_gives_zero(self):
        inst = gen_maxcut_edge()
        lo, hi = max_rho_pure_sigma(inst, (1, 1))
        assert lo == 0 and hi <= F(1, 10**9)

    def test_max_over_all_pure_profiles(self):
        inst = gen_maxcut_edge()
        best_hi = max(
            max_rho_pure_sigma(inst, sigma)[1]
            for sigma in itertools.product((1, 2), repeat=2)
        )
        assert best_hi <= F(1, 3) + F(1, 10**9)

    def test_cost_kind_rejected(self):
        with pytest.raises(ValueError):
            max_rho_pure_sigma(gen_bwc_multipartite(2), (1, 1, 2, 2))


class TestCertificateParams:
    def test_known_values(self):
        params, pota = certificate_params(GameKind.BWC, 4, 2)
        assert (params.lam, params.mu, pota) == (F(7, 4), 0, F(7, 4))
        params, pota = certificate_params(GameKind.BWF, 9, 3)
        assert pota == F(5, 3)
        params, pota = certificate_params(GameKind.SWC, 5, 3)
        assert (params.lam, params.mu, pota) == (F(2, 3), F(1, 3), 2)
        params, pota = certificate_params(GameKind.SWF, 5, 3)
        assert pota == 3
        params, pota = certificate_params(GameKind.MAXCUT, 5, 2)
        assert (params.lam, pota) == (F(1, 2), 2)

    def test_bwc_small_n_branch(self):
        params, _ = certificate_params(GameKind.BWC, 2, 5)
        assert params.lam == 1 + F(2, 5)

    def test_bwcf_branches_meet_at_equal_weights(self):
        n, m = 6, 3
        a = g = F(2)
        b = F(1)
        hi, _ = certificate_params(GameKind.BWCF, n, m, a, b, g)
        # alpha == gamma sits in the first branch; the second branch formula
        # evaluates to the same lambda there
        low_form = 1 + (b / a) * F(m - 1, m) + (g / a) * F(m - 1, m)
        assert hi.lam == low_form

    def test_degenerate_single_machine(self):
        for kind in ALL_KINDS:
            if kind is GameKind.MAXCUT:
                continue
            params, pota = certificate_params(kind, 3, 1, F(1), F(1), F(1))
            assert (params.lam, params.mu, pota) == (1, 0, 1)

    def test_pota_orientation(self):
        _, pota_cost = certificate_params(GameKind.BWF, 4, 2)
        assert pota_cost == F(3, 2)  # lambda / (1 - mu)
        params, pota_payoff = certificate_params(GameKind.SWC, 4, 2)
        assert pota_payoff == (1 + params.mu) / params.lam


class TestOptLowerBounds:
    def test_k22_floors(self):
        verdict = check_opt_lower_bounds(gen_bwc_multipartite(2))
        assert verdict.holds
        assert set(verdict.checks) == {"load_floor", "conflict_volume"}

    def test_k22_floor_values_tight_at_optimum(self):
        # both floors evaluate to 8 on this instance
        inst = gen_bwc_multipartite(2)
        from conflictgames.games import social_value

        assert all(
            social_value(inst, s) >= 8 for s in enumerate_states(inst)
        )

    def test_edgeless_bwf_reduces_to_load(self):
        inst = make_instance(GameKind.BWF, 3, 2)
        assert check_opt_lower_bounds(inst).holds

    def test_bwcf_both_branches_on_random_pool(self):
        for seed in range(40):
            inst = small_instance(GameKind.BWCF, seed, n_max=5)
            if state_count(inst) > 512:
                continue
            verdict = check_opt_lower_bounds(inst)
            assert verdict.holds, (seed, verdict.witness)

    def test_heavy_friendship_floor_holds_when_friends_cluster(self):
        # alpha < gamma with every friend co-located: the alpha*n constant is
        # exactly what keeps this floor true
        inst = make_instance(
            GameKind.BWCF, 2, 2, friendship_edges=[(1, 2)], alpha=1, beta=0, gamma=2
        )
        verdict = check_opt_lower_bounds(inst)
        assert verdict.holds
        from conflictgames.games import social_value

        assert social_value(inst, (1, 1)) == 4  # 2*alpha*|E+| + alpha*n = 4 exactly

    def test_payoff_kinds_trivially_hold(self):
        assert check_opt_lower_bounds(gen_swc_pos(3, F(1, 10))).holds
