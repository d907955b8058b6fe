"""Enumeration oracle: optima, Nash sets, mixed verification, worst CCE."""

import itertools
from fractions import Fraction

import pytest

from conflictgames.games import (
    GameKind,
    make_instance,
    player_value,
    point_mass_profile,
    social_value,
    uniform_profile,
)
from conflictgames.instances import (
    gen_bwc_multipartite,
    gen_bwcf_lower,
    gen_bwf_cliques,
    gen_maxcut_edge,
    gen_path4,
    gen_random,
    gen_swc_pos,
    gen_swf_nostrong,
)
from conflictgames.oracle import (
    OracleLimits,
    StateSpaceExceeded,
    enumerate_states,
    equilibrium_report,
    expected_player_value,
    optimum,
    profile_expected_value,
    pure_nash_set,
    state_count,
    strong_nash_set,
    strong_nash_set_by_coalitions,
    verify_mixed_ne,
    worst_cce_value,
    worst_social_state,
)

from conftest import ALL_KINDS, small_instance

F = Fraction


class TestEnumeration:
    @pytest.mark.parametrize("n,m,count", [(4, 2, 16), (3, 3, 27), (9, 3, 19683)])
    def test_state_counts(self, n, m, count):
        inst = make_instance(GameKind.BWC, n, m)
        states = list(enumerate_states(inst))
        assert len(states) == count == state_count(inst)
        assert states == sorted(states)  # lexicographic

    def test_cap_raises_with_limit_name(self):
        inst = make_instance(GameKind.BWC, 10, 3)
        with pytest.raises(StateSpaceExceeded) as err:
            enumerate_states(inst, OracleLimits(max_states=100))
        assert err.value.limit_name == "max_states"


class TestOptimum:
    def test_multipartite_m2(self):
        state, value = optimum(gen_bwc_multipartite(2))
        assert value == 8 and state == (1, 1, 2, 2)  # lex-smallest optimum

    def test_path4(self):
        assert optimum(gen_path4())[1] == 8

    def test_swc_pos(self):
        assert optimum(gen_swc_pos(3, F(1, 10)))[1] == F(121, 10)

    def test_exhaustive_scan_agrees(self, mixed_pool):
        for inst in mixed_pool:
            if state_count(inst) > 512:
                continue
            values = {
                s: social_value(inst, s) for s in enumerate_states(inst)
            }
            extremal = min(values.values()) if inst.kind.minimizes else max(values.values())
            state, value = optimum(inst)
            assert value == extremal
            assert state == min(s for s, v in values.items() if v == extremal)

    def test_worst_social_state_is_other_extreme(self):
        inst = gen_bwc_multipartite(2)
        state, value = worst_social_state(inst)
        assert value == max(social_value(inst, s) for s in enumerate_states(inst))


class TestPureNash:
    def test_swc_pos_unique(self):
        ne = pure_nash_set(gen_swc_pos(3, F(1, 10)))
        assert ne == [((1, 1, 1), F(61, 10))]

    def test_multipartite_m2_exact_set(self):
        ne = dict(pure_nash_set(gen_bwc_multipartite(2)))
        assert ne == {
            (1, 1, 2, 2): 8,
            (2, 2, 1, 1): 8,
            (1, 2, 1, 2): 12,
            (1, 2, 2, 1): 12,
            (2, 1, 1, 2): 12,
            (2, 1, 2, 1): 12,
        }

    def test_single_player(self):
        inst = make_instance(GameKind.SWC, 1, 3, machine_values=[1, 5, 2])
        assert pure_nash_set(inst) == [((2,), F(5))]

    def test_never_empty_on_pool(self, mixed_pool):
        for inst in mixed_pool:
            if state_count(inst) <= 512:
                assert pure_nash_set(inst)

    def test_definition_against_direct_check(self):
        inst = small_instance(GameKind.BWCF, 3, n_max=4)
        from conflictgames.games import deviation_gain

        expected = []
        for s in enumerate_states(inst):
            if all(
                deviation_gain(inst, s, i, k) <= 0
                for i in range(1, inst.n + 1)
                for k in range(1, inst.m + 1)
            ):
                expected.append(s)
        assert [s for s, _ in pure_nash_set(inst)] == expected


class TestStrongNash:
    def test_path4_set(self):
        strong = dict(strong_nash_set(gen_path4()))
        assert strong == {
            (1, 2, 1, 2): 8,
            (2, 1, 2, 1): 8,
            (1, 2, 2, 1): 10,
            (2, 1, 1, 2): 10,
        }

    def test_swf_nostrong_empty(self):
        assert strong_nash_set(gen_swf_nostrong(F(1, 10))) == []

    def test_optimum_is_strong_for_two_machine_conflicts(self):
        for seed in range(6):
            inst = gen_random(5, 2, GameKind.BWC, F(1, 2), seed=seed)
            rep = equilibrium_report(inst)
            assert rep.optimum in rep.strong_ne

    def test_two_machine_friendship_strong_poa_bound(self):
        # optimum stays strong and the worst strong NE is within 4/3, n <= 8
        for seed in range(8):
            n = 3 + seed % 6
            inst = gen_random(n, 2, GameKind.BWF, F(1, 2), seed=40 + seed)
            rep = equilibrium_report(inst)
            assert rep.optimum in rep.strong_ne
            assert rep.strong_poa <= F(4, 3)

    def test_fast_scan_matches_coalition_reference(self):
        for kind in ALL_KINDS:
            for seed in range(3):
                inst = small_instance(kind, seed, n_max=3)
                assert strong_nash_set(inst) == strong_nash_set_by_coalitions(inst)

    def test_subset_of_pure(self, mixed_pool):
        for inst in mixed_pool:
            if inst.n > 8 or state_count(inst) > 512:
                continue
            pure = set(s for s, _ in pure_nash_set(inst))
            strong = set(s for s, _ in strong_nash_set(inst))
            assert strong <= pure

    def test_player_cap(self):
        inst = make_instance(GameKind.BWC, 9, 2)
        with pytest.raises(StateSpaceExceeded) as err:
            strong_nash_set(inst)
        assert err.value.limit_name == "strong_max_players"


class TestExpectedValues:
    def test_uniform_multipartite_closed_form(self):
        for m in (2, 3):
            inst = gen_bwc_multipartite(m)
            prof = uniform_profile(inst)
            expected = F(2 * inst.n - 1, m)
            for i in (1, inst.n):
                for k in (1, m):
                    assert expected_player_value(inst, prof, i, k) == expected

    def test_uniform_bwcf_lower_closed_form(self):
        inst = gen_bwcf_lower(2, 1, 1, 1)
        prof = uniform_profile(inst)
        n, m = inst.n, inst.m
        expected = 1 * (1 + F(n - 1, m)) + 1 * F(n - m, m) + 1 * F((m - 1) ** 2, m)
        assert expected == 4
        assert expected_player_value(inst, prof, 1, 2) == expected

    def test_point_mass_profile_matches_player_value(self, mixed_pool):
        for inst in mixed_pool:
            if state_count(inst) > 128:
                continue
            for state in itertools.islice(enumerate_states(inst), 16):
                prof = point_mass_profile(inst, state)
                for i in range(1, inst.n + 1):
                    for k in range(1, inst.m + 1):
                        moved = state[: i - 1] + (k,) + state[i:]
                        assert expected_player_value(inst, prof, i, k) == player_value(
                            inst, moved, i
                        )

    def test_sharing_count_distribution(self):
        # two other players on machine 1 w.p. 1/2 each: E[p/(1+Y)] enumerated by hand
        inst = make_instance(
            GameKind.SWC, 3, 2, machine_values=[6, 0], conflict_edges=[]
        )
        prof = uniform_profile(inst)
        # Y ~ Bin(2, 1/2): E[6/(1+Y)] = 6*(1/4 + 1/2/2 + 1/4/3) = 6*(1/4+1/4+1/12)
        assert expected_player_value(inst, prof, 1, 1) == 6 * (F(1, 4) + F(1, 4) + F(1, 12))


class TestMixedNe:
    def test_uniform_is_ne_on_multipartite(self):
        for m in (2, 3):
            inst = gen_bwc_multipartite(m)
            assert verify_mixed_ne(inst, uniform_profile(inst))

    def test_uniform_is_ne_on_bwcf_lower(self):
        inst = gen_bwcf_lower(2, 1, 1, 1)
        assert verify_mixed_ne(inst, uniform_profile(inst))
        inst = gen_bwcf_lower(2, 1, 2, 3)
        assert verify_mixed_ne(inst, uniform_profile(inst))

    def test_point_mass_at_non_ne_rejected(self):
        inst = gen_swc_pos(3, F(1, 10))
        prof = point_mass_profile(inst, (2, 1, 1))
        assert not verify_mixed_ne(inst, prof)

    def test_point_mass_at_pure_ne_accepted(self):
        inst = gen_swc_pos(3, F(1, 10))
        assert verify_mixed_ne(inst, point_mass_profile(inst, (1, 1, 1)))


class TestWorstCce:
    def test_multipartite_value(self):
        sol = worst_cce_value(gen_bwc_multipartite(2))
        assert sol.value == 14
        assert sum(q for _, q in sol.distribution) == 1

    def test_maxcut_edge(self):
        assert worst_cce_value(gen_maxcut_edge()).value == 1

    def test_single_player_forces_best_play(self):
        inst = make_instance(GameKind.SWC, 1, 3, machine_values=[1, 5, 2])
        assert worst_cce_value(inst).value == 5

    def test_no_better_than_worst_pure_ne(self):
        for kind in ALL_KINDS:
            inst = small_instance(kind, 1, n_max=4)
            if state_count(inst) > 100:
                continue
            ne_values = [v for _, v in pure_nash_set(inst)]
            worst_ne = max(ne_values) if inst.kind.minimizes else min(ne_values)
            cce = worst_cce_value(inst).value
            assert cce >= worst_ne if inst.kind.minimizes else cce <= worst_ne

    def test_distribution_satisfies_cce_constraints(self):
        inst = gen_bwc_multipartite(2)
        sol = worst_cce_value(inst)
        for i in range(1, inst.n + 1):
            current = sum(q * player_value(inst, s, i) for s, q in sol.distribution)
            for k in range(1, inst.m + 1):
                dev = sum(
                    q * player_value(inst, s[: i - 1] + (k,) + s[i:], i)
                    for s, q in sol.distribution
                )
                assert dev >= current  # cost kind: deviating never helps

    def test_lp_cap(self):
        inst = make_instance(GameKind.BWC, 12, 2)
        with pytest.raises(StateSpaceExceeded) as err:
            worst_cce_value(inst)
        assert err.value.limit_name == "lp_max_states"


class TestEquilibriumReport:
    def test_multipartite_ratios(self):
        rep = equilibrium_report(gen_bwc_multipartite(2))
        assert (rep.poa, rep.pos) == (F(3, 2), 1)

    def test_path4_strong_poa(self):
        rep = equilibrium_report(gen_path4())
        assert rep.strong_poa == F(5, 4)

    def test_cliques_poa(self):
        rep = equilibrium_report(gen_bwf_cliques(2), with_strong=False)
        assert rep.poa == F(3, 2)
        assert rep.strong_poa is None

    def test_balancing_pos_is_one_everywhere(self):
        for kind in (GameKind.BWC, GameKind.BWF, GameKind.BWCF):
            for seed in range(4):
                inst = small_instance(kind, seed, n_max=4)
                rep = equilibrium_report(inst, with_strong=False)
                assert rep.pos == 1
                assert rep.optimum in rep.pure_ne

    def test_ratios_at_least_one(self, mixed_pool):
        for inst in mixed_pool:
            if state_count(inst) > 512 or inst.n > 8:
                continue
            rep = equilibrium_report(inst)
            assert rep.poa is None or rep.poa >= rep.pos >= 1
