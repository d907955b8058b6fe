"""Per-player values, aggregates, potentials, deviations, and validation."""

from fractions import Fraction

import pytest

from conflictgames.games import (
    GameKind,
    InvalidInstanceError,
    best_response,
    canonical_deviation_profile,
    deviation_gain,
    harmonic,
    make_instance,
    player_value,
    player_values,
    point_mass_profile,
    potential,
    social_value,
    social_value_from_players,
    uniform_profile,
    validate_profile,
)
from conflictgames.instances import (
    gen_bwc_multipartite,
    gen_bwf_cliques,
    gen_maxcut_edge,
    gen_swc_pos,
)

F = Fraction


class TestPlayerValue:
    def test_bwc_k22_split_state_costs_three_each(self):
        # one node of each part per machine: load 2 plus one same-machine conflict
        inst = gen_bwc_multipartite(2)
        state = (1, 2, 1, 2)
        assert player_values(inst, state) == (F(3),) * 4

    def test_lone_player_pays_own_load(self):
        inst = make_instance(GameKind.BWC, 1, 1)
        assert player_value(inst, (1,), 1) == 1

    def test_swc_crowded_machine_splits_value(self):
        inst = gen_swc_pos(3, F(1, 10))
        state = (1, 1, 1)
        values = player_values(inst, state)
        assert values == (F(61, 30),) * 3
        assert sum(values) == F(61, 10) == social_value(inst, state)

    def test_bwf_counts_friends_elsewhere(self):
        inst = gen_bwf_cliques(2)
        state = (1, 2, 1, 2)  # each clique split
        assert player_values(inst, state) == (F(3),) * 4

    def test_maxcut_counts_cut_edges(self):
        inst = gen_maxcut_edge()
        assert player_value(inst, (1, 2), 1) == 1
        assert player_value(inst, (1, 1), 1) == 0

    def test_player_id_out_of_range(self):
        inst = gen_maxcut_edge()
        with pytest.raises(ValueError):
            player_value(inst, (1, 2), 3)


class TestSocialValue:
    def test_bwc_k22_balanced_split_is_optimal_value(self):
        inst = gen_bwc_multipartite(2)
        assert social_value(inst, (1, 1, 2, 2)) == 8  # m**3

    def test_bwf_cliques_together(self):
        inst = gen_bwf_cliques(2)
        assert social_value(inst, (1, 1, 2, 2)) == 8

    def test_maxcut_same_partition_zero(self):
        inst = gen_maxcut_edge()
        assert social_value(inst, (1, 1)) == 0
        assert social_value(inst, (2, 2)) == 0
        assert social_value(inst, (1, 2)) == 2

    def test_aggregate_matches_player_sum(self, mixed_pool):
        import itertools

        for inst in mixed_pool:
            count = 0
            for state in itertools.product(range(1, inst.m + 1), repeat=inst.n):
                assert social_value(inst, state) == social_value_from_players(inst, state)
                count += 1
                if count >= 40:
                    break


class TestPotential:
    def test_bwc_half_social(self):
        inst = gen_bwc_multipartite(2)
        assert potential(inst, (1, 1, 2, 2)) == 4

    def test_swc_harmonic_share(self):
        inst = gen_swc_pos(3, F(1, 10))
        assert potential(inst, (1, 1, 1)) == F(61, 10) * (1 + F(1, 2) + F(1, 3)) == F(671, 60)

    def test_maxcut_cut_size(self):
        inst = gen_maxcut_edge()
        assert potential(inst, (1, 2)) == 1
        assert potential(inst, (1, 1)) == 0

    def test_harmonic_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(4) == F(25, 12)


class TestDeviationGain:
    def test_worst_ne_move_makes_things_worse(self):
        inst = gen_bwc_multipartite(2)
        state = (1, 2, 1, 2)
        for i in range(1, 5):
            other = 2 if state[i - 1] == 1 else 1
            assert deviation_gain(inst, state, i, other) == -1

    def test_staying_put_gains_nothing(self, mixed_pool):
        for inst in mixed_pool:
            state = tuple(1 + (j % inst.m) for j in range(inst.n))
            for i in range(1, inst.n + 1):
                assert deviation_gain(inst, state, i, state[i - 1]) == 0

    def test_swc_pos_leaving_the_crowd(self):
        inst = gen_swc_pos(3, F(1, 10))
        assert deviation_gain(inst, (1, 1, 1), 1, 2) == 2 - F(61, 30) == F(-1, 30)


class TestBestResponse:
    def test_at_equilibrium_stays_put(self):
        inst = gen_swc_pos(3, F(1, 10))
        for i in range(1, 4):
            assert best_response(inst, (1, 1, 1), i) == (1, 0)

    def test_returns_to_valuable_machine(self):
        inst = gen_swc_pos(3, F(1, 10))
        k, gain = best_response(inst, (2, 1, 1), 1)
        assert k == 1 and gain > 0

    def test_matches_exhaustive_scan(self):
        from conflictgames.instances import gen_random

        inst = gen_random(5, 3, GameKind.BWC, F(1, 2), seed=11)
        state = (1, 3, 2, 1, 3)
        for i in range(1, 6):
            best_k, best_gain = best_response(inst, state, i)
            gains = {k: deviation_gain(inst, state, i, k) for k in range(1, 4)}
            assert best_gain == max(gains.values())
            if best_gain > 0:
                assert best_k == min(k for k, g in gains.items() if g == best_gain)
            else:
                assert best_k == state[i - 1]


class TestValidation:
    def test_overlapping_edge_sets_rejected(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(
                GameKind.BWCF, 3, 2, conflict_edges=[(1, 2)], friendship_edges=[(2, 1)]
            )

    def test_endpoint_out_of_range(self):
        with pytest.raises(InvalidInstanceError) as err:
            make_instance(GameKind.BWC, 2, 2, conflict_edges=[(1, 5)])
        assert err.value.field == "conflict_edges"

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.BWC, 2, 2, conflict_edges=[(1, 1)])

    def test_sharing_needs_machine_values(self):
        with pytest.raises(InvalidInstanceError) as err:
            make_instance(GameKind.SWC, 2, 2, conflict_edges=[(1, 2)])
        assert err.value.field == "machine_values"

    def test_machine_values_allow_zero_but_not_negative(self):
        make_instance(GameKind.SWC, 2, 2, machine_values=[0, 1])
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.SWC, 2, 2, machine_values=[-1, 1])

    def test_maxcut_needs_two_machines(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.MAXCUT, 2, 3, conflict_edges=[(1, 2)])

    def test_weights_only_on_sharing_kinds(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(
                GameKind.BWC, 2, 2, conflict_edges=[(1, 2)], edge_weights={(1, 2): 2}
            )

    def test_weight_for_missing_edge_rejected(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(
                GameKind.SWC, 3, 2, conflict_edges=[(1, 2)],
                machine_values=[1, 1], edge_weights={(1, 3): 1},
            )

    def test_fixed_weights_enforced_for_named_kinds(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.BWC, 2, 2, alpha=2)

    def test_float_rejected(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.SWC, 2, 2, machine_values=[0.5, 1])

    def test_bwcf_weight_signs(self):
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.BWCF, 2, 2, alpha=0)
        with pytest.raises(InvalidInstanceError):
            make_instance(GameKind.BWCF, 2, 2, beta=-1)


class TestProfiles:
    def test_uniform_rows_sum_to_one(self, mixed_pool):
        for inst in mixed_pool:
            validate_profile(inst, uniform_profile(inst))
            validate_profile(inst, canonical_deviation_profile(inst))

    def test_point_mass(self):
        inst = gen_maxcut_edge()
        prof = point_mass_profile(inst, (2, 1))
        assert prof == ((F(0), F(1)), (F(1), F(0)))

    def test_bad_row_sum_rejected(self):
        inst = gen_maxcut_edge()
        bad = ((F(1, 2), F(1, 3)),) * 2
        with pytest.raises(ValueError):
            validate_profile(inst, bad)

    def test_canonical_swc_small_n_spreads_over_top_values(self):
        inst = make_instance(
            GameKind.SWC, 2, 4, machine_values=[1, 7, 3, 7], conflict_edges=[(1, 2)]
        )
        prof = canonical_deviation_profile(inst)
        assert prof[0] == (F(0), F(1, 2), F(0), F(1, 2))

    def test_canonical_swf_small_n_stays_uniform(self):
        inst = make_instance(
            GameKind.SWF, 2, 4, machine_values=[1, 7, 3, 7], friendship_edges=[(1, 2)]
        )
        assert canonical_deviation_profile(inst) == uniform_profile(inst)
