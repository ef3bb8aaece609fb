import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdgame.engine import DOMINATOR, GameState, apply_move, legal_moves
from tdgame.errors import IllegalMoveError, InternalConsistencyError
from tdgame.graph import build_onh, cycle_graph, path_graph, star_graph
from tdgame.hypergraph import residual_stats, select_special_vertices
from tdgame.potential import (
    WeightScheme,
    classify_phases,
    move_decrease,
    weight_of_residual,
)

from conftest import valid_graphs


def initial_state(g):
    h = build_onh(g)
    marking = select_special_vertices(h)
    return GameState.initial(h, marking)


def weight_now(state, scheme=WeightScheme()):
    stats = residual_stats(state.hypergraph, state.marking, state.covered)
    return weight_of_residual(stats, scheme)


class TestWeight:
    def test_path3_initial(self):
        assert weight_now(initial_state(path_graph(3))) == 66

    def test_star_initial(self):
        # 22 * 4 minus one rebate component
        assert weight_now(initial_state(star_graph(3))) == 81

    def test_empty_residual(self):
        state = initial_state(path_graph(3))
        stats = residual_stats(
            state.hypergraph, state.marking, frozenset({0, 1, 2})
        )
        assert weight_of_residual(stats) == 0

    def test_default_scheme_pairs_sum_to_22(self):
        scheme = WeightScheme()
        assert scheme.vertex_nonspecial + scheme.edge_nonspecial == 22
        assert scheme.vertex_special + scheme.edge_special == 22
        assert scheme.is_default
        assert not scheme.scaled(3).is_default


class TestMoveDecrease:
    def test_path3_all_moves(self):
        state = initial_state(path_graph(3))
        assert [move_decrease(state, v) for v in (0, 1, 2)] == [29, 37, 29]

    def test_cycle4(self):
        state = initial_state(cycle_graph(4))
        assert move_decrease(state, 0) == 44

    def test_isolated_plain_pair_gives_28(self):
        # cycle C5 after moves 0, 1 leaves the single plain edge {2, 4}
        state = initial_state(cycle_graph(5))
        state = apply_move(state, 0)
        state = apply_move(state, 1)
        assert sorted(legal_moves(state)) == [2, 4]
        assert move_decrease(state, 2) == 28
        assert move_decrease(state, 4) == 28

    def test_illegal_move(self):
        state = initial_state(path_graph(3))
        state = apply_move(state, 1)
        state = apply_move(state, 0)
        with pytest.raises(IllegalMoveError):
            move_decrease(state, 1)


class TestClassifyPhases:
    def test_all_phase1(self):
        phases = classify_phases([44, 44], [2, 2])
        assert phases.p1 == (1, 2)
        assert phases.p2 == phases.p3 == phases.p4 == ()
        assert (phases.b1, phases.b2, phases.b3, phases.b4) == (2, 2, 2, 2)

    def test_path3_trace(self):
        phases = classify_phases([37, 29], [2, 1])
        assert phases.p1 == ()
        assert phases.p2 == ()
        assert phases.p3 == (1,)
        assert phases.p4 == (2,)
        assert (phases.b1, phases.b2) == (0, 0)
        assert (phases.b3, phases.b4) == (1, 2)

    def test_empty_trace(self):
        phases = classify_phases([], [])
        assert phases.turn_count == 0
        assert (phases.b1, phases.b2, phases.b3, phases.b4) == (0, 0, 0, 0)

    def test_phase2_window(self):
        phases = classify_phases([39, 16, 38, 16, 30], [3, 3, 3, 2, 2])
        assert phases.p1 == ()
        assert phases.p2 == (1, 2, 3, 4)
        assert phases.p3 == (5,)
        assert phases.b2 == 4

    def test_degree_zero_mid_game_rejected(self):
        with pytest.raises(InternalConsistencyError):
            classify_phases([30, 30], [2, 0])

    def test_phase_of(self):
        phases = classify_phases([44, 44, 20, 28], [2, 2, 2, 1])
        assert [phases.phase_of(i) for i in (1, 2, 3, 4)] == [1, 1, 3, 4]


def random_playout(g, rnd, scheme=WeightScheme()):
    """Walk random legal moves to the end, yielding states before each move."""
    state = initial_state(g)
    while True:
        legal = sorted(legal_moves(state))
        if not legal:
            return
        v = rnd.choice(legal)
        yield state, v
        state = apply_move(state, v)


@given(valid_graphs(max_n=8), st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_every_move_decreases_by_at_least_16(g, rnd):
    for state, _ in random_playout(g, rnd):
        for v in legal_moves(state):
            assert move_decrease(state, v) >= 16


@given(valid_graphs(max_n=8), st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_telescoping_over_random_playout(g, rnd):
    total = 0
    f0 = weight_now(initial_state(g))
    for state, v in random_playout(g, rnd):
        total += move_decrease(state, v)
    assert total == f0


@given(valid_graphs(max_n=9))
@settings(max_examples=60)
def test_initial_weight_identity(g):
    state = initial_state(g)
    stats = residual_stats(state.hypergraph, state.marking, frozenset())
    assert weight_of_residual(stats) == 22 * g.n - 7 * stats.discount_components


@given(valid_graphs(max_n=7), st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_greedy_argmax_invariant_under_scaling(g, rnd):
    scaled = WeightScheme().scaled(5)
    for state, _ in random_playout(g, rnd):
        plain = {v: move_decrease(state, v) for v in legal_moves(state)}
        big = {v: move_decrease(state, v, scaled) for v in legal_moves(state)}
        best_plain = {v for v, d in plain.items() if d == max(plain.values())}
        best_big = {v for v, d in big.items() if d == max(big.values())}
        assert best_plain == best_big
