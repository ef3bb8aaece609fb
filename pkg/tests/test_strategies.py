import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdgame.engine import DOMINATOR, STALLER, GameState, apply_move
from tdgame.errors import CapabilityError, PolicyError
from tdgame.graph import (
    Graph,
    brute_force_total_domination_number,
    build_onh,
    cycle_graph,
    path_graph,
    star_graph,
)
from tdgame.hypergraph import select_special_vertices
from tdgame.smallgraphs import connected_graphs
from tdgame.strategies import (
    greedy_dominator_move,
    solve_exact_game,
    solve_exact_game_reference,
    solve_exact_total_domination_game,
    staller_myopic_move,
    staller_random_move,
    worst_staller_vs_greedy,
)

from conftest import valid_graphs


def setup(g, first=DOMINATOR):
    h = build_onh(g)
    marking = select_special_vertices(h)
    return h, marking, GameState.initial(h, marking, first)


class TestGreedyMove:
    def test_path3_center(self):
        _, _, state = setup(path_graph(3))
        assert greedy_dominator_move(state) == 1

    def test_cycle4_tie_break(self):
        _, _, state = setup(cycle_graph(4))
        assert greedy_dominator_move(state) == 0

    def test_isolated_plain_pair_tie_break(self):
        _, _, state = setup(cycle_graph(5))
        state = apply_move(state, 0)
        state = apply_move(state, 1)
        # only the plain edge {2, 4} is left; both moves give 28
        assert greedy_dominator_move(state) == 2

    def test_terminal_rejects(self):
        _, _, state = setup(path_graph(3))
        state = apply_move(state, 1)
        state = apply_move(state, 0)
        with pytest.raises(PolicyError):
            greedy_dominator_move(state)


class TestMyopicMove:
    def test_path3_after_center(self):
        _, _, state = setup(path_graph(3))
        state = apply_move(state, 1)
        assert staller_myopic_move(state) == 0

    def test_prefers_special_vertex_sacrifice(self):
        # Spider (path 0-1-2-3 plus leaves 4, 5 at vertex 3): playing the
        # special pendant 0 only cedes 23 because its neighbor's other edge
        # turns into a rebate component; every alternative cedes 29 or more.
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)])
        _, _, state = setup(g)
        assert staller_myopic_move(state) == 0

    def test_terminal_rejects(self):
        _, _, state = setup(path_graph(3))
        state = apply_move(state, 1)
        state = apply_move(state, 2)
        with pytest.raises(PolicyError):
            staller_myopic_move(state)


class TestRandomMove:
    def test_only_legal_choices(self):
        _, _, state = setup(path_graph(3))
        state = apply_move(state, 1)
        rng = random.Random(7)
        assert staller_random_move(state, rng) in {0, 2}

    def test_deterministic_for_fixed_seed(self):
        _, _, state = setup(cycle_graph(5))
        picks = {staller_random_move(state, random.Random(42)) for _ in range(5)}
        assert len(picks) == 1

    def test_terminal_rejects(self):
        _, _, state = setup(path_graph(3))
        state = apply_move(state, 1)
        state = apply_move(state, 0)
        with pytest.raises(PolicyError):
            staller_random_move(state, random.Random(0))


class TestExactSolver:
    @pytest.mark.parametrize(
        "g, dom_value, sta_value",
        [
            (path_graph(3), 2, 2),
            (path_graph(4), 3, 3),
            (cycle_graph(4), 2, 2),
            (star_graph(3), 2, 2),
        ],
    )
    def test_spot_values(self, g, dom_value, sta_value):
        h, marking, _ = setup(g)
        assert solve_exact_game(h, marking, DOMINATOR).value == dom_value
        assert solve_exact_game(h, marking, STALLER).value == sta_value

    def test_best_first_moves_achieve_value(self):
        h, marking, _ = setup(path_graph(4))
        result = solve_exact_game(h, marking, DOMINATOR)
        assert result.value == 3
        assert result.best_first_moves == (1, 2)
        assert result.explored_states > 0
        assert result.variant == "dominator-start"

    def test_edge_limit(self):
        h, marking, _ = setup(cycle_graph(25))
        with pytest.raises(CapabilityError):
            solve_exact_game(h, marking, DOMINATOR, edge_limit=22)


class TestWorstStaller:
    def test_path3(self):
        h, marking, _ = setup(path_graph(3))
        assert worst_staller_vs_greedy(h, marking).length == 2

    def test_path4_meets_bound(self):
        h, marking, _ = setup(path_graph(4))
        trace = worst_staller_vs_greedy(h, marking)
        assert trace.length == 3 == (11 * 4) // 14

    def test_star(self):
        h, marking, _ = setup(star_graph(3))
        trace = worst_staller_vs_greedy(h, marking)
        assert trace.length == 2
        assert trace.moves[0] == 0  # greedy opens with the center

    def test_staller_start_records_preliminary(self):
        h, marking, _ = setup(path_graph(4))
        trace = worst_staller_vs_greedy(h, marking, first_player=STALLER)
        assert trace.length == 3
        assert trace.turns[0].index == 0
        assert trace.turns[0].decrease >= 16

    def test_deterministic(self):
        h, marking, _ = setup(cycle_graph(6))
        t1 = worst_staller_vs_greedy(h, marking)
        t2 = worst_staller_vs_greedy(h, marking)
        assert t1 == t2

    def test_edge_limit(self):
        h, marking, _ = setup(cycle_graph(30))
        with pytest.raises(CapabilityError):
            worst_staller_vs_greedy(h, marking, edge_limit=26)


def test_memoized_equals_reference_on_all_small_graphs():
    for n in range(3, 6):
        for g in connected_graphs(n):
            h = build_onh(g)
            marking = select_special_vertices(h)
            for first in (DOMINATOR, STALLER):
                assert (
                    solve_exact_game(h, marking, first).value
                    == solve_exact_game_reference(h, first)
                )


def test_graph_side_solver_agrees_on_small_graphs():
    for n in range(3, 6):
        for g in connected_graphs(n):
            h = build_onh(g)
            marking = select_special_vertices(h)
            for first in (DOMINATOR, STALLER):
                assert (
                    solve_exact_game(h, marking, first).value
                    == solve_exact_total_domination_game(g, first)
                )


@given(valid_graphs(max_n=7))
@settings(max_examples=40, deadline=None)
def test_optimal_never_beats_greedy_and_gap_at_most_one(g):
    h = build_onh(g)
    marking = select_special_vertices(h)
    dom = solve_exact_game(h, marking, DOMINATOR).value
    sta = solve_exact_game(h, marking, STALLER).value
    assert dom <= worst_staller_vs_greedy(h, marking).length
    assert abs(dom - sta) <= 1
    total = brute_force_total_domination_number(g)
    assert total <= dom <= 3 * total - 2
