"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line.  The exhaustive sweep and the
randomized batches are shared session fixtures because several criteria
read the same reports.  All tolerances are exact integer comparisons.
"""

import random

import pytest

from tdgame import verifier
from tdgame.engine import (
    DOMINATOR,
    STALLER,
    GameState,
    apply_move,
    graph_legal_moves,
    legal_moves,
    replay_moves_on_graph,
)
from tdgame.fastplay import play as fast_play
from tdgame.graph import build_onh, cycle_graph, disjoint_union, path_graph, star_graph
from tdgame.hypergraph import select_special_vertices
from tdgame.smallgraphs import connected_graphs
from tdgame.strategies import (
    solve_exact_game,
    solve_exact_game_reference,
    solve_exact_total_domination_game,
)

# (count, n, p) batches: 500 worst-Staller graphs of order <= 40, then
# 100 myopic and 100 random graphs of order <= 2000.
WORST_BATCHES = [
    (120, 8, 0.30),
    (120, 12, 0.22),
    (100, 16, 0.18),
    (80, 20, 0.16),
    (40, 24, 0.15),
    (20, 28, 0.14),
    (12, 32, 0.14),
    (5, 36, 0.15),
    (3, 40, 0.18),
]
LARGE_BATCHES = [
    (40, 60, 0.0833),
    (30, 150, 0.034),
    (15, 300, 0.017),
    (10, 500, 0.0164),
    (4, 1000, 0.0094),
    (1, 2000, 0.0053),
]
MASTER_SEED = 20240


@pytest.fixture(scope="session")
def exhaustive_report():
    return verifier.sweep_exhaustive(7)


@pytest.fixture(scope="session")
def random_report():
    merged = verifier.VerificationReport(config={"mode": "acceptance-random"})
    for batch_no, (count, n, p) in enumerate(WORST_BATCHES):
        merged.merge(
            verifier.sweep_random(
                count, n, p, seed=MASTER_SEED + batch_no, staller="worst",
                worst_limit=40,
            )
        )
    for batch_no, (count, n, p) in enumerate(LARGE_BATCHES):
        for kind in ("myopic", "random"):
            merged.merge(
                verifier.sweep_random(
                    count, n, p, seed=MASTER_SEED + 100 + batch_no, staller=kind,
                )
            )
    return merged


def asserted_failures(report):
    return {
        cid: cnt
        for cid, cnt in report.failed.items()
        if cid not in report.informational_ids
    }


def test_criterion_1_length_bounds_exhaustive(exhaustive_report):
    rep = exhaustive_report
    bad = {cid: rep.failed[cid] for cid in ("B5", "B6") if cid in rep.failed}
    ok = not bad and rep.config["instances"] >= 4000
    print(
        f"criterion 1: {'PASS' if ok else 'FAIL'} - 11n/14 and (11n+6)/14 on "
        f"{rep.config['instances']} instances, violations={bad}"
    )
    assert ok


def test_criterion_2_sandwich_and_start_gap(exhaustive_report):
    rep = exhaustive_report
    bad = {
        cid: rep.failed[cid]
        for cid in ("B1", "B2", "B3", "B4")
        if cid in rep.failed
    }
    ok = not bad
    print(
        f"criterion 2: {'PASS' if ok else 'FAIL'} - domination sandwich and "
        f"|start gap| <= 1, violations={bad}"
    )
    assert ok


def test_criterion_3_greedy_trace_lemma_suite(random_report):
    rep = random_report
    traces = rep.passed.get("L1", 0) + rep.failed.get("L1", 0)
    bad = asserted_failures(rep)
    ok = not bad and traces == 700
    print(
        f"criterion 3: {'PASS' if ok else 'FAIL'} - L1..L7 on {traces} seeded "
        f"random traces (500 worst <=40, 200 myopic/random <=2000), "
        f"failures={bad}"
    )
    assert ok


def test_criterion_4_exact_spot_values():
    expected = [
        (path_graph(3), DOMINATOR, 2),
        (path_graph(3), STALLER, 2),
        (path_graph(4), DOMINATOR, 3),
        (path_graph(4), STALLER, 3),
        (cycle_graph(4), DOMINATOR, 2),
        (star_graph(3), DOMINATOR, 2),
    ]
    got = []
    for g, first, value in expected:
        h = build_onh(g)
        marking = select_special_vertices(h)
        got.append(solve_exact_game(h, marking, first).value == value)
    ok = all(got)
    print(f"criterion 4: {'PASS' if ok else 'FAIL'} - solver spot values {got}")
    assert ok


def test_criterion_5_potential_identities(exhaustive_report, random_report):
    bad = {}
    for name, rep in (("exhaustive", exhaustive_report), ("random", random_report)):
        for cid in ("F0", "TEL"):
            if rep.failed.get(cid):
                bad[f"{name}:{cid}"] = rep.failed[cid]
    checked = sum(
        rep.passed.get(cid, 0)
        for rep in (exhaustive_report, random_report)
        for cid in ("F0", "TEL")
    )
    ok = not bad
    print(
        f"criterion 5: {'PASS' if ok else 'FAIL'} - f0 = 22n - 7x0 and "
        f"telescoping on {checked} trace checks, violations={bad}"
    )
    assert ok


def test_criterion_6_formulation_equivalence():
    rng = random.Random(MASTER_SEED)
    replays = 0
    for _ in range(200):
        n = rng.randint(4, 12)
        g = verifier.random_valid_graph(n, rng.uniform(0.25, 0.5), rng)
        h = build_onh(g)
        marking = select_special_vertices(h)
        # hypergraph-side play must be a legal total domination game
        trace = fast_play(h, marking, staller="random", rng=rng)
        assert replay_moves_on_graph(g, trace.moves) == frozenset(range(g.n))
        # graph-side play must be a legal transversal game
        dominated = frozenset()
        state = GameState.initial(h, marking)
        while True:
            legal = sorted(graph_legal_moves(g, dominated))
            if not legal:
                break
            v = rng.choice(legal)
            dominated = dominated | g.adjacency[v]
            assert v in legal_moves(state)
            state = apply_move(state, v)
            assert state.covered == dominated
        assert state.game_over
        replays += 1

    small = [g for n in range(3, 7) for g in connected_graphs(n)]
    small.append(disjoint_union(connected_graphs(3)[0], connected_graphs(3)[1]))
    agree = 0
    for g in small:
        h = build_onh(g)
        marking = select_special_vertices(h)
        for first in (DOMINATOR, STALLER):
            assert (
                solve_exact_game(h, marking, first).value
                == solve_exact_total_domination_game(g, first)
            )
            agree += 1
    print(
        f"criterion 6: PASS - {replays} two-way replays (n <= 12), minimax "
        f"agreement on {agree} solves (all connected n <= 6)"
    )


def test_criterion_7_memoization_soundness():
    checked = 0
    for n in range(3, 6):
        for g in connected_graphs(n):
            h = build_onh(g)
            marking = select_special_vertices(h)
            for first in (DOMINATOR, STALLER):
                assert (
                    solve_exact_game(h, marking, first).value
                    == solve_exact_game_reference(h, first)
                )
                checked += 1
    print(
        f"criterion 7: PASS - memoized solver equals plain recursion on "
        f"{checked} solves (all connected n <= 5, both starts)"
    )
