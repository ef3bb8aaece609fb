"""Player policies and exact solvers.

Dominator's greedy strategy picks the legal vertex with the maximum weight
decrease.  Staller baselines of increasing strength: uniform random, myopic
(one-ply minimum decrease), and the exact worst case computed by branching
over all Staller choices against the fixed greedy Dominator.

The minimax solvers treat game length as the value: Dominator minimizes,
Staller maximizes.  States are keyed by (uncovered edge bitmask, mover);
parity of the move count does not determine the mover across branches of
different lengths, so the mover belongs in the key.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import fastplay
from .engine import DOMINATOR, STALLER, GameState, Trace, legal_moves
from .errors import CapabilityError, PolicyError
from .fastplay import IncrementalGame
from .graph import Graph
from .hypergraph import LabeledHypergraph, SpecialMarking
from .potential import DEFAULT_SCHEME, WeightScheme, move_decrease

#: Edge-count cap for the full minimax solver.
DEFAULT_SOLVE_EDGE_LIMIT = 22
#: Edge-count cap for worst-Staller search (only Staller branches).
DEFAULT_WORST_EDGE_LIMIT = 26


def greedy_dominator_move(
    state: GameState, scheme: WeightScheme = DEFAULT_SCHEME
) -> int:
    """Legal vertex maximizing the decrease; ties go to the smallest id."""
    best_v = -1
    best_d = None
    for v in sorted(legal_moves(state)):
        d = move_decrease(state, v, scheme)
        if best_d is None or d > best_d:
            best_d, best_v = d, v
    if best_v < 0:
        raise PolicyError("greedy move requested in a finished game")
    return best_v


def staller_myopic_move(
    state: GameState, scheme: WeightScheme = DEFAULT_SCHEME
) -> int:
    """Legal vertex minimizing the decrease; ties go to the smallest id."""
    best_v = -1
    best_d = None
    for v in sorted(legal_moves(state)):
        d = move_decrease(state, v, scheme)
        if best_d is None or d < best_d:
            best_d, best_v = d, v
    if best_v < 0:
        raise PolicyError("myopic move requested in a finished game")
    return best_v


def staller_random_move(state: GameState, rng: random.Random) -> int:
    """Uniform choice over legal vertices, driven by the caller's rng."""
    legal = sorted(legal_moves(state))
    if not legal:
        raise PolicyError("random move requested in a finished game")
    return rng.choice(legal)


def make_dominator_policy(scheme: WeightScheme = DEFAULT_SCHEME):
    return lambda state: greedy_dominator_move(state, scheme)


def make_staller_policy(
    kind: str,
    scheme: WeightScheme = DEFAULT_SCHEME,
    rng: random.Random | None = None,
):
    if kind == "myopic":
        return lambda state: staller_myopic_move(state, scheme)
    if kind == "random":
        if rng is None:
            raise PolicyError("random staller needs an rng")
        return lambda state: staller_random_move(state, rng)
    raise PolicyError(f"unknown staller kind {kind!r}")


@dataclass(frozen=True)
class SolveResult:
    variant: str
    value: int
    best_first_moves: tuple[int, ...]
    explored_states: int

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "value": self.value,
            "best_first_moves": list(self.best_first_moves),
            "explored_states": self.explored_states,
        }


def _vertex_masks(h: LabeledHypergraph) -> list[int]:
    masks = [0] * h.num_vertices
    for e, (_, members) in enumerate(h.edges):
        for v in members:
            masks[v] |= 1 << e
    return masks


def solve_exact_game(
    h: LabeledHypergraph,
    marking: SpecialMarking | None = None,
    first_player: str = DOMINATOR,
    edge_limit: int = DEFAULT_SOLVE_EDGE_LIMIT,
) -> SolveResult:
    """Exact game length under optimal play from both sides.

    Memoized on (uncovered bitmask, mover); moves that cover identical edge
    sets are collapsed.  The marking plays no role in legality and is
    accepted only for interface symmetry.
    """
    del marking
    m = h.edge_count
    if m > edge_limit:
        raise CapabilityError(f"{m} edges exceed solve limit {edge_limit}")
    vmasks = [vm for vm in _vertex_masks(h) if vm]
    full = (1 << m) - 1
    memo: dict[tuple[int, bool], int] = {}

    def value(mask: int, dominator_to_move: bool) -> int:
        if mask == 0:
            return 0
        key = (mask, dominator_to_move)
        cached = memo.get(key)
        if cached is not None:
            return cached
        children = {mask & ~vm for vm in vmasks if mask & vm}
        best = None
        for child in children:
            val = 1 + value(child, not dominator_to_move)
            if best is None:
                best = val
            elif dominator_to_move:
                best = min(best, val)
            else:
                best = max(best, val)
        memo[key] = best
        return best

    dom_first = first_player == DOMINATOR
    total = value(full, dom_first)
    all_masks = _vertex_masks(h)
    best_moves = tuple(
        v
        for v in range(h.num_vertices)
        if all_masks[v] and 1 + value(full & ~all_masks[v], not dom_first) == total
    )
    variant = "dominator-start" if dom_first else "staller-start"
    return SolveResult(variant, total, best_moves, len(memo))


def solve_exact_game_reference(
    h: LabeledHypergraph, first_player: str = DOMINATOR
) -> int:
    """Plain recursion without memoization or move dedup; tiny inputs only."""
    vmasks = _vertex_masks(h)
    full = (1 << h.edge_count) - 1

    def value(mask: int, dominator_to_move: bool) -> int:
        if mask == 0:
            return 0
        best = None
        for vm in vmasks:
            if not mask & vm:
                continue
            val = 1 + value(mask & ~vm, not dominator_to_move)
            if best is None:
                best = val
            elif dominator_to_move:
                best = min(best, val)
            else:
                best = max(best, val)
        return best

    return value(full, first_player == DOMINATOR)


def solve_exact_total_domination_game(
    g: Graph, first_player: str = DOMINATOR
) -> int:
    """Graph-side twin of the solver, phrased purely in dominated vertices.

    Kept independent of the hypergraph machinery so the two formulations can
    be checked against each other.
    """
    full = frozenset(range(g.n))
    memo: dict[tuple[frozenset[int], bool], int] = {}

    def value(dominated: frozenset[int], dominator_to_move: bool) -> int:
        if dominated == full:
            return 0
        key = (dominated, dominator_to_move)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = None
        for v in range(g.n):
            if g.adjacency[v] <= dominated:
                continue
            val = 1 + value(dominated | g.adjacency[v], not dominator_to_move)
            if best is None:
                best = val
            elif dominator_to_move:
                best = min(best, val)
            else:
                best = max(best, val)
        memo[key] = best
        return best

    return value(frozenset(), first_player == DOMINATOR)


def worst_staller_vs_greedy(
    h: LabeledHypergraph,
    marking: SpecialMarking | None = None,
    scheme: WeightScheme = DEFAULT_SCHEME,
    first_player: str = DOMINATOR,
    edge_limit: int = DEFAULT_WORST_EDGE_LIMIT,
) -> Trace:
    """Longest game any Staller can force against the greedy Dominator.

    Dominator is deterministic, so the search branches only at Staller
    decisions; states are memoized on (uncovered bitmask, mover).  Among
    maximizing lines the lexicographically least move sequence is returned,
    which makes every reported trace reproducible.
    """
    if marking is None:
        marking = SpecialMarking.empty()
    m = h.edge_count
    if m > edge_limit:
        raise CapabilityError(f"{m} edges exceed worst-case limit {edge_limit}")
    game = IncrementalGame(h, marking, scheme)
    static = game.static_mask
    memo: dict[tuple[int, bool], tuple[int, int]] = {}

    def search(dominator_to_move: bool) -> int:
        mask = game.uncovered_mask
        if mask == 0:
            return 0
        key = (mask, dominator_to_move)
        cached = memo.get(key)
        if cached is not None:
            return cached[0]
        if dominator_to_move:
            v = fastplay.greedy_move(game)
            record = game.apply(v)
            length = 1 + search(False)
            game.undo(record)
        else:
            length = -1
            v = -1
            seen_children = set()
            for u in range(len(game.degree)):
                if game.degree[u] <= 0:
                    continue
                child = mask & ~static[u]
                if child in seen_children:
                    continue
                seen_children.add(child)
                record = game.apply(u)
                val = 1 + search(True)
                game.undo(record)
                if val > length:
                    length, v = val, u
        memo[key] = (length, v)
        return length

    dom_first = first_player == DOMINATOR
    search(dom_first)

    moves = []
    walker = IncrementalGame(h, marking, scheme)
    dominator_to_move = dom_first
    while walker.uncovered_mask:
        _, v = memo[(walker.uncovered_mask, dominator_to_move)]
        moves.append(v)
        walker.apply(v)
        dominator_to_move = not dominator_to_move
    return fastplay.play(
        h, marking, scheme, first_player=first_player, moves=moves
    )
