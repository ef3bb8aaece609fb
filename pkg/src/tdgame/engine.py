"""Transversal-game state machine on labeled hypergraphs with trace recording.

Via the open neighborhood hypergraph this doubles as the total domination
game: covering the edge labeled ``u`` is the same event as totally dominating
the vertex ``u``, so move legality agrees between the two formulations.  An
independent graph-side legality checker is provided to test exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import IllegalMoveError, PolicyError
from .graph import Graph
from .hypergraph import LabeledHypergraph, SpecialMarking, residual_stats
from .potential import (
    DEFAULT_SCHEME,
    PhasePartition,
    WeightScheme,
    classify_phases,
    weight_of_residual,
)

DOMINATOR = "dominator"
STALLER = "staller"


def other_player(player: str) -> str:
    return STALLER if player == DOMINATOR else DOMINATOR


@dataclass(frozen=True)
class GameState:
    """Immutable position: covered edge labels plus the move history."""

    hypergraph: LabeledHypergraph
    marking: SpecialMarking
    covered: frozenset[int]
    moves: tuple[int, ...]
    to_move: str

    @classmethod
    def initial(
        cls,
        h: LabeledHypergraph,
        marking: SpecialMarking | None = None,
        first_player: str = DOMINATOR,
    ) -> "GameState":
        if marking is None:
            marking = SpecialMarking.empty()
        return cls(h, marking, frozenset(), (), first_player)

    @property
    def game_over(self) -> bool:
        return len(self.covered) == self.hypergraph.edge_count


def legal_moves(state: GameState) -> frozenset[int]:
    """Vertices lying in at least one uncovered edge; empty iff game over."""
    out: set[int] = set()
    for label, members in state.hypergraph.edges:
        if label not in state.covered:
            out |= members
    return frozenset(out)


def apply_move(state: GameState, v: int) -> GameState:
    newly = frozenset(
        label
        for label, members in state.hypergraph.edges
        if label not in state.covered and v in members
    )
    if not newly:
        raise IllegalMoveError(f"vertex {v} covers no uncovered edge")
    return replace(
        state,
        covered=state.covered | newly,
        moves=state.moves + (v,),
        to_move=other_player(state.to_move),
    )


@dataclass(frozen=True)
class TurnRecord:
    index: int
    player: str
    vertex: int
    decrease: int
    delta_before: int
    isolated_edge_move: bool
    f_after: int
    phase: int

    def to_json_dict(self) -> dict:
        return {
            "i": self.index,
            "player": self.player,
            "vertex": self.vertex,
            "d": self.decrease,
            "delta_before": self.delta_before,
            "isolated_edge_move": self.isolated_edge_move,
            "f_after": self.f_after,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class Trace:
    """Per-turn record of a finished game.

    Dominator-start games use turn indices 1..j.  When Staller opens, her
    move is the preliminary turn with index 0 (phase 0) and the machinery of
    phases applies to the remaining turns 1..j.
    """

    num_vertices: int
    f0: int
    first_player: str
    turns: tuple[TurnRecord, ...]
    phases: PhasePartition

    @property
    def length(self) -> int:
        return len(self.turns)

    @property
    def moves(self) -> tuple[int, ...]:
        return tuple(r.vertex for r in self.turns)

    @property
    def main_turns(self) -> tuple[TurnRecord, ...]:
        """Turns 1..j, excluding a Staller-start preliminary move."""
        return tuple(r for r in self.turns if r.index >= 1)

    def to_json_dict(self) -> dict:
        return {
            "n": self.num_vertices,
            "f0": self.f0,
            "length": self.length,
            "first_player": self.first_player,
            "turns": [r.to_json_dict() for r in self.turns],
        }


Policy = Callable[[GameState], int]


def play_game(
    h: LabeledHypergraph,
    marking: SpecialMarking,
    dominator_policy: Policy,
    staller_policy: Policy,
    first_player: str = DOMINATOR,
    scheme: WeightScheme = DEFAULT_SCHEME,
) -> Trace:
    """Run both policies to termination and record the full trace.

    Residual quantities are recomputed from scratch every turn; this is the
    reference game loop that the incremental engine must reproduce.
    """
    state = GameState.initial(h, marking, first_player)
    stats = residual_stats(h, marking, state.covered)
    f0 = weight_of_residual(stats, scheme)
    prev_f = f0
    index = 1 if first_player == DOMINATOR else 0
    raw: list[tuple[int, str, int, int, int, bool, int]] = []
    while not state.game_over:
        mover = state.to_move
        policy = dominator_policy if mover == DOMINATOR else staller_policy
        v = policy(state)
        legal = legal_moves(state)
        if v not in legal:
            raise PolicyError(f"{mover} policy returned illegal vertex {v}")
        component = next(c for c in stats.components if v in c.vertices)
        isolated = component.is_single_edge
        delta_before = stats.max_degree
        state = apply_move(state, v)
        stats = residual_stats(h, marking, state.covered)
        f_after = weight_of_residual(stats, scheme)
        raw.append((index, mover, v, prev_f - f_after, delta_before, isolated, f_after))
        prev_f = f_after
        index += 1
    main = [r for r in raw if r[0] >= 1]
    phases = classify_phases([r[3] for r in main], [r[4] for r in main])
    turns = tuple(
        TurnRecord(
            index=i,
            player=player,
            vertex=v,
            decrease=d,
            delta_before=delta,
            isolated_edge_move=iso,
            f_after=f_after,
            phase=0 if i == 0 else phases.phase_of(i),
        )
        for (i, player, v, d, delta, iso, f_after) in raw
    )
    return Trace(h.num_vertices, f0, first_player, turns, phases)


def scripted_policy(moves: Sequence[int]) -> Policy:
    """Policy that replays a fixed move list (shared by both players)."""
    queue = list(moves)

    def policy(state: GameState) -> int:
        if not queue:
            raise PolicyError("scripted move list exhausted before game end")
        return queue.pop(0)

    return policy


def replay_trace(
    h: LabeledHypergraph,
    marking: SpecialMarking,
    moves: Sequence[int],
    first_player: str = DOMINATOR,
    scheme: WeightScheme = DEFAULT_SCHEME,
) -> Trace:
    """Re-run a recorded move list and return its freshly computed trace."""
    policy = scripted_policy(moves)
    return play_game(h, marking, policy, policy, first_player, scheme)


# -- Independent graph-side view of the total domination game ---------------


def graph_legal_moves(g: Graph, dominated: frozenset[int]) -> frozenset[int]:
    """Vertices that would totally dominate at least one new vertex."""
    return frozenset(
        v for v in range(g.n) if not g.adjacency[v] <= dominated
    )


def replay_moves_on_graph(g: Graph, moves: Sequence[int]) -> frozenset[int]:
    """Check a move list under total domination game rules.

    Raises :class:`IllegalMoveError` at the first move that dominates nothing
    new; returns the final totally dominated set.
    """
    dominated: frozenset[int] = frozenset()
    for turn, v in enumerate(moves):
        if g.adjacency[v] <= dominated:
            raise IllegalMoveError(
                f"move {turn} (vertex {v}) totally dominates no new vertex"
            )
        dominated = dominated | g.adjacency[v]
    return dominated
