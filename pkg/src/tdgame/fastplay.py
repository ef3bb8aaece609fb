"""Incremental game engine with undo, for large traces and adversary search.

Keeps per-vertex uncovered degrees, the current weight, and the count of
rebate components up to date move by move.  The whole-residual recomputation
in :mod:`tdgame.hypergraph` / :mod:`tdgame.potential` is the correctness
oracle; the test suite pins this implementation against it.

The local decrease evaluation rests on two facts about playing a vertex v:
every deleted edge contains v, so only v's component is touched, and an edge
becomes isolated exactly when all of its members drop to degree 1.
"""

from __future__ import annotations

import random
from typing import Sequence

from .engine import DOMINATOR, STALLER, Trace, TurnRecord, other_player
from .errors import IllegalMoveError, PolicyError
from .hypergraph import LabeledHypergraph, SpecialMarking
from .potential import DEFAULT_SCHEME, WeightScheme, classify_phases


class MoveEffect:
    __slots__ = ("decrease", "covered", "isolated_edge_move", "discount_delta")

    def __init__(self, decrease, covered, isolated_edge_move, discount_delta):
        self.decrease = decrease
        self.covered = covered
        self.isolated_edge_move = isolated_edge_move
        self.discount_delta = discount_delta


class IncrementalGame:
    """Mutable engine over a fixed hypergraph, marking, and weight scheme."""

    def __init__(
        self,
        h: LabeledHypergraph,
        marking: SpecialMarking | None = None,
        scheme: WeightScheme = DEFAULT_SCHEME,
    ):
        if marking is None:
            marking = SpecialMarking.empty()
        self.hypergraph = h
        self.marking = marking
        self.scheme = scheme
        n = h.num_vertices
        special = marking.special_vertices
        special_labels = marking.special_edge_labels

        self.members: list[tuple[int, ...]] = [
            tuple(sorted(members)) for _, members in h.edges
        ]
        self.labels: list[int] = [label for label, _ in h.edges]
        self.edge_weight: list[int] = [
            scheme.edge_special if label in special_labels else scheme.edge_nonspecial
            for label in self.labels
        ]
        self.vertex_weight: list[int] = [
            scheme.vertex_special if v in special else scheme.vertex_nonspecial
            for v in range(n)
        ]
        self.is_special: list[bool] = [v in special for v in range(n)]
        self.edges_of: list[tuple[int, ...]] = [
            tuple(ix) for ix in h.edges_of_vertex
        ]

        m = len(self.members)
        self.num_edges = m
        self.uncovered: list[bool] = [True] * m
        self.uncovered_mask: int = (1 << m) - 1
        self.degree: list[int] = [len(ix) for ix in self.edges_of]
        self.static_mask: list[int] = [0] * n
        for e, ms in enumerate(self.members):
            for u in ms:
                self.static_mask[u] |= 1 << e

        max_possible = max(self.degree, default=0)
        self.deg_hist: list[int] = [0] * (max_possible + 1)
        for d in self.degree:
            self.deg_hist[d] += 1
        self.max_degree: int = max_possible
        while self.max_degree > 0 and self.deg_hist[self.max_degree] == 0:
            self.max_degree -= 1

        self.discounts = sum(1 for e in range(m) if self._discount_edge(e))
        self.weight = (
            sum(self.vertex_weight[v] for v in range(n) if self.degree[v] > 0)
            + sum(self.edge_weight)
            - scheme.component_discount * self.discounts
        )

    # -- queries -------------------------------------------------------------

    def _edge_isolated(self, e: int) -> bool:
        return all(self.degree[u] == 1 for u in self.members[e])

    def _discount_edge(self, e: int) -> bool:
        if not self.uncovered[e] or not self._edge_isolated(e):
            return False
        plain = sum(1 for u in self.members[e] if not self.is_special[u])
        return plain >= 2

    def is_legal(self, v: int) -> bool:
        return self.degree[v] > 0

    def legal_vertices(self) -> list[int]:
        return [v for v in range(len(self.degree)) if self.degree[v] > 0]

    @property
    def game_over(self) -> bool:
        return self.uncovered_mask == 0

    def covered_labels(self) -> frozenset[int]:
        return frozenset(
            self.labels[e] for e in range(self.num_edges) if not self.uncovered[e]
        )

    def peek(self, v: int) -> MoveEffect:
        """Evaluate playing v without mutating anything."""
        uncovered = self.uncovered
        degree = self.degree
        members = self.members
        edges_of = self.edges_of
        epos = [e for e in edges_of[v] if uncovered[e]]
        if not epos:
            raise IllegalMoveError(f"vertex {v} covers no uncovered edge")
        base = 0
        cnt: dict[int, int] = {}
        cnt_get = cnt.get
        for e in epos:
            base += self.edge_weight[e]
            for u in members[e]:
                cnt[u] = cnt_get(u, 0) + 1
        vertex_weight = self.vertex_weight
        candidates = []
        for u, c in cnt.items():
            du = degree[u]
            if c == du:
                base += vertex_weight[u]
            elif du - c == 1:
                candidates.append(u)

        # The move can destroy at most the rebate component containing v.
        isolated_move = degree[v] == 1 and self._edge_isolated(epos[0])
        destroyed = 0
        if isolated_move:
            plain = sum(1 for u in members[epos[0]] if not self.is_special[u])
            if plain >= 2:
                destroyed = 1

        # An edge becomes newly isolated only if every member lands on
        # degree 1, so it is the unique surviving edge of some vertex whose
        # degree drops to exactly 1; scan just those vertices.
        created = 0
        if candidates:
            epos_set = set(epos)
            seen: set[int] = set()
            is_special = self.is_special
            for u in candidates:
                found = -1
                for e2 in edges_of[u]:
                    if uncovered[e2] and e2 not in epos_set:
                        found = e2
                        break
                if found < 0 or found in seen:
                    continue
                seen.add(found)
                plain = 0
                ok = True
                for w in members[found]:
                    if degree[w] - cnt_get(w, 0) != 1:
                        ok = False
                        break
                    if not is_special[w]:
                        plain += 1
                if ok and plain >= 2:
                    created += 1
        # weight carries -discount per rebate component, so the drop gains
        # +discount for each component created and loses it for one destroyed
        delta = created - destroyed
        decrease = base + self.scheme.component_discount * delta
        return MoveEffect(decrease, epos, isolated_move, delta)

    # -- mutation ------------------------------------------------------------

    def apply(self, v: int):
        """Play v; returns an opaque undo record."""
        effect = self.peek(v)
        deg_changes: list[tuple[int, int]] = []
        hist = self.deg_hist
        cnt: dict[int, int] = {}
        for e in effect.covered:
            self.uncovered[e] = False
            self.uncovered_mask &= ~(1 << e)
            for u in self.members[e]:
                cnt[u] = cnt.get(u, 0) + 1
        for u, c in cnt.items():
            old = self.degree[u]
            hist[old] -= 1
            self.degree[u] = old - c
            hist[old - c] += 1
            deg_changes.append((u, c))
        old_max = self.max_degree
        while self.max_degree > 0 and hist[self.max_degree] == 0:
            self.max_degree -= 1
        self.discounts += effect.discount_delta
        self.weight -= effect.decrease
        return (effect, deg_changes, old_max)

    def undo(self, record) -> None:
        effect, deg_changes, old_max = record
        hist = self.deg_hist
        for u, c in deg_changes:
            cur = self.degree[u]
            hist[cur] -= 1
            self.degree[u] = cur + c
            hist[cur + c] += 1
        for e in effect.covered:
            self.uncovered[e] = True
            self.uncovered_mask |= 1 << e
        self.max_degree = old_max
        self.discounts -= effect.discount_delta
        self.weight += effect.decrease


# -- move selection over the incremental engine ------------------------------


def greedy_move(game: IncrementalGame) -> int:
    """Legal vertex with the largest decrease, smallest id on ties."""
    best_v = -1
    best_d = None
    for v in range(len(game.degree)):
        if game.degree[v] <= 0:
            continue
        d = game.peek(v).decrease
        if best_d is None or d > best_d:
            best_d = d
            best_v = v
    if best_v < 0:
        raise PolicyError("no legal move in a finished game")
    return best_v


def myopic_move(game: IncrementalGame) -> int:
    """Legal vertex with the smallest decrease, smallest id on ties."""
    best_v = -1
    best_d = None
    for v in range(len(game.degree)):
        if game.degree[v] <= 0:
            continue
        d = game.peek(v).decrease
        if best_d is None or d < best_d:
            best_d = d
            best_v = v
    if best_v < 0:
        raise PolicyError("no legal move in a finished game")
    return best_v


def random_move(game: IncrementalGame, rng: random.Random) -> int:
    legal = game.legal_vertices()
    if not legal:
        raise PolicyError("no legal move in a finished game")
    return rng.choice(legal)


def play(
    h: LabeledHypergraph,
    marking: SpecialMarking | None = None,
    scheme: WeightScheme = DEFAULT_SCHEME,
    first_player: str = DOMINATOR,
    staller: str = "myopic",
    rng: random.Random | None = None,
    moves: Sequence[int] | None = None,
) -> Trace:
    """Fast greedy-Dominator trace, or a scripted replay when ``moves`` given.

    ``staller`` selects Staller's policy: "myopic" or "random" (which needs
    ``rng``).  Produces the same traces as the reference loop in
    :mod:`tdgame.engine`.
    """
    game = IncrementalGame(h, marking, scheme)
    f0 = game.weight
    script = list(moves) if moves is not None else None
    raw = []
    index = 1 if first_player == DOMINATOR else 0
    mover = first_player
    while not game.game_over:
        if script is not None:
            if not script:
                raise PolicyError("scripted move list exhausted before game end")
            v = script.pop(0)
            if not game.is_legal(v):
                raise PolicyError(f"scripted vertex {v} is illegal")
        elif mover == DOMINATOR:
            v = greedy_move(game)
        elif staller == "myopic":
            v = myopic_move(game)
        elif staller == "random":
            if rng is None:
                raise PolicyError("random staller needs an rng")
            v = random_move(game, rng)
        else:
            raise PolicyError(f"unknown staller kind {staller!r}")
        delta_before = game.max_degree
        record = game.apply(v)
        effect = record[0]
        raw.append(
            (
                index,
                mover,
                v,
                effect.decrease,
                delta_before,
                effect.isolated_edge_move,
                game.weight,
            )
        )
        index += 1
        mover = other_player(mover)
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


# -- residual audits over the incremental engine ------------------------------


class FastAudit:
    """Structure flags computed from the live degree arrays."""

    __slots__ = (
        "max_degree_le_2",
        "linear",
        "special_neighbors_avoid_special_edges",
        "degree2_special_neighbor_bound",
        "specials_only_in_isolated_edges",
    )

    def __init__(self, game: IncrementalGame):
        degree = game.degree
        members = game.members
        uncovered = game.uncovered
        special_labels = game.marking.special_edge_labels

        self.max_degree_le_2 = game.max_degree <= 2

        linear = True
        seen_pairs: set[tuple[int, int]] = set()
        for e in range(game.num_edges):
            if not uncovered[e]:
                continue
            ms = members[e]
            for a in range(len(ms)):
                for b in range(a + 1, len(ms)):
                    pair = (ms[a], ms[b])
                    if pair in seen_pairs:
                        linear = False
                    seen_pairs.add(pair)
        self.linear = linear

        in_special_edge: set[int] = set()
        for e in range(game.num_edges):
            if uncovered[e] and game.labels[e] in special_labels:
                in_special_edge.update(members[e])

        neighbors_ok = True
        isolated_ok = True
        for v in game.marking.special_vertices:
            if degree[v] <= 0:
                continue
            live = [e for e in game.edges_of[v] if uncovered[e]]
            neighborhood: set[int] = set()
            all_deg_one = True
            for e in live:
                for u in members[e]:
                    neighborhood.add(u)
                    if degree[u] != 1:
                        all_deg_one = False
            neighborhood.discard(v)
            if neighborhood & in_special_edge:
                neighbors_ok = False
            if len(live) != 1 or not all_deg_one:
                isolated_ok = False
        self.special_neighbors_avoid_special_edges = neighbors_ok
        self.specials_only_in_isolated_edges = isolated_ok

        degree2_ok = True
        is_special = game.is_special
        for v in range(len(degree)):
            if degree[v] != 2:
                continue
            special_nbrs: set[int] = set()
            for e in game.edges_of[v]:
                if not uncovered[e]:
                    continue
                for u in members[e]:
                    if u != v and is_special[u]:
                        special_nbrs.add(u)
            if len(special_nbrs) >= 2:
                degree2_ok = False
                break
        self.degree2_special_neighbor_bound = degree2_ok

    @property
    def endgame_structure_ok(self) -> bool:
        return (
            self.max_degree_le_2
            and self.linear
            and self.special_neighbors_avoid_special_edges
            and self.degree2_special_neighbor_bound
        )
