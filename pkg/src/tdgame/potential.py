"""Weight function on residual hypergraphs and the phase partition of traces.

The default scheme assigns 13/7 to non-special/special vertices and 9/15 to
non-special/special edges, with a 7-point rebate per single-edge component
holding two or more non-special vertices.  Under these weights every vertex
and its generated edge sum to 22, so the starting weight of an open
neighborhood hypergraph on n vertices is 22n minus 7 per rebate component.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Sequence

from .errors import IllegalMoveError, InternalConsistencyError, PreconditionError
from .hypergraph import ResidualStats, residual_stats

if TYPE_CHECKING:  # pragma: no cover
    from .engine import GameState


@dataclass(frozen=True)
class WeightScheme:
    vertex_nonspecial: int = 13
    vertex_special: int = 7
    edge_nonspecial: int = 9
    edge_special: int = 15
    component_discount: int = 7

    def __post_init__(self):
        for name in (
            "vertex_nonspecial",
            "vertex_special",
            "edge_nonspecial",
            "edge_special",
            "component_discount",
        ):
            if getattr(self, name) < 0:
                raise PreconditionError(f"negative weight {name}")

    @classmethod
    def default(cls) -> "WeightScheme":
        return cls()

    @property
    def is_default(self) -> bool:
        return self == WeightScheme()

    def scaled(self, factor: int) -> "WeightScheme":
        return replace(
            self,
            vertex_nonspecial=self.vertex_nonspecial * factor,
            vertex_special=self.vertex_special * factor,
            edge_nonspecial=self.edge_nonspecial * factor,
            edge_special=self.edge_special * factor,
            component_discount=self.component_discount * factor,
        )

    def to_json_dict(self) -> dict:
        return {
            "vertex_nonspecial": self.vertex_nonspecial,
            "vertex_special": self.vertex_special,
            "edge_nonspecial": self.edge_nonspecial,
            "edge_special": self.edge_special,
            "component_discount": self.component_discount,
        }


DEFAULT_SCHEME = WeightScheme()


def weight_of_residual(
    stats: ResidualStats, scheme: WeightScheme = DEFAULT_SCHEME
) -> int:
    return (
        scheme.vertex_nonspecial * stats.vertices_nonspecial
        + scheme.vertex_special * stats.vertices_special
        + scheme.edge_nonspecial * stats.edges_nonspecial
        + scheme.edge_special * stats.edges_special
        - scheme.component_discount * stats.discount_components
    )


def move_decrease(
    state: "GameState", v: int, scheme: WeightScheme = DEFAULT_SCHEME
) -> int:
    """Weight drop if ``v`` were played now; the state is left untouched.

    Computed by full before/after recomputation of the residual counts, so it
    serves as the correctness oracle for any incremental bookkeeping.
    """
    h = state.hypergraph
    covered = state.covered
    newly = frozenset(
        label
        for label, members in h.edges
        if label not in covered and v in members
    )
    if not newly:
        raise IllegalMoveError(f"vertex {v} covers no uncovered edge")
    before = weight_of_residual(residual_stats(h, state.marking, covered), scheme)
    after = weight_of_residual(
        residual_stats(h, state.marking, covered | newly), scheme
    )
    return before - after


@dataclass(frozen=True)
class PhasePartition:
    """Partition of turn indices 1..j into four consecutive runs.

    Phase 1 lasts while every odd-turn decrease so far is at least 40, phase 2
    while at least 38; the rest splits by whether the residual before the turn
    still has a degree-2 vertex (phase 3) or only isolated edges remain
    (phase 4).  Empty phases inherit the previous boundary, starting from 0.
    """

    p1: tuple[int, ...]
    p2: tuple[int, ...]
    p3: tuple[int, ...]
    p4: tuple[int, ...]

    @property
    def b1(self) -> int:
        return max(self.p1) if self.p1 else 0

    @property
    def b2(self) -> int:
        return max(self.p2) if self.p2 else self.b1

    @property
    def b3(self) -> int:
        return max(self.p3) if self.p3 else self.b2

    @property
    def b4(self) -> int:
        return max(self.p4) if self.p4 else self.b3

    def first_turn(self, k: int) -> int | None:
        phase = (self.p1, self.p2, self.p3, self.p4)[k - 1]
        return min(phase) if phase else None

    def phase_of(self, i: int) -> int:
        for k, phase in enumerate((self.p1, self.p2, self.p3, self.p4), start=1):
            if i in phase:
                return k
        raise KeyError(f"turn {i} not in any phase")

    @property
    def turn_count(self) -> int:
        return len(self.p1) + len(self.p2) + len(self.p3) + len(self.p4)


def classify_phases(
    decreases: Sequence[int], max_degrees: Sequence[int]
) -> PhasePartition:
    """Post-hoc phase labels for turns 1..j.

    ``decreases[i-1]`` is the weight drop of turn i and ``max_degrees[i-1]``
    the maximum degree of the residual before turn i.  The play itself never
    consults phases; they exist to certify the average decrease.
    """
    j = len(decreases)
    if len(max_degrees) != j:
        raise PreconditionError("decrease and degree lists differ in length")
    p1, p2, p3, p4 = [], [], [], []
    odd_min_40 = True
    odd_min_38 = True
    for i in range(1, j + 1):
        d = decreases[i - 1]
        if i % 2 == 1:
            odd_min_40 = odd_min_40 and d >= 40
            odd_min_38 = odd_min_38 and d >= 38
        if odd_min_40:
            p1.append(i)
        elif odd_min_38:
            p2.append(i)
        elif max_degrees[i - 1] >= 2:
            p3.append(i)
        elif max_degrees[i - 1] == 1:
            p4.append(i)
        else:
            raise InternalConsistencyError(
                f"turn {i} played on an empty residual (max degree 0)"
            )
    for phase in (p1, p2, p3, p4):
        if phase and phase[-1] - phase[0] != len(phase) - 1:
            raise InternalConsistencyError("phase indices are not consecutive")
    return PhasePartition(tuple(p1), tuple(p2), tuple(p3), tuple(p4))
