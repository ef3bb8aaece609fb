"""Labeled hypergraphs with special-vertex marking and residual bookkeeping.

Edges carry a generator label (for an open neighborhood hypergraph the edge
labeled ``v`` has members ``N(v)``).  Multi-edges and 1-edges are first-class:
they are never deduplicated, because covering and the residual counts act on
each labeled edge individually.

A *residual* is determined by a set of covered edge labels: an edge is present
iff it is uncovered, a vertex is present iff it lies in some present edge.
Components are taken on that present structure.  A component consisting of a
single present edge with at least two non-special members is counted by
``discount_components`` and earns a rebate in the weight function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import PreconditionError


@dataclass(frozen=True)
class LabeledHypergraph:
    """Vertex ids 0..num_vertices-1 and an ordered list of labeled edges."""

    num_vertices: int
    edges: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        seen_labels = set()
        for label, members in self.edges:
            if not members:
                raise PreconditionError(f"edge {label} is empty")
            if label in seen_labels:
                raise PreconditionError(f"duplicate edge label {label}")
            seen_labels.add(label)
            for v in members:
                if not 0 <= v < self.num_vertices:
                    raise PreconditionError(
                        f"edge {label} contains out-of-range vertex {v}"
                    )

    @cached_property
    def label_to_index(self) -> Mapping[int, int]:
        return {label: i for i, (label, _) in enumerate(self.edges)}

    @cached_property
    def edges_of_vertex(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        incident: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, (_, members) in enumerate(self.edges):
            for v in members:
                incident[v].append(i)
        return tuple(tuple(ix) for ix in incident)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(ix) for ix in self.edges_of_vertex)

    def degree(self, v: int) -> int:
        return len(self.edges_of_vertex[v])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(label for label, _ in self.edges)

    def members_of_label(self, label: int) -> frozenset[int]:
        return self.edges[self.label_to_index[label]][1]


@dataclass(frozen=True)
class SpecialMarking:
    """The designated degree-1 vertices and the edges they generate.

    The special edge of a special vertex ``v`` is the edge labeled ``v`` (a
    1-edge holding v's unique neighbor).  Hence the special edge labels are
    exactly the special vertex ids.
    """

    special_vertices: frozenset[int]

    @property
    def special_edge_labels(self) -> frozenset[int]:
        return self.special_vertices

    @classmethod
    def empty(cls) -> "SpecialMarking":
        return cls(frozenset())


def select_special_vertices(
    h: LabeledHypergraph, degrees: tuple[int, ...] | None = None
) -> SpecialMarking:
    """Mark one degree-1 vertex in every edge that contains one.

    ``degrees`` are the degrees in the starting hypergraph; they default to
    the degrees of ``h`` itself.  The smallest candidate id is chosen, which
    keeps traces reproducible.  Raises :class:`PreconditionError` when the
    marking would be inconsistent (a special edge holding a special vertex
    corresponds to a two-vertex component, which is excluded).
    """
    if degrees is None:
        degrees = h.degrees()
    special: set[int] = set()
    for _, members in h.edges:
        candidates = [u for u in members if degrees[u] == 1]
        if candidates:
            special.add(min(candidates))
    for v in special:
        idx = h.label_to_index.get(v)
        if idx is None:
            raise PreconditionError(
                f"special vertex {v} has no generated edge; not an open "
                "neighborhood hypergraph"
            )
        members = h.edges[idx][1]
        if len(members) != 1:
            raise PreconditionError(
                f"special vertex {v} generates edge of size {len(members)}, "
                "expected a 1-edge"
            )
        if members & special:
            raise PreconditionError(
                f"special edge of {v} contains a special vertex "
                "(two-vertex component in the source graph)"
            )
    return SpecialMarking(frozenset(special))


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    edge_labels: tuple[int, ...]

    @property
    def is_single_edge(self) -> bool:
        return len(self.edge_labels) == 1


@dataclass(frozen=True)
class ResidualStats:
    """Counts over a residual: present vertices/edges split by specialness."""

    vertices_nonspecial: int
    vertices_special: int
    edges_nonspecial: int
    edges_special: int
    discount_components: int
    max_degree: int
    components: tuple[Component, ...] = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.vertices_nonspecial + self.vertices_special

    @property
    def edge_count(self) -> int:
        return self.edges_nonspecial + self.edges_special

    @property
    def is_empty(self) -> bool:
        return self.edge_count == 0


def _present_structure(h: LabeledHypergraph, covered: frozenset[int]):
    """Present edge indices, per-vertex present degree, and components."""
    present = [i for i, (label, _) in enumerate(h.edges) if label not in covered]
    degree: dict[int, int] = {}
    for i in present:
        for v in h.edges[i][1]:
            degree[v] = degree.get(v, 0) + 1
    # breadth-first search over edges joined through shared vertices
    unvisited = set(present)
    vertex_edges: dict[int, list[int]] = {}
    for i in present:
        for v in h.edges[i][1]:
            vertex_edges.setdefault(v, []).append(i)
    components: list[Component] = []
    for start in present:
        if start not in unvisited:
            continue
        unvisited.discard(start)
        queue = [start]
        comp_edges = []
        comp_vertices: set[int] = set()
        while queue:
            e = queue.pop()
            comp_edges.append(e)
            for v in h.edges[e][1]:
                if v in comp_vertices:
                    continue
                comp_vertices.add(v)
                for e2 in vertex_edges[v]:
                    if e2 in unvisited:
                        unvisited.discard(e2)
                        queue.append(e2)
        labels = tuple(sorted(h.edges[e][0] for e in comp_edges))
        components.append(Component(frozenset(comp_vertices), labels))
    components.sort(key=lambda c: min(c.vertices))
    return present, degree, tuple(components)


def _is_discount_component(
    comp: Component, h: LabeledHypergraph, marking: SpecialMarking
) -> bool:
    if not comp.is_single_edge:
        return False
    members = h.members_of_label(comp.edge_labels[0])
    plain = sum(1 for v in members if v not in marking.special_vertices)
    return plain >= 2


def count_discount_components(
    h: LabeledHypergraph, marking: SpecialMarking, covered: frozenset[int]
) -> int:
    """Number of single-edge components with >= 2 non-special members.

    A component of two or more parallel edges does not qualify: it is not a
    single isolated edge, even though its vertex set matches one.
    """
    _, _, components = _present_structure(h, covered)
    return sum(1 for c in components if _is_discount_component(c, h, marking))


def residual_stats(
    h: LabeledHypergraph, marking: SpecialMarking, covered: frozenset[int]
) -> ResidualStats:
    """Recompute all residual quantities from scratch.

    This is the reference implementation; incremental bookkeeping elsewhere
    must agree with it.
    """
    present, degree, components = _present_structure(h, covered)
    special = marking.special_vertices
    special_labels = marking.special_edge_labels
    n_s = sum(1 for v in degree if v in special)
    n_h = len(degree) - n_s
    e_s = sum(1 for i in present if h.edges[i][0] in special_labels)
    e_h = len(present) - e_s
    x = sum(1 for c in components if _is_discount_component(c, h, marking))
    max_degree = max(degree.values(), default=0)
    return ResidualStats(n_h, n_s, e_h, e_s, x, max_degree, components)


@dataclass(frozen=True)
class StructuralAudit:
    """Boolean report on a residual; callers decide which flags matter."""

    max_degree: int
    max_degree_le_2: bool
    linear: bool
    one_special_per_edge: bool
    one_special_edge_per_vertex: bool
    special_edges_avoid_specials: bool
    special_neighbors_avoid_special_edges: bool
    degree2_special_neighbor_bound: bool
    specials_only_in_isolated_edges: bool

    @property
    def endgame_structure_ok(self) -> bool:
        """The residual shape required once high decreases have stopped."""
        return (
            self.max_degree_le_2
            and self.linear
            and self.special_neighbors_avoid_special_edges
            and self.degree2_special_neighbor_bound
        )


def structural_audit(
    h: LabeledHypergraph, marking: SpecialMarking, covered: frozenset[int]
) -> StructuralAudit:
    present, degree, _ = _present_structure(h, covered)
    special = marking.special_vertices
    special_labels = marking.special_edge_labels

    max_degree = max(degree.values(), default=0)

    # Linearity: two distinct present edges may share at most one vertex.
    # Parallel 1-edges are allowed; any shared pair of vertices is not.
    linear = True
    seen_pairs: set[tuple[int, int]] = set()
    for i in present:
        members = sorted(h.edges[i][1])
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pair = (members[a], members[b])
                if pair in seen_pairs:
                    linear = False
                seen_pairs.add(pair)

    one_special_per_edge = all(
        len(h.edges[i][1] & special) <= 1 for i in present
    )

    present_special_edges = [
        i for i in present if h.edges[i][0] in special_labels
    ]
    incidence: dict[int, int] = {}
    for i in present_special_edges:
        for v in h.edges[i][1]:
            incidence[v] = incidence.get(v, 0) + 1
    one_special_edge_per_vertex = all(c <= 1 for c in incidence.values())

    special_edges_avoid_specials = all(
        not (h.edges[i][1] & special) for i in present_special_edges
    )

    in_special_edge = set(incidence)
    neighbors_ok = True
    degree2_ok = True
    isolated_ok = True
    for v in degree:
        if v not in special:
            continue
        neighborhood: set[int] = set()
        edge_sizes_all_one = True
        v_edges = [
            i for i in h.edges_of_vertex[v] if h.edges[i][0] not in covered
        ]
        for i in v_edges:
            members = h.edges[i][1]
            neighborhood |= members
            for u in members:
                if degree.get(u, 0) != 1:
                    edge_sizes_all_one = False
        neighborhood.discard(v)
        if neighborhood & in_special_edge:
            neighbors_ok = False
        if len(v_edges) != 1 or not edge_sizes_all_one:
            isolated_ok = False
    for v, d in degree.items():
        if d != 2:
            continue
        neighborhood = set()
        for i in h.edges_of_vertex[v]:
            if h.edges[i][0] not in covered:
                neighborhood |= h.edges[i][1]
        neighborhood.discard(v)
        if len(neighborhood & special) >= 2:
            degree2_ok = False

    return StructuralAudit(
        max_degree=max_degree,
        max_degree_le_2=max_degree <= 2,
        linear=linear,
        one_special_per_edge=one_special_per_edge,
        one_special_edge_per_vertex=one_special_edge_per_vertex,
        special_edges_avoid_specials=special_edges_avoid_specials,
        special_neighbors_avoid_special_edges=neighbors_ok,
        degree2_special_neighbor_bound=degree2_ok,
        specials_only_in_isolated_edges=isolated_ok,
    )


def render_hypergraph(h: LabeledHypergraph, marking: SpecialMarking) -> str:
    """Text form used by the ``onh`` command: one line per edge plus marking."""
    lines = []
    for label, members in h.edges:
        star = "*" if label in marking.special_edge_labels else ""
        body = " ".join(str(v) for v in sorted(members))
        lines.append(f"edge {label}{star}: {body}")
    specials = " ".join(str(v) for v in sorted(marking.special_vertices))
    lines.append(f"special: {specials}".rstrip())
    return "\n".join(lines)
