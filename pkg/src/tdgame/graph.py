"""Simple undirected graphs: parsing, validation, neighborhood hypergraph,
and brute-force domination oracles for desk-scale instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import CapabilityError, GraphInputError, PreconditionError
from .hypergraph import LabeledHypergraph

#: Largest order accepted by the subset-search oracles.
EXHAUSTIVE_ORDER_LIMIT = 24


@dataclass(frozen=True)
class Graph:
    """Vertices 0..n-1 with symmetric, loop-free adjacency sets."""

    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise PreconditionError("adjacency length differs from order")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise PreconditionError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise PreconditionError(f"neighbor {u} out of range")
                if v not in self.adjacency[u]:
                    raise PreconditionError(
                        f"asymmetric adjacency between {u} and {v}"
                    )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) out of range")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v)
            for u in range(self.n)
            for v in sorted(self.adjacency[u])
            if u < v
        )

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def has_isolated_vertex(self) -> bool:
        return any(not s for s in self.adjacency)


def parse_graph(text: str) -> Graph:
    """Parse the text format: comments start with '#', first data line is
    "n m", followed by m lines "u v".  Duplicate edges and self-loops are
    rejected with the offending line number."""
    n = -1
    m = -1
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n < 0:
            if len(parts) != 2:
                raise GraphInputError("expected header 'n m'", line_no)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphInputError("non-integer header", line_no) from None
            if n < 0 or m < 0:
                raise GraphInputError("negative counts in header", line_no)
            continue
        if len(parts) != 2:
            raise GraphInputError("expected edge 'u v'", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphInputError("non-integer vertex id", line_no) from None
        if not 0 <= u < n:
            raise GraphInputError(f"vertex id {u} out of range", line_no)
        if not 0 <= v < n:
            raise GraphInputError(f"vertex id {v} out of range", line_no)
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}", line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphInputError(f"duplicate edge {key[0]} {key[1]}", line_no)
        seen.add(key)
        edges.append(key)
    if n < 0:
        raise GraphInputError("missing header 'n m'")
    if len(edges) != m:
        raise GraphInputError(f"header promised {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def graph_to_text(g: Graph) -> str:
    """Inverse of :func:`parse_graph`; used for replayable witnesses."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines)


def components(g: Graph) -> tuple[frozenset[int], ...]:
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for start in range(g.n):
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if u not in comp:
                    comp.add(u)
                    seen.add(u)
                    stack.append(u)
        out.append(frozenset(comp))
    return tuple(out)


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[frozenset[int], ...]
    min_order: int


def validate_min_component_order(g: Graph) -> ComponentReport:
    """Every component must contain at least three vertices.

    Equivalently the graph has no isolated vertices and no isolated edges,
    the precondition for all length guarantees in this package.
    """
    comps = components(g)
    if not comps:
        raise PreconditionError("empty graph has no components of order >= 3")
    min_order = min(len(c) for c in comps)
    if min_order < 3:
        bad = min((c for c in comps if len(c) < 3), key=min)
        raise PreconditionError(
            f"component {sorted(bad)} has order {len(bad)} < 3"
        )
    return ComponentReport(tuple(sorted(comps, key=min)), min_order)


def build_onh(g: Graph) -> LabeledHypergraph:
    """Open neighborhood hypergraph: edge labeled v has members N(v).

    Parallel edges (twins) and 1-edges (pendant neighborhoods) are kept as
    distinct labeled edges.
    """
    if g.has_isolated_vertex():
        bad = next(v for v in range(g.n) if not g.adjacency[v])
        raise PreconditionError(
            f"vertex {bad} is isolated; its neighborhood edge would be empty"
        )
    edges = tuple((v, g.adjacency[v]) for v in range(g.n))
    return LabeledHypergraph(g.n, edges)


def is_total_dominating_set(g: Graph, vertices: Iterable[int]) -> bool:
    dominated: set[int] = set()
    for v in vertices:
        dominated |= g.adjacency[v]
    return len(dominated) == g.n


def is_dominating_set(g: Graph, vertices: Iterable[int]) -> bool:
    dominated: set[int] = set()
    for v in vertices:
        dominated |= g.adjacency[v]
        dominated.add(v)
    return len(dominated) == g.n


def _nbr_masks(g: Graph, closed: bool) -> list[int]:
    masks = []
    for v in range(g.n):
        mask = 0
        for u in g.adjacency[v]:
            mask |= 1 << u
        if closed:
            mask |= 1 << v
        masks.append(mask)
    return masks


def _min_cover_size(masks: list[int], n: int, limit: int) -> int:
    if n > limit:
        raise CapabilityError(f"order {n} exceeds exhaustive limit {limit}")
    full = (1 << n) - 1
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            acc = 0
            for v in combo:
                acc |= masks[v]
            if acc == full:
                return k
    raise PreconditionError("no dominating subset exists")


def brute_force_total_domination_number(
    g: Graph, limit: int = EXHAUSTIVE_ORDER_LIMIT
) -> int:
    """Minimum size of a set whose open neighborhoods cover every vertex.

    Subsets are searched in increasing cardinality, so the first hit is the
    answer.  Requires an isolate-free graph."""
    if g.has_isolated_vertex():
        raise PreconditionError("isolated vertex: no total dominating set")
    return _min_cover_size(_nbr_masks(g, closed=False), g.n, limit)


def brute_force_domination_number(
    g: Graph, limit: int = EXHAUSTIVE_ORDER_LIMIT
) -> int:
    """Minimum size of a set whose closed neighborhoods cover every vertex."""
    if g.has_isolated_vertex():
        raise PreconditionError("isolated vertex: oracle expects isolate-free input")
    return _min_cover_size(_nbr_masks(g, closed=True), g.n, limit)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Union with b's vertex ids shifted above a's."""
    edges = list(a.edge_list())
    edges.extend((u + a.n, v + a.n) for u, v in b.edge_list())
    return Graph.from_edges(a.n + b.n, edges)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph.from_edges(n, edges)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
