"""Enumeration of small connected graphs up to isomorphism.

Canonical form is the minimum adjacency bitmask over vertex orderings.  The
orderings are restricted to those consistent with iterated degree refinement;
the refinement classes are themselves label-invariant, so the restricted
minimum is still a complete invariant while staying cheap for n <= 10.

Connected graphs are generated level by level: every connected graph on n+1
vertices arises from a connected graph on n vertices (drop a non-cut vertex)
by attaching a new vertex to a nonempty subset, so candidates from that rule
plus canonical dedup enumerate each isomorphism class exactly once.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .graph import Graph, disjoint_union


def _edge_bit(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    return i * n + j


def adjacency_mask(g: Graph) -> int:
    mask = 0
    for u, v in g.edge_list():
        mask |= 1 << _edge_bit(u, v, g.n)
    return mask


def graph_from_mask(n: int, mask: int) -> Graph:
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if mask >> _edge_bit(i, j, n) & 1:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def _refine_colors(g: Graph) -> tuple[int, ...]:
    colors = tuple(g.degree(v) for v in range(g.n))
    for _ in range(g.n):
        keys = [
            (colors[v], tuple(sorted(colors[u] for u in g.adjacency[v])))
            for v in range(g.n)
        ]
        palette = {key: i for i, key in enumerate(sorted(set(keys)))}
        refined = tuple(palette[key] for key in keys)
        if refined == colors:
            break
        colors = refined
    return colors


def canonical_form(g: Graph) -> int:
    """Minimum adjacency mask over refinement-consistent vertex orderings."""
    colors = _refine_colors(g)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(colors[v], []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]
    edges = g.edge_list()
    best = None
    for perm_parts in product(*(permutations(c) for c in ordered_classes)):
        order = [v for part in perm_parts for v in part]
        position = [0] * g.n
        for pos, v in enumerate(order):
            position[v] = pos
        mask = 0
        for u, v in edges:
            mask |= 1 << _edge_bit(position[u], position[v], g.n)
        if best is None or mask < best:
            best = mask
    return 0 if best is None else best


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs of order n up to isomorphism, in mask order."""
    if n < 1:
        return ()
    if n == 1:
        return (Graph.from_edges(1, []),)
    out_masks: set[int] = set()
    for parent in connected_graphs(n - 1):
        base_edges = list(parent.edge_list())
        for k in range(1, n):
            for subset in combinations(range(n - 1), k):
                edges = base_edges + [(u, n - 1) for u in subset]
                candidate = Graph.from_edges(n, edges)
                out_masks.add(canonical_form(candidate))
    return tuple(graph_from_mask(n, mask) for mask in sorted(out_masks))


def sweep_instances(max_n: int, union_total: int | None = None) -> list[Graph]:
    """Connected graphs with 3 <= n <= max_n plus two-component unions.

    Unions pair enumerated components (order >= 3 each) whose total order is
    at most ``union_total`` (default max_n + 3).
    """
    if union_total is None:
        union_total = max_n + 3
    singles: list[Graph] = []
    for n in range(3, max_n + 1):
        singles.extend(connected_graphs(n))
    instances = list(singles)
    pools = {n: connected_graphs(n) for n in range(3, max_n + 1)}
    for n1 in range(3, max_n + 1):
        for n2 in range(n1, max_n + 1):
            if n1 + n2 > union_total:
                break
            for i, g1 in enumerate(pools[n1]):
                start = i if n1 == n2 else 0
                for g2 in pools[n2][start:]:
                    instances.append(disjoint_union(g1, g2))
    return instances
