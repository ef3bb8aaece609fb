"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

import heapq
import random

import hypothesis.strategies as st
import pytest

from tdgame.graph import Graph, components
from tdgame.smallgraphs import graph_from_mask


def tree_from_pruefer(seq: list[int]) -> Graph:
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph.from_edges(n, edges)


@st.composite
def random_trees(draw, min_n: int = 3, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return tree_from_pruefer(seq)


@st.composite
def mask_graphs(draw, min_n: int = 3, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    bits = n * (n - 1) // 2
    mask = draw(st.integers(0, 2**bits - 1))
    return graph_from_mask(n, mask)


def valid_graphs(min_n: int = 3, max_n: int = 9):
    """Graphs whose components all have order >= 3: trees plus filtered
    random masks (trees keep pendant vertices in the mix)."""
    dense = mask_graphs(min_n, max_n).filter(
        lambda g: all(len(c) >= 3 for c in components(g))
    )
    return st.one_of(random_trees(min_n, max_n), dense)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
