"""Shared instance builders for the test suite."""

import random

import pytest

from chromindex.multigraph import MultiGraph


def cycle_graph(n: int) -> MultiGraph:
    g = MultiGraph(n)
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
    return g


def complete_graph(n: int) -> MultiGraph:
    g = MultiGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            g.add_edge(u, v)
    return g


def complete_bipartite(m: int, k: int) -> MultiGraph:
    g = MultiGraph(m + k)
    for u in range(m):
        for v in range(m, m + k):
            g.add_edge(u, v)
    return g


def petersen() -> MultiGraph:
    g = MultiGraph(10)
    for i in range(5):
        g.add_edge(i, (i + 1) % 5)
        g.add_edge(i, i + 5)
        g.add_edge(5 + i, 5 + (i + 2) % 5)
    return g


def petersen_minus_vertex() -> MultiGraph:
    """Petersen with vertex 9 removed, relabeled on 0..8."""
    from chromindex.multigraph import induced_subgraph

    sub, _ = induced_subgraph(petersen(), range(9))
    return sub


def random_simple_graph(rng: random.Random, n: int, p: float) -> MultiGraph:
    g = MultiGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def random_star_multigraph(rng: random.Random, n: int, p: float, max_mult: int = 5) -> MultiGraph:
    """Random graph plus parallel copies of some edges at one center."""
    center = rng.randrange(n)
    g = MultiGraph(n, multi_center=center)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                if center in (u, v) and rng.random() < 0.5:
                    g.add_edge(u, v, rng.randint(1, max_mult))
                else:
                    g.add_edge(u, v)
    return g


@pytest.fixture
def rng():
    return random.Random(1729)
