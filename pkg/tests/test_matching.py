import itertools
import random

import pytest

from chromindex.coloring import verify_proper
from chromindex.errors import NoPerfectMatching, NotBipartite
from chromindex.matching import (
    Matching,
    hall_perfect_matching,
    konig_edge_coloring,
    max_bipartite_matching,
)
from chromindex.multigraph import Bipartition, MultiGraph

from conftest import complete_bipartite, cycle_graph


def brute_force_max_matching(edges, tries_all_subsets=True):
    """Exhaustive maximum matching size over the given simple edge list."""
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(edges, r):
            seen = set()
            ok = True
            for u, v in combo:
                if u in seen or v in seen:
                    ok = False
                    break
                seen.update((u, v))
            if ok:
                best = max(best, r)
                break
    return best


def bip_sides(m, k):
    return Bipartition.of(range(m), range(m, m + k))


def test_k33_matching_size():
    g = complete_bipartite(3, 3)
    assert len(max_bipartite_matching(g, bip_sides(3, 3))) == 3


def test_star_matching_size_one():
    g = MultiGraph(5)
    for v in range(1, 5):
        g.add_edge(0, v)
    m = max_bipartite_matching(g, Bipartition.of([0], [1, 2, 3, 4]))
    assert len(m) == 1


def test_matching_against_bruteforce(rng):
    for _ in range(40):
        nl, nr = rng.randint(1, 6), rng.randint(1, 6)
        g = MultiGraph(nl + nr)
        edges = []
        for u in range(nl):
            for v in range(nl, nl + nr):
                if rng.random() < 0.4:
                    g.add_edge(u, v)
                    edges.append((u, v))
        got = len(max_bipartite_matching(g, bip_sides(nl, nr)))
        assert got == brute_force_max_matching(edges)


def test_not_bipartite_rejected():
    g = MultiGraph(4)
    g.add_edge(0, 1)
    with pytest.raises(NotBipartite):
        max_bipartite_matching(g, Bipartition.of([0, 1], [2, 3]))


def test_matching_type_rejects_shared_vertex():
    with pytest.raises(ValueError):
        Matching([(0, 1), (1, 2)])


def test_hall_even_cycle_alternating_split():
    g = cycle_graph(8)
    evens, odds = [0, 2, 4, 6], [1, 3, 5, 7]
    m = hall_perfect_matching(g, Bipartition.of(evens, odds))
    assert len(m) == 4
    assert m.vertices() == set(range(8))


def test_hall_violator_exposed():
    # one real edge plus an isolated vertex on each side
    g = MultiGraph(4)
    g.add_edge(0, 2)
    with pytest.raises(NoPerfectMatching) as exc:
        hall_perfect_matching(g, Bipartition.of([0, 1], [2, 3]))
    violator = exc.value.violator
    neighborhood = exc.value.neighborhood
    # re-check Hall violation independently
    neigh = set()
    for v in violator:
        neigh.update(w for w in g.neighbors(v))
    assert set(neighborhood) == neigh and len(neigh) < len(violator)


def test_konig_c6_two_colors():
    g = cycle_graph(6)
    sides = Bipartition.of([0, 2, 4], [1, 3, 5])
    c = konig_edge_coloring(g, sides)
    rep = verify_proper(g, c)
    assert rep["proper"] and rep["total"] and rep["colors_used"] == 2


def test_konig_k33_classes_are_perfect_matchings():
    g = complete_bipartite(3, 3)
    c = konig_edge_coloring(g, bip_sides(3, 3))
    rep = verify_proper(g, c)
    assert rep["proper"] and rep["total"] and rep["colors_used"] == 3
    for color, slots in c.color_classes().items():
        assert len(slots) == 3
        assert {w for u, v, _ in slots for w in (u, v)} == set(range(6))


def test_konig_multigraph_hand_instance():
    # doubled edge u-v plus edge v-w: max degree 3 at v, three colors needed
    g = MultiGraph.unconstrained(3)
    g.add_edge(0, 1, 2)
    g.add_edge(1, 2)
    c = konig_edge_coloring(g, Bipartition.of([1], [0, 2]))
    rep = verify_proper(g, c)
    assert rep["proper"] and rep["total"] and rep["colors_used"] == 3
    assert c.color_of(0, 1, 0) != c.color_of(0, 1, 1)


def test_konig_random_bipartite_multigraphs(rng):
    for _ in range(60):
        nl, nr = rng.randint(1, 7), rng.randint(1, 7)
        g = MultiGraph.unconstrained(nl + nr)
        for u in range(nl):
            for v in range(nl, nl + nr):
                if rng.random() < 0.5:
                    g.add_edge(u, v, rng.randint(1, 3))
        c = konig_edge_coloring(g, bip_sides(nl, nr))
        rep = verify_proper(g, c)
        assert rep["proper"] and rep["total"]
        assert rep["colors_used"] == (g.max_degree() if g.num_edges else 0)


def test_konig_regular_classes_saturate(rng):
    # on regular bipartite multigraphs every class is a perfect matching
    for _ in range(20):
        m = rng.randint(2, 6)
        g = complete_bipartite(m, m)
        c = konig_edge_coloring(g, bip_sides(m, m))
        for color, slots in c.color_classes().items():
            assert {w for u, v, _ in slots for w in (u, v)} == set(range(2 * m))
