import random

import pytest

from chromindex.errors import LoopRejected, MultiplicityViolation, OverlappingSides
from chromindex.multigraph import (
    Bipartition,
    MultiGraph,
    bipartite_between,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
)

from conftest import complete_graph, cycle_graph, random_simple_graph, random_star_multigraph


def test_add_edge_updates_degrees():
    g = MultiGraph(3)
    g.add_edge(0, 1)
    assert g.degree(0) == 1 and g.degree(1) == 1 and g.degree(2) == 0
    assert g.num_edges == 1


def test_center_accepts_parallels():
    g = MultiGraph(3, multi_center=0)
    g.add_edge(0, 1)
    g.add_edge(0, 1)
    assert g.multiplicity(0, 1) == 2
    assert g.degree(0) == 2


def test_simple_graph_rejects_parallels():
    g = MultiGraph(3)
    g.add_edge(1, 2)
    with pytest.raises(MultiplicityViolation):
        g.add_edge(1, 2)


def test_off_center_parallel_rejected():
    g = MultiGraph(4, multi_center=0)
    g.add_edge(1, 2)
    with pytest.raises(MultiplicityViolation):
        g.add_edge(2, 1)


def test_loop_rejected():
    with pytest.raises(LoopRejected):
        MultiGraph(2).add_edge(1, 1)


def test_unconstrained_allows_any_parallel():
    g = MultiGraph.unconstrained(4)
    g.add_edge(0, 1, 2)
    g.add_edge(2, 3, 3)
    assert g.multiplicity(2, 3) == 3
    assert g.num_edges == 5


def test_remove_edge():
    g = MultiGraph(3, multi_center=0)
    g.add_edge(0, 1, 3)
    g.remove_edge(0, 1)
    assert g.multiplicity(0, 1) == 2
    g.remove_edge(0, 1, 2)
    assert not g.has_edge(0, 1)
    assert g.degree(0) == 0
    g.check_invariants()


def test_handshake_on_random_graphs(rng):
    for _ in range(25):
        g = random_star_multigraph(rng, rng.randint(2, 12), 0.5)
        assert sum(g.degrees()) == 2 * g.num_edges
        g.check_invariants()


def test_induced_subgraph_identity_and_edge():
    tri = complete_graph(3)
    whole, back = induced_subgraph(tri, [0, 1, 2])
    assert whole == tri and back == [0, 1, 2]
    sub, back = induced_subgraph(tri, [0, 1])
    assert sub.num_edges == 1 and sub.n == 2


def test_induced_subgraph_alternate_five_cycle():
    # expected value derived by enumerating the 5-cycle's adjacency directly
    cycle_edges = {(i, (i + 1) % 5) for i in range(5)}
    cycle_edges |= {(v, u) for u, v in cycle_edges}
    picked = [0, 2, 4]
    expected = sum(1 for i in picked for j in picked if i < j and (i, j) in cycle_edges)
    sub, _ = induced_subgraph(cycle_graph(5), picked)
    assert sub.n == 3 and sub.num_edges == expected == 1


def test_induced_subgraph_center_carryover():
    g = MultiGraph(4, multi_center=1)
    g.add_edge(1, 2, 2)
    sub, back = induced_subgraph(g, [1, 2])
    assert sub.multi_center == back.index(1)
    assert sub.multiplicity(0, 1) == 2
    sub2, _ = induced_subgraph(g, [2, 3])
    assert sub2.multi_center is None


def test_induced_subgraph_degree_matches_bruteforce(rng):
    for _ in range(30):
        n = rng.randint(3, 12)
        g = random_simple_graph(rng, n, 0.5)
        s = sorted(rng.sample(range(n), rng.randint(1, n)))
        sub, back = induced_subgraph(g, s)
        for new, old in enumerate(back):
            expected = sum(1 for w in s if w != old and g.has_edge(old, w))
            assert sub.degree(new) == expected


def test_bipartite_between_k4():
    h, sides = bipartite_between(complete_graph(4), [0, 1], [2, 3])
    assert h.num_edges == 4
    assert sides.left == frozenset({0, 1})


def test_bipartite_between_no_crossing():
    g = MultiGraph(4)
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    h, _ = bipartite_between(g, [0, 1], [2, 3])
    assert h.num_edges == 0


def test_bipartite_between_triangle_single_edge():
    h, _ = bipartite_between(complete_graph(3), [0], [1])
    assert h.num_edges == 1


def test_overlapping_sides_raises():
    with pytest.raises(OverlappingSides):
        Bipartition.of([0, 1], [1, 2])


def test_edge_list_round_trip(rng):
    for _ in range(20):
        g = random_star_multigraph(rng, rng.randint(1, 10), 0.4)
        text = format_edge_list(g)
        assert parse_edge_list(text) == g
        assert format_edge_list(parse_edge_list(text)) == text


def test_edge_list_comments_and_errors():
    g = parse_edge_list("# header\n3 0\n0 1 2  # doubled\n1 2\n")
    assert g.multiplicity(0, 1) == 2 and g.multi_center == 0
    with pytest.raises(ValueError):
        parse_edge_list("")
    with pytest.raises(ValueError):
        parse_edge_list("3\n0 x\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("3\n0 0\n")
