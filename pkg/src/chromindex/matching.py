"""Bipartite matching and optimal bipartite edge coloring.

Maximum matchings use the Hopcroft-Karp augmenting-path scheme with BFS
layers scanned in ascending vertex order for deterministic output.  The
optimal (max-degree colors) bipartite multigraph coloring pads the input to a
regular bipartite multigraph with sentinel edges and peels one saturating
matching per color, reusing the matching kernel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
import logging

from .coloring import EdgeColoring
from .errors import NoPerfectMatching, NotBipartite
from .multigraph import Bipartition, MultiGraph

log = logging.getLogger(__name__)

_INF = float("inf")


@dataclass
class Matching:
    """A set of vertex-disjoint edges, stored as (u, v) pairs with u < v."""

    pairs: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.pairs = sorted((min(u, v), max(u, v)) for u, v in self.pairs)
        seen: set[int] = set()
        for u, v in self.pairs:
            if u in seen or v in seen or u == v:
                raise ValueError(f"pairs are not a matching near ({u},{v})")
            seen.update((u, v))

    def __len__(self) -> int:
        return len(self.pairs)

    def vertices(self) -> set[int]:
        return {w for pair in self.pairs for w in pair}


def _check_bipartite(g: MultiGraph, sides: Bipartition) -> None:
    declared = sides.left | sides.right
    for u, v, _ in g.edges():
        if u not in declared or v not in declared:
            raise NotBipartite(f"edge ({u},{v}) touches a vertex outside the declared sides")
        if (u in sides.left) == (v in sides.left):
            raise NotBipartite(f"edge ({u},{v}) lies inside one side")


class _HopcroftKarp:
    """Maximum matching on an adjacency-list bipartite graph.

    ``adj`` maps each left vertex to its (sorted) right neighbors; vertices
    are arbitrary hashables here but the package always passes ints.
    """

    def __init__(self, left: list[int], adj: dict[int, list[int]]):
        self.left = left
        self.adj = adj
        self.match_l: dict[int, int] = {}
        self.match_r: dict[int, int] = {}
        self.dist: dict[int, float] = {}

    def _bfs(self) -> bool:
        queue = deque()
        for u in self.left:
            if u not in self.match_l:
                self.dist[u] = 0
                queue.append(u)
            else:
                self.dist[u] = _INF
        found = _INF
        while queue:
            u = queue.popleft()
            if self.dist[u] >= found:
                continue
            for w in self.adj[u]:
                nxt = self.match_r.get(w)
                if nxt is None:
                    found = min(found, self.dist[u] + 1)
                elif self.dist[nxt] == _INF:
                    self.dist[nxt] = self.dist[u] + 1
                    queue.append(nxt)
        return found != _INF

    def _dfs(self, u: int) -> bool:
        for w in self.adj[u]:
            nxt = self.match_r.get(w)
            if nxt is None or (self.dist[nxt] == self.dist[u] + 1 and self._dfs(nxt)):
                self.match_l[u] = w
                self.match_r[w] = u
                return True
        self.dist[u] = _INF
        return False

    def solve(self) -> dict[int, int]:
        while self._bfs():
            for u in self.left:
                if u not in self.match_l:
                    self._dfs(u)
        return self.match_l


def _left_adjacency(g: MultiGraph, sides: Bipartition) -> tuple[list[int], dict[int, list[int]]]:
    left = sorted(sides.left)
    adj = {u: [v for v in g.neighbors(u) if v in sides.right] for u in left}
    return left, adj


def max_bipartite_matching(g: MultiGraph, sides: Bipartition) -> Matching:
    """Maximum-cardinality matching of a bipartite (multi)graph."""
    _check_bipartite(g, sides)
    left, adj = _left_adjacency(g, sides)
    match_l = _HopcroftKarp(left, adj).solve()
    return Matching([(u, v) for u, v in match_l.items()])


def _hall_violator(left: list[int], adj: dict[int, list[int]],
                   match_l: dict[int, int]) -> tuple[list[int], list[int]]:
    """From a non-perfect maximum matching, the alternating-reachable set of
    unmatched left vertices gives A with |N(A)| < |A|."""
    match_r = {w: u for u, w in match_l.items()}
    reach_l = {u for u in left if u not in match_l}
    reach_r: set[int] = set()
    frontier = sorted(reach_l)
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in reach_r:
                    reach_r.add(w)
                    back = match_r.get(w)
                    if back is not None and back not in reach_l:
                        reach_l.add(back)
                        nxt.append(back)
        frontier = sorted(nxt)
    return sorted(reach_l), sorted(reach_r)


def hall_perfect_matching(h: MultiGraph, sides: Bipartition,
                          context: dict | None = None) -> Matching:
    """Perfect matching saturating both sides, or ``NoPerfectMatching``
    carrying a certified Hall violator.

    ``context`` may carry advisory expectations (min-degree lower bound,
    deleted-edge budget, center vertex); they are logged, never enforced.
    """
    if len(sides.left) != len(sides.right):
        # the larger side is itself a Hall violator
        big = sides.left if len(sides.left) > len(sides.right) else sides.right
        neigh = set()
        for v in big:
            neigh.update(w for w in h.neighbors(v) if w not in big)
        raise NoPerfectMatching(
            f"sides have different sizes {len(sides.left)} != {len(sides.right)}",
            violator=sorted(big), neighborhood=sorted(neigh))
    if context:
        bound = context.get("min_degree_bound")
        if bound is not None:
            actual = min((h.degree(v) for v in sides.left | sides.right), default=0)
            if actual <= bound:
                log.info("hall_perfect_matching: min degree %s not above advisory bound %s",
                         actual, bound)
    _check_bipartite(h, sides)
    left, adj = _left_adjacency(h, sides)
    match_l = _HopcroftKarp(left, adj).solve()
    if len(match_l) == len(left):
        return Matching([(u, v) for u, v in match_l.items()])
    violator, neighborhood = _hall_violator(left, adj, match_l)
    # re-check the certificate independently of the matching run
    neigh = set()
    for u in violator:
        neigh.update(adj[u])
    assert neigh == set(neighborhood) and len(neigh) < len(violator), "violator certificate broken"
    raise NoPerfectMatching(
        f"matching saturates {len(match_l)} of {len(left)} left vertices",
        violator=violator, neighborhood=neighborhood)


def konig_edge_coloring(g: MultiGraph, sides: Bipartition) -> EdgeColoring:
    """Proper edge coloring of a bipartite multigraph with exactly Δ colors.

    Pads to a Δ-regular bipartite multigraph with sentinel edges, peels one
    perfect matching per color, and strips the padding.  On a Δ-regular input
    every color class is therefore a perfect matching.
    """
    _check_bipartite(g, sides)
    delta = g.max_degree()
    coloring = EdgeColoring(g.n, max(delta, 0))
    if delta == 0:
        return coloring

    left, right = sorted(sides.left), sorted(sides.right)
    size = max(len(left), len(right))
    # padded labels: left 0..size-1, right size..2*size-1; extras are dummies
    lid = {v: i for i, v in enumerate(left)}
    rid = {v: size + i for i, v in enumerate(right)}
    mult: dict[tuple[int, int], int] = {}
    real: dict[tuple[int, int], tuple[int, int]] = {}
    real_mult: dict[tuple[int, int], int] = {}
    deg = [0] * (2 * size)
    for u, v, m in g.edges():
        a, b = (u, v) if u in sides.left else (v, u)
        key = (lid[a], rid[b])
        mult[key] = mult.get(key, 0) + m
        real[key] = (u, v)
        real_mult[key] = m
        deg[key[0]] += m
        deg[key[1]] += m

    # pad every vertex up to degree delta with sentinel multiplicity
    deficient_l = deque(i for i in range(size) if deg[i] < delta)
    deficient_r = deque(i for i in range(size, 2 * size) if deg[i] < delta)
    while deficient_l:
        a = deficient_l[0]
        b = deficient_r[0]
        add = min(delta - deg[a], delta - deg[b])
        key = (a, b)
        mult[key] = mult.get(key, 0) + add
        deg[a] += add
        deg[b] += add
        if deg[a] == delta:
            deficient_l.popleft()
        if deg[b] == delta:
            deficient_r.popleft()

    adj: dict[int, set[int]] = {i: set() for i in range(size)}
    for (a, b), m in mult.items():
        if m > 0:
            adj[a].add(b)
    slot_next: dict[tuple[int, int], int] = {}
    left_ids = list(range(size))
    for color in range(1, delta + 1):
        hk = _HopcroftKarp(left_ids, {u: sorted(adj[u]) for u in left_ids})
        match_l = hk.solve()
        assert len(match_l) == size, "regular bipartite padding lost a perfect matching"
        for a, b in match_l.items():
            key = (a, b)
            s = slot_next.get(key, 0)
            if key in real and s < real_mult[key]:  # real slots colored before padding units
                u, v = real[key]
                coloring.assign(u, v, s, color)
            slot_next[key] = s + 1
            mult[key] -= 1
            if mult[key] == 0:
                adj[a].discard(b)
    assert all(m == 0 for m in mult.values()), "padding peel left edges uncolored"
    return coloring
