"""Core graph representation: simple graphs and star-multigraphs.

A star-multigraph is a multigraph in which at most one vertex (the
*multi-center*) is incident with parallel edges, i.e. deleting that vertex
leaves a simple graph.  Vertices are dense integers in ``[0, n)`` and the
vertex count is fixed at construction; edges are added and removed through
explicit builder operations.

Parallel edges are addressed as *slots*: the edge multiset between ``u`` and
``v`` with multiplicity ``m`` exposes slots ``(u, v, 0) .. (u, v, m-1)`` with
``u < v``, so a coloring can give each parallel edge its own color.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import LoopRejected, MultiplicityViolation, OverlappingSides


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint vertex sets declared over a subset of V(G)."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        if self.left & self.right:
            raise OverlappingSides(f"sides share vertices {sorted(self.left & self.right)[:5]}")

    @staticmethod
    def of(left: Iterable[int], right: Iterable[int]) -> "Bipartition":
        return Bipartition(frozenset(left), frozenset(right))


class MultiGraph:
    """Adjacency-with-multiplicity graph on a fixed vertex set.

    Invariants enforced on mutation:

    * no loops;
    * if ``multi_center`` is ``None``, all multiplicities are <= 1;
    * if ``multi_center == x``, every pair with multiplicity >= 2 contains x.

    ``MultiGraph.unconstrained`` disables the star check.  That mode exists
    for scratch multigraphs (degree-sequence realizations, bipartite padding)
    that only ever feed matching/partition code; the coloring algorithms all
    require the star invariant and check for it.
    """

    __slots__ = ("n", "multi_center", "_adj", "_deg", "_nbr_mask", "_num_edges", "_star_checked")

    def __init__(self, n: int, multi_center: int | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if multi_center is not None and not (0 <= multi_center < n):
            raise ValueError(f"multi_center {multi_center} outside [0, {n})")
        self.n = n
        self.multi_center = multi_center
        self._adj: list[dict[int, int]] = [dict() for _ in range(n)]
        self._deg = [0] * n
        self._nbr_mask = [0] * n
        self._num_edges = 0
        self._star_checked = True

    @classmethod
    def unconstrained(cls, n: int) -> "MultiGraph":
        """A multigraph that may carry parallel edges between any pair."""
        g = cls(n)
        g._star_checked = False
        return g

    # -- mutation ---------------------------------------------------------

    def add_edge(self, u: int, v: int, count: int = 1) -> "MultiGraph":
        """Increment the multiplicity of {u, v} by ``count``.  Returns self."""
        if u == v:
            raise LoopRejected(f"loop at vertex {u}")
        if count < 1:
            raise ValueError("count must be positive")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) outside vertex range [0,{self.n})")
        new_mult = self._adj[u].get(v, 0) + count
        if new_mult > 1 and self._star_checked:
            if self.multi_center is None or self.multi_center not in (u, v):
                raise MultiplicityViolation(
                    f"parallel edge ({u},{v}) avoids multi-center {self.multi_center}")
        self._adj[u][v] = new_mult
        self._adj[v][u] = new_mult
        self._deg[u] += count
        self._deg[v] += count
        self._nbr_mask[u] |= 1 << v
        self._nbr_mask[v] |= 1 << u
        self._num_edges += count
        return self

    def remove_edge(self, u: int, v: int, count: int = 1) -> "MultiGraph":
        """Decrement the multiplicity of {u, v} by ``count``.  Returns self."""
        mult = self._adj[u].get(v, 0)
        if count < 1 or mult < count:
            raise ValueError(f"cannot remove {count} copies of ({u},{v}), multiplicity {mult}")
        if mult == count:
            del self._adj[u][v]
            del self._adj[v][u]
            self._nbr_mask[u] &= ~(1 << v)
            self._nbr_mask[v] &= ~(1 << u)
        else:
            self._adj[u][v] = mult - count
            self._adj[v][u] = mult - count
        self._deg[u] -= count
        self._deg[v] -= count
        self._num_edges -= count
        return self

    # -- queries ----------------------------------------------------------

    def degree(self, v: int) -> int:
        return self._deg[v]

    def degrees(self) -> list[int]:
        return list(self._deg)

    def max_degree(self) -> int:
        return max(self._deg, default=0)

    def min_degree(self) -> int:
        return min(self._deg, default=0)

    def multiplicity(self, u: int, v: int) -> int:
        return self._adj[u].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def neighbor_mask(self, v: int) -> int:
        """Bitmask of distinct neighbors (multiplicity-blind)."""
        return self._nbr_mask[v]

    def simple_degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def num_edges(self) -> int:
        """Edge count with multiplicity."""
        return self._num_edges

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, multiplicity) with u < v, ascending."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    def edge_slots(self) -> Iterator[tuple[int, int, int]]:
        """Yield every slot (u, v, slot) with u < v, ascending."""
        for u, v, mult in self.edges():
            for s in range(mult):
                yield u, v, s

    def max_multiplicity_at(self, v: int) -> int:
        return max(self._adj[v].values(), default=0)

    def max_multiplicity(self) -> int:
        return max((self.max_multiplicity_at(v) for v in range(self.n)), default=0)

    def is_simple(self) -> bool:
        return self.max_multiplicity() <= 1

    def is_regular(self) -> bool:
        return self.n == 0 or all(d == self._deg[0] for d in self._deg)

    def count_edges_to(self, v: int, targets: set[int] | frozenset[int]) -> int:
        """Multiplicity-weighted number of edges from v into ``targets``."""
        adj = self._adj[v]
        if len(adj) > len(targets):
            return sum(adj[w] for w in targets if w in adj)
        return sum(m for w, m in adj.items() if w in targets)

    def check_invariants(self) -> None:
        """Raise AssertionError if internal caches are inconsistent."""
        for v in range(self.n):
            assert self._deg[v] == sum(self._adj[v].values()), f"degree cache stale at {v}"
            assert self._nbr_mask[v] == sum(1 << w for w in self._adj[v]), f"mask stale at {v}"
        assert 2 * self._num_edges == sum(self._deg), "handshake violated"
        if self._star_checked:
            for u, v, m in self.edges():
                if m > 1:
                    assert self.multi_center in (u, v), f"parallel ({u},{v}) off-center"

    def copy(self) -> "MultiGraph":
        g = MultiGraph(self.n, self.multi_center)
        g._star_checked = self._star_checked
        g._adj = [dict(d) for d in self._adj]
        g._deg = list(self._deg)
        g._nbr_mask = list(self._nbr_mask)
        g._num_edges = self._num_edges
        return g

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiGraph) and self.n == other.n
                and self.multi_center == other.multi_center and self._adj == other._adj)

    def __repr__(self) -> str:
        center = "" if self.multi_center is None else f", center={self.multi_center}"
        return f"MultiGraph(n={self.n}, m={self._num_edges}{center})"


def induced_subgraph(g: MultiGraph, s: Iterable[int]) -> tuple[MultiGraph, list[int]]:
    """Subgraph induced on ``s``, relabeled densely.

    Returns ``(sub, new_to_old)`` where ``new_to_old[i]`` is the original
    label of the subgraph's vertex ``i``.  The multi-center carries over iff
    it lies in ``s``.
    """
    new_to_old = sorted(set(s))
    if new_to_old and not (0 <= new_to_old[0] and new_to_old[-1] < g.n):
        raise ValueError("subset contains labels outside the graph")
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    center = old_to_new.get(g.multi_center) if g.multi_center is not None else None
    sub = MultiGraph(len(new_to_old), center)
    sub._star_checked = g._star_checked
    for old_u in new_to_old:
        for old_v, mult in g._adj[old_u].items():
            if old_u < old_v and old_v in old_to_new:
                sub.add_edge(old_to_new[old_u], old_to_new[old_v], mult)
    return sub, new_to_old


def bipartite_between(g: MultiGraph, a: Iterable[int], b: Iterable[int]) -> tuple[MultiGraph, Bipartition]:
    """Bipartite subgraph keeping only edges with one end in each side.

    The returned graph lives on the same vertex set as ``g`` (labels are
    preserved; vertices outside ``a`` and ``b`` are isolated).
    """
    sides = Bipartition.of(a, b)
    out = MultiGraph(g.n, g.multi_center)
    out._star_checked = g._star_checked
    for u, v, mult in g.edges():
        if (u in sides.left and v in sides.right) or (u in sides.right and v in sides.left):
            out.add_edge(u, v, mult)
    return out, sides


# -- edge-list text format -----------------------------------------------------
#
# First line: "n" or "n multi_center".  Then one "u v" or "u v multiplicity"
# per line, 0-indexed, whitespace separated, "#" starts a comment.  This is
# the CLI interchange format and round-trips exactly through
# parse_edge_list(format_edge_list(g)).

def format_edge_list(g: MultiGraph) -> str:
    lines = [f"{g.n}" if g.multi_center is None else f"{g.n} {g.multi_center}"]
    for u, v, mult in g.edges():
        lines.append(f"{u} {v}" if mult == 1 else f"{u} {v} {mult}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> MultiGraph:
    """Parse the edge-list format; raises ValueError with a line number."""
    g: MultiGraph | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer token in {parts!r}") from None
        if g is None:
            if len(values) == 1:
                g = MultiGraph(values[0])
            elif len(values) == 2:
                g = MultiGraph(values[0], multi_center=values[1])
            else:
                raise ValueError(f"line {lineno}: header must be 'n' or 'n center'")
            continue
        if len(values) == 2:
            u, v, mult = values[0], values[1], 1
        elif len(values) == 3:
            u, v, mult = values
        else:
            raise ValueError(f"line {lineno}: edge line must be 'u v' or 'u v mult'")
        try:
            g.add_edge(u, v, mult)
        except Exception as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if g is None:
        raise ValueError("empty graph file")
    return g


def read_graph(path) -> MultiGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(g: MultiGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
