"""Equalized and side-balanced edge colorings, and balanced vertex partitions.

``equalized_coloring`` makes all color classes differ in size by at most one
by repeatedly swapping an odd alternating path between an over-full and an
under-full class.

``balanced_star_coloring`` equalizes per-color *missing counts* across a
declared bipartition of a star-multigraph whose crossing edges all touch the
multi-center: phase 1 drives the per-color A/B missing-count differences to
zero (each productive two-color swap reduces the total difference by four),
phase 2 then brings all per-color counts within two of each other using one
or two swaps per step.

``balanced_partition`` is a seeded Las Vegas retry: pair all vertices
(registered pairs stay together), split each pair uniformly at random, accept
when every vertex sees almost as many neighbors on one side as the other.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field

from .coloring import EdgeColoring, kempe_chain_at, kempe_swap, star_multigraph_coloring
from .errors import InfeasiblePalette, InternalRepairFailure, PreconditionViolated, RetriesExhausted
from .multigraph import MultiGraph

log = logging.getLogger(__name__)


# -- profiles -------------------------------------------------------------------

@dataclass
class ColorClassProfile:
    """Per-color class sizes and per-side missing counts, recomputed from raw
    state (never incrementally maintained)."""

    k: int
    class_sizes: dict[int, int]
    missing_a: dict[int, int]
    missing_b: dict[int, int]

    @staticmethod
    def of(g: MultiGraph, c: EdgeColoring, side_a, side_b) -> "ColorClassProfile":
        sizes = {i: 0 for i in range(1, c.k + 1)}
        for color in c.assignment.values():
            sizes[color] += 1
        miss_a = {i: sum(1 for v in side_a if not c.has_color(v, i)) for i in range(1, c.k + 1)}
        miss_b = {i: sum(1 for v in side_b if not c.has_color(v, i)) for i in range(1, c.k + 1)}
        return ColorClassProfile(c.k, sizes, miss_a, miss_b)

    def total_missing(self, side: str) -> int:
        source = self.missing_a if side == "a" else self.missing_b
        return sum(source.values())

    def max_pairwise_gap(self) -> int:
        vals = list(self.missing_a.values())
        return max(vals) - min(vals) if vals else 0

    def to_histogram(self) -> dict:
        return {
            "class_sizes": dict(sorted(self.class_sizes.items())),
            "missing_a": dict(sorted(self.missing_a.items())),
            "missing_b": dict(sorted(self.missing_b.items())),
        }


@dataclass
class VertexPartition:
    """Equal-size bipartition with per-vertex degree-imbalance bookkeeping."""

    side_a: list[int]
    side_b: list[int]
    imbalance: dict[int, int] = field(default_factory=dict)

    @property
    def max_imbalance(self) -> int:
        return max(self.imbalance.values(), default=0)


# -- base colorings --------------------------------------------------------------

def _base_coloring_with_palette(g: MultiGraph, k: int) -> EdgeColoring:
    """Proper coloring of g inside palette [1, k], or InfeasiblePalette."""
    delta = g.max_degree()
    if k >= delta + 1:
        return star_multigraph_coloring(g, k=k)
    c = star_multigraph_coloring(g)
    used = sorted(set(c.assignment.values()))
    if len(used) > k:
        raise InfeasiblePalette(
            f"base colorer needed {len(used)} colors, palette is {k}")
    mapping = {old: new for new, old in enumerate(used, start=1)}
    out = EdgeColoring(g.n, k)
    for (u, v, s), color in c.assignment.items():
        out.assign(u, v, s, mapping[color])
    return out


# -- equalized colorings -----------------------------------------------------------

def _path_components(g: MultiGraph, c: EdgeColoring, a: int, b: int):
    """All (a, b)-path components, one chain per component, endpoints first
    scanned in ascending vertex order.  Cycles are skipped: swapping them
    changes no class size and no missing set."""
    visited: set[int] = set()
    chains = []
    for v in range(g.n):
        if v in visited:
            continue
        has_a, has_b = c.has_color(v, a), c.has_color(v, b)
        if has_a == has_b:
            continue  # interior vertex or not on the two-color subgraph
        chain = kempe_chain_at(g, c, v, a, b)
        if any(w in visited for w in chain.vertices):
            continue
        visited.update(chain.vertices)
        chains.append(chain)
    return chains


def _chain_color_counts(chain) -> tuple[int, int]:
    """(#alpha edges, #beta edges) along a path chain."""
    edges = len(chain.vertices) - 1
    first = chain.first_color
    n_first = (edges + 1) // 2
    n_other = edges // 2
    if first == chain.alpha:
        return n_first, n_other
    return n_other, n_first


def equalized_coloring(g: MultiGraph, k: int) -> EdgeColoring:
    """Proper k-coloring in which every class has floor(m/k) or ceil(m/k)
    edges, m = |E(g)|."""
    if k < 1:
        raise InfeasiblePalette("palette must have at least one color")
    c = _base_coloring_with_palette(g, k)
    m = g.num_edges
    if m == 0:
        return c
    swaps = 0
    while True:
        sizes = {i: 0 for i in range(1, k + 1)}
        for color in c.assignment.values():
            sizes[color] += 1
        hi = min(sizes, key=lambda i: (-sizes[i], i))
        lo = min(sizes, key=lambda i: (sizes[i], i))
        if sizes[hi] - sizes[lo] <= 1:
            break
        swapped = False
        for chain in _path_components(g, c, hi, lo):
            n_hi, n_lo = _chain_color_counts(chain)
            if n_hi > n_lo:
                kempe_swap(g, c, chain)
                swaps += 1
                swapped = True
                break
        if not swapped:
            raise InternalRepairFailure(
                f"no surplus path between classes {hi} ({sizes[hi]}) and {lo} ({sizes[lo]})")
    log.debug("equalized_coloring: %d swaps for m=%d k=%d", swaps, m, k)
    return c


# -- side-balanced star coloring -----------------------------------------------------

def _check_star_balance_preconditions(g: MultiGraph, side_a, side_b) -> int | None:
    if len(side_a) != len(side_b):
        raise PreconditionViolated(f"|A|={len(side_a)} != |B|={len(side_b)}")
    a_set, b_set = set(side_a), set(side_b)
    if a_set & b_set or len(a_set | b_set) != g.n:
        raise PreconditionViolated("sides must partition the vertex set")
    x = g.multi_center
    if x is not None and x not in a_set:
        raise PreconditionViolated(f"multi-center {x} must lie in side A")
    e_a = sum(m for u, v, m in g.edges() if u in a_set and v in a_set)
    e_b = sum(m for u, v, m in g.edges() if u in b_set and v in b_set)
    if e_a != e_b:
        raise PreconditionViolated(f"e(A)={e_a} != e(B)={e_b}")
    for u, v, _ in g.edges():
        if (u in a_set) != (v in a_set) and x not in (u, v):
            raise PreconditionViolated(f"crossing edge ({u},{v}) misses the multi-center")
    return x


def _missing_sets(c: EdgeColoring, side, color: int) -> list[int]:
    return [v for v in side if not c.has_color(v, color)]


def balanced_star_coloring(g: MultiGraph, side_a, side_b, k: int) -> EdgeColoring:
    """Proper k-coloring with equal per-color missing counts on both sides and
    all per-color counts within two of each other.

    Preconditions: |A| = |B|; the multi-center lies in A; within-side edge
    counts agree; every crossing edge touches the multi-center.
    """
    side_a, side_b = sorted(side_a), sorted(side_b)
    _check_star_balance_preconditions(g, side_a, side_b)
    c = _base_coloring_with_palette(g, k)
    swaps = _balance_sides(g, c, side_a, side_b)
    swaps += _balance_pairwise(g, c, side_a, side_b)
    log.debug("balanced_star_coloring: %d swaps, n=%d k=%d", swaps, g.n, k)
    return c


def _side_missing_counts(c: EdgeColoring, side) -> list[int]:
    counts = [0] * (c.k + 1)
    for v in side:
        mask = c.missing_mask(v)
        color = 1
        while mask:
            if mask & 1:
                counts[color] += 1
            mask >>= 1
            color += 1
    return counts


def _balance_sides(g: MultiGraph, c: EdgeColoring, side_a, side_b) -> int:
    """Phase 1: drive every per-color A/B missing-count difference to zero."""
    swaps = 0
    while True:
        cnt_a = _side_missing_counts(c, side_a)
        cnt_b = _side_missing_counts(c, side_b)
        diffs = [cnt_a[i] - cnt_b[i] for i in range(c.k + 1)]
        total = sum(abs(d) for d in diffs[1:])
        if total == 0:
            return swaps
        for i in range(1, c.k + 1):
            if diffs[i] % 2:
                raise InternalRepairFailure(f"odd missing-count difference at color {i}")
        i = next(i for i in range(1, c.k + 1) if diffs[i] >= 2)
        j = next(j for j in range(1, c.k + 1) if diffs[j] <= -2)
        sa_i = set(_missing_sets(c, side_a, i))
        sb_j = set(_missing_sets(c, side_b, j))
        move = None
        for chain in _path_components(g, c, i, j):
            u, w = chain.vertices[0], chain.vertices[-1]
            ends = {u, w}
            if len(ends) < 2:
                continue
            in_sa_i = [v for v in (u, w) if v in sa_i and not c.has_color(v, i)]
            in_sb_j = [v for v in (u, w) if v in sb_j and not c.has_color(v, j)]
            if len(in_sa_i) == 2 or len(in_sb_j) == 2:
                move = chain
                break
            if len(in_sa_i) == 1 and len(in_sb_j) == 1 and in_sa_i[0] != in_sb_j[0]:
                move = chain
                break
        if move is None:
            raise InternalRepairFailure(
                f"no productive swap between colors {i} and {j} "
                f"(diffs {diffs[i]}, {diffs[j]})")
        kempe_swap(g, c, move)
        swaps += 1


def _balance_pairwise(g: MultiGraph, c: EdgeColoring, side_a, side_b) -> int:
    """Phase 2: cut the max pairwise missing-count gap to two, preserving the
    per-color side equality from phase 1."""
    swaps = 0
    while True:
        cnt_a = _side_missing_counts(c, side_a)
        hi = min(range(1, c.k + 1), key=lambda t: (-cnt_a[t], t))
        lo = min(range(1, c.k + 1), key=lambda t: (cnt_a[t], t))
        if cnt_a[hi] - cnt_a[lo] <= 2:
            return swaps
        i, j = hi, lo
        sa_i = set(_missing_sets(c, side_a, i))
        sb_i = set(_missing_sets(c, side_b, i))
        cross = None
        double_a = None
        double_b = None
        for chain in _path_components(g, c, i, j):
            u, w = chain.vertices[0], chain.vertices[-1]
            if u == w:
                continue
            ends_a = sum(1 for v in (u, w) if v in sa_i)
            ends_b = sum(1 for v in (u, w) if v in sb_i)
            if ends_a == 1 and ends_b == 1:
                cross = chain
                break
            if ends_a == 2 and double_a is None:
                double_a = chain
            if ends_b == 2 and double_b is None:
                double_b = chain
        if cross is not None:
            kempe_swap(g, c, cross)
            swaps += 1
        elif double_a is not None and double_b is not None:
            kempe_swap(g, c, double_a)
            # the second chain is a different component, untouched by the first swap
            kempe_swap(g, c, double_b)
            swaps += 2
        else:
            raise InternalRepairFailure(
                f"no gap-reducing swap between colors {i} ({cnt_a[i]}) and {j} ({cnt_a[j]})")


# -- balanced vertex partition --------------------------------------------------------

def default_imbalance_bound(half: int) -> float:
    """Default per-vertex degree-imbalance bound for ``half`` pairs."""
    return half ** (2.0 / 3.0) - 1.0


def _pair_up(g: MultiGraph, pairs) -> list[tuple[int, int]]:
    used: set[int] = set()
    fixed: list[tuple[int, int]] = []
    for u, v in pairs:
        if u == v or u in used or v in used:
            raise PreconditionViolated(f"registered pairs overlap at ({u},{v})")
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise PreconditionViolated(f"pair ({u},{v}) outside vertex range")
        fixed.append((u, v))
        used.update((u, v))
    rest = [v for v in range(g.n) if v not in used]
    if len(rest) % 2:
        raise PreconditionViolated("vertex count must be even")
    fixed.extend((rest[i], rest[i + 1]) for i in range(0, len(rest), 2))
    return fixed


def _imbalances(g: MultiGraph, a_mask: int, side_a: set[int]) -> dict[int, int]:
    out = {}
    simple = g.is_simple()
    for v in range(g.n):
        if simple:
            d_a = (g.neighbor_mask(v) & a_mask).bit_count()
            d_b = g.simple_degree(v) - d_a
        else:
            d_a = g.count_edges_to(v, side_a)
            d_b = g.degree(v) - d_a
        out[v] = abs(d_a - d_b)
    return out


def balanced_partition(g: MultiGraph, pairs=(), *, bound: float | None = None,
                       retries: int = 64, rng: random.Random | None = None,
                       seed: int | None = None) -> VertexPartition:
    """Split V(g) into equal halves, one vertex of each registered pair per
    side, so every vertex's two side-degrees differ by at most ``bound``.

    Seeded retry with a cap; raises ``RetriesExhausted`` carrying the best
    attempt when no sampled split satisfies the bound.
    """
    if rng is None:
        rng = random.Random(seed)
    all_pairs = _pair_up(g, pairs)
    half = len(all_pairs)
    if bound is None:
        bound = default_imbalance_bound(half)
    best: VertexPartition | None = None
    for attempt in range(max(1, retries)):
        side_a: list[int] = []
        side_b: list[int] = []
        for u, v in all_pairs:
            if rng.random() < 0.5:
                side_a.append(u)
                side_b.append(v)
            else:
                side_a.append(v)
                side_b.append(u)
        a_set = set(side_a)
        a_mask = 0
        for v in side_a:
            a_mask |= 1 << v
        imb = _imbalances(g, a_mask, a_set)
        part = VertexPartition(sorted(side_a), sorted(side_b), imb)
        if best is None or part.max_imbalance < best.max_imbalance:
            best = part
        if part.max_imbalance <= bound:
            log.debug("balanced_partition: accepted attempt %d, max imbalance %d",
                      attempt + 1, part.max_imbalance)
            return part
    raise RetriesExhausted(
        f"no partition within bound {bound:.2f} after {retries} retries "
        f"(best max imbalance {best.max_imbalance})",
        best=best, max_imbalance=best.max_imbalance)
