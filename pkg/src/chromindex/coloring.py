"""Edge-coloring state, Kempe chains, multifans, and the max-degree-plus-one
coloring of star-multigraphs.

The colorer works on any star-multigraph (simple graphs included) and always
stays within ``max_degree + 1`` colors.  It first colors the closed
neighborhood of the multi-center (simple part with a small palette, parallel
slots with fresh colors), then colors the remaining edges greedily, repairing
each stuck edge with a multifan shift preceded by at most one two-color swap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ColorOutOfPalette,
    InternalRepairFailure,
    ProperViolation,
    StaleChain,
)
from .multigraph import MultiGraph, edge_key, induced_subgraph

Slot = tuple[int, int, int]


class EdgeColoring:
    """Partial proper assignment of colors in [1, k] to edge slots.

    Maintains, per vertex, a present-color bitmask and a color -> slot map, so
    missing-color queries and alternating walks are O(1) per step.  Assignments
    are checked for properness on the fly; an improper assignment raises
    ``ProperViolation`` instead of corrupting state.
    """

    __slots__ = ("k", "n", "assignment", "_present", "_slot_at")

    def __init__(self, n: int, k: int):
        if k < 0:
            raise ValueError("palette size must be non-negative")
        self.n = n
        self.k = k
        self.assignment: dict[Slot, int] = {}
        self._present = [0] * n
        self._slot_at: list[dict[int, Slot]] = [dict() for _ in range(n)]

    @property
    def full_mask(self) -> int:
        return (1 << self.k) - 1

    def check_color(self, c: int) -> None:
        if not (1 <= c <= self.k):
            raise ColorOutOfPalette(f"color {c} outside [1, {self.k}]")

    # -- assignment --------------------------------------------------------

    def assign(self, u: int, v: int, slot: int, color: int) -> None:
        self.check_color(color)
        key = edge_key(u, v) + (slot,)
        if key in self.assignment:
            raise ProperViolation(f"slot {key} already colored")
        bit = 1 << (color - 1)
        if (self._present[u] | self._present[v]) & bit:
            raise ProperViolation(f"color {color} already present at an end of {key}")
        self.assignment[key] = color
        for w in (u, v):
            self._present[w] |= bit
            self._slot_at[w][color] = key

    def unassign(self, u: int, v: int, slot: int) -> int:
        key = edge_key(u, v) + (slot,)
        color = self.assignment.pop(key, None)
        if color is None:
            raise ProperViolation(f"slot {key} not colored")
        bit = 1 << (color - 1)
        for w in (u, v):
            self._present[w] &= ~bit
            del self._slot_at[w][color]
        return color

    def color_of(self, u: int, v: int, slot: int) -> int | None:
        return self.assignment.get(edge_key(u, v) + (slot,))

    # -- per-vertex queries --------------------------------------------------

    def present_mask(self, v: int) -> int:
        return self._present[v]

    def missing_mask(self, v: int) -> int:
        return self.full_mask & ~self._present[v]

    def has_color(self, v: int, c: int) -> bool:
        return bool(self._present[v] & (1 << (c - 1)))

    def slot_with_color(self, v: int, c: int) -> Slot | None:
        return self._slot_at[v].get(c)

    def missing_colors(self, v: int) -> list[int]:
        return _mask_to_colors(self.missing_mask(v))

    def lowest_missing(self, v: int) -> int | None:
        m = self.missing_mask(v)
        return _lowest_color(m) if m else None

    def lowest_common_missing(self, u: int, v: int) -> int | None:
        m = self.missing_mask(u) & self.missing_mask(v)
        return _lowest_color(m) if m else None

    # -- whole-coloring queries ----------------------------------------------

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def color_classes(self) -> dict[int, list[Slot]]:
        classes: dict[int, list[Slot]] = {}
        for slot, c in self.assignment.items():
            classes.setdefault(c, []).append(slot)
        for slots in classes.values():
            slots.sort()
        return classes

    def copy(self) -> "EdgeColoring":
        out = EdgeColoring(self.n, self.k)
        out.assignment = dict(self.assignment)
        out._present = list(self._present)
        out._slot_at = [dict(d) for d in self._slot_at]
        return out

    def remap_colors(self, mapping: dict[int, int]) -> "EdgeColoring":
        """New coloring with colors renamed by ``mapping`` (identity elsewhere)."""
        out = EdgeColoring(self.n, self.k)
        for (u, v, s), c in self.assignment.items():
            out.assign(u, v, s, mapping.get(c, c))
        return out

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self.n}, k={self.k}, colored={len(self.assignment)})"


def _mask_to_colors(mask: int) -> list[int]:
    out = []
    c = 1
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


def _lowest_color(mask: int) -> int:
    return (mask & -mask).bit_length()


# -- verification ---------------------------------------------------------------

def verify_proper(g: MultiGraph, c: EdgeColoring) -> dict:
    """Independent properness check.  Never raises; recomputes everything from
    the raw assignment without trusting the coloring's caches.

    Returns ``{proper, colors_used, uncolored, total, issues}``.
    """
    issues: list[str] = []
    seen_at: list[set[int]] = [set() for _ in range(g.n)]
    colored = 0
    used: set[int] = set()
    graph_slots = set(g.edge_slots())
    for slot, color in c.assignment.items():
        if slot not in graph_slots:
            issues.append(f"colored slot {slot} not in graph")
            continue
        if not isinstance(color, int) or not (1 <= color <= c.k):
            issues.append(f"slot {slot} has color {color} outside [1,{c.k}]")
            continue
        u, v, _ = slot
        for w in (u, v):
            if color in seen_at[w]:
                issues.append(f"color {color} repeated at vertex {w}")
            seen_at[w].add(color)
        used.add(color)
        colored += 1
    uncolored = len(graph_slots) - sum(1 for s in c.assignment if s in graph_slots)
    return {
        "proper": not issues,
        "colors_used": len(used),
        "uncolored": uncolored,
        "total": uncolored == 0,
        "issues": issues,
    }


# -- Kempe chains ----------------------------------------------------------------

@dataclass(frozen=True)
class KempeChain:
    """A maximal two-colored alternating component: a path or an even cycle.

    ``vertices`` lists the component in walk order; ``first_color`` is the
    color of the edge between vertices[0] and vertices[1] (unset for a
    singleton path).
    """

    alpha: int
    beta: int
    vertices: tuple[int, ...]
    is_cycle: bool
    first_color: int | None

    def __len__(self) -> int:
        return len(self.vertices)


def kempe_chain_at(g: MultiGraph, c: EdgeColoring, v: int, alpha: int, beta: int) -> KempeChain:
    """The maximal (alpha, beta)-alternating component through ``v``.

    If ``v`` misses both colors the chain is the singleton path (v,).
    """
    c.check_color(alpha)
    c.check_color(beta)
    if alpha == beta:
        raise ColorOutOfPalette("chain colors must differ")

    def step(w: int, color: int) -> int | None:
        slot = c.slot_with_color(w, color)
        if slot is None:
            return None
        a, b, _ = slot
        return b if a == w else a

    has_a, has_b = c.has_color(v, alpha), c.has_color(v, beta)
    if not has_a and not has_b:
        return KempeChain(alpha, beta, (v,), False, None)

    def walk(start: int, color: int) -> list[int]:
        seq = [start]
        cur, col = start, color
        while True:
            nxt = step(cur, col)
            if nxt is None or nxt == v and len(seq) > 1:
                if nxt == v:
                    seq.append(nxt)
                return seq
            seq.append(nxt)
            cur, col = nxt, (alpha if col == beta else beta)

    if has_a != has_b:
        first = alpha if has_a else beta
        seq = walk(v, first)
        return KempeChain(alpha, beta, tuple(seq), False, first)

    # v interior: walk the beta side backwards, then alpha side forwards.
    back = walk(v, beta)
    if back[-1] == v and len(back) > 2:
        return KempeChain(alpha, beta, tuple(back[:-1]), True, beta)
    forward = walk(v, alpha)
    seq = list(reversed(back)) + forward[1:]
    # back edges alternate beta, alpha, ...; the first edge of seq is back's last.
    first = beta if (len(back) - 2) % 2 == 0 else alpha
    return KempeChain(alpha, beta, tuple(seq), False, first)


def _chain_slots(c: EdgeColoring, chain: KempeChain) -> list[tuple[Slot, int]]:
    """Slots along the chain with their current colors; StaleChain on mismatch."""
    verts = chain.vertices
    if len(verts) <= 1:
        return []
    pairs = list(zip(verts, verts[1:]))
    if chain.is_cycle:
        pairs.append((verts[-1], verts[0]))
    out = []
    color = chain.first_color
    for u, v in pairs:
        slot = c.slot_with_color(u, color)
        if slot is None or v not in slot[:2] or u not in slot[:2]:
            raise StaleChain(f"edge ({u},{v}) no longer carries color {color}")
        out.append((slot, color))
        color = chain.alpha if color == chain.beta else chain.beta
    return out


def kempe_swap(g: MultiGraph, c: EdgeColoring, chain: KempeChain) -> EdgeColoring:
    """Interchange the chain's two colors on its edges, in place.

    Properness is preserved; the two endpoints of a path chain toggle their
    missing colors and every other vertex is untouched.  Raises ``StaleChain``
    if the chain does not match the current coloring.
    """
    slots = _chain_slots(c, chain)
    for slot, _ in slots:
        c.unassign(*slot)
    for slot, color in slots:
        c.assign(slot[0], slot[1], slot[2], chain.alpha if color == chain.beta else chain.beta)
    return c


# -- multifans --------------------------------------------------------------------

@dataclass
class Multifan:
    """Fan at ``center`` grown from the uncolored edge ``start_slot``.

    ``leaves[i]`` is the i-th fan vertex; ``edges[i]`` its connecting slot
    (``edges[0]`` is the uncolored start edge).  Growth condition: each later
    edge's color is missing at some earlier leaf.
    """

    center: int
    start_slot: Slot
    leaves: list[int]
    edges: list[Slot]

    def check_condition(self, c: EdgeColoring) -> bool:
        """True iff every edge after the first has its color missing at an
        earlier leaf."""
        for i in range(1, len(self.leaves)):
            color = c.assignment.get(self.edges[i])
            if color is None:
                return False
            if not any(not c.has_color(self.leaves[j], color) for j in range(i)):
                return False
        return True


def build_multifan(g: MultiGraph, c: EdgeColoring, u: int, v1: int, slot: int) -> Multifan:
    """Maximal multifan centered at ``u`` for the uncolored slot (u, v1, slot).

    Greedy growth; ties broken by lowest leaf index, then lowest color.
    """
    fan = Multifan(u, edge_key(u, v1) + (slot,), [v1], [edge_key(u, v1) + (slot,)])
    in_fan = {v1}
    missing_union = c.missing_mask(v1)
    while True:
        best: tuple[int, int, Slot] | None = None
        for w in g.neighbors(u):
            if w in in_fan or w == u:
                continue
            for s in range(g.multiplicity(u, w)):
                key = edge_key(u, w) + (s,)
                color = c.assignment.get(key)
                if color is None:
                    continue
                if missing_union & (1 << (color - 1)):
                    cand = (w, color, key)
                    if best is None or cand[:2] < best[:2]:
                        best = cand
        if best is None:
            return fan
        w, _, key = best
        fan.leaves.append(w)
        fan.edges.append(key)
        in_fan.add(w)
        missing_union |= c.missing_mask(w)


# -- the max-degree-plus-one colorer ----------------------------------------------

def star_multigraph_coloring(g: MultiGraph, k: int | None = None) -> EdgeColoring:
    """Total proper coloring of a star-multigraph with at most Δ(g)+1 colors.

    Works for simple graphs too (no multi-center, or a center without
    parallels).  ``k`` may widen the palette; it defaults to Δ(g)+1.
    """
    if not g._star_checked:
        g.check_invariants()  # raises if parallels stray from a center
    delta = g.max_degree()
    palette = delta + 1 if k is None else k
    if palette < delta + 1:
        raise ColorOutOfPalette(f"palette {palette} below max degree + 1 = {delta + 1}")
    c = EdgeColoring(g.n, palette)
    x = g.multi_center
    done: set[Slot] = set()

    if x is not None and g.simple_degree(x) > 0:
        _color_center_neighborhood(g, c, x, done)

    for u, v, s in g.edge_slots():
        key = (u, v, s)
        if key in done or key in c.assignment:
            continue
        color = c.lowest_common_missing(u, v)
        if color is not None:
            c.assign(u, v, s, color)
        else:
            _repair_stuck_edge(g, c, u, v, s)
    return c


def _color_center_neighborhood(g: MultiGraph, c: EdgeColoring, x: int, done: set[Slot]) -> None:
    """Color every edge inside N[x]: the simple support first, confined to a
    small palette, then one fresh color per extra parallel slot."""
    hood = sorted(g.neighbors(x)) + [x]
    sub, new_to_old = induced_subgraph(g, hood)
    # simple support of the neighborhood subgraph
    simple = MultiGraph(sub.n)
    for a, b, _ in sub.edges():
        simple.add_edge(a, b)
    sub_coloring = star_multigraph_coloring(simple)
    low_palette = simple.max_degree() + 1
    for (a, b, _), color in sub_coloring.assignment.items():
        u, v = new_to_old[a], new_to_old[b]
        c.assign(u, v, 0, color)
        done.add(edge_key(u, v) + (0,))
    # parallel slots each take a brand-new color above the small palette:
    # all are incident with x, so they must be pairwise distinct anyway.
    next_color = low_palette + 1
    for v in sorted(g.neighbors(x)):
        for s in range(1, g.multiplicity(x, v)):
            if next_color > c.k:
                raise InternalRepairFailure("fresh colors for parallel slots exceed palette")
            c.assign(x, v, s, next_color)
            done.add(edge_key(x, v) + (s,))
            next_color += 1


def _valid_fan_center(g: MultiGraph, c: EdgeColoring, r: int) -> bool:
    """A fan center must have at most one colored slot per neighbor pair."""
    for w in g._adj[r]:
        if g.multiplicity(r, w) > 1:
            colored = sum(
                1 for s in range(g.multiplicity(r, w))
                if edge_key(r, w) + (s,) in c.assignment)
            if colored > 1:
                return False
    return True


def _repair_stuck_edge(g: MultiGraph, c: EdgeColoring, u: int, v: int, slot: int) -> None:
    """Color the stuck slot via a multifan shift, possibly after one swap."""
    center = None
    for cand in sorted((u, v)):
        if _valid_fan_center(g, c, cand):
            center = cand
            break
    if center is None:
        raise InternalRepairFailure(f"no valid fan center for edge ({u},{v})")
    tip = v if center == u else u

    fan = build_multifan(g, c, center, tip, slot)
    leaves = fan.leaves

    # Case A: some leaf shares a missing color with the center.
    for idx, w in enumerate(leaves):
        if c.missing_mask(center) & c.missing_mask(w):
            _shift_fan_prefix(g, c, fan, idx)
            return

    # Case B: two leaves share a missing color; swap one free of the center's
    # chain, then case A applies to a fan prefix.
    found = None
    for i in range(len(leaves)):
        for j in range(i + 1, len(leaves)):
            common = c.missing_mask(leaves[i]) & c.missing_mask(leaves[j])
            if common:
                found = (i, j, _lowest_color(common))
                break
        if found:
            break
    if found is None:
        raise InternalRepairFailure(
            f"maximal fan at {center} has no shared missing color (size {len(leaves)})")
    i, j, gamma = found
    alpha = c.lowest_missing(center)
    if alpha is None:
        raise InternalRepairFailure(f"center {center} has no missing color")
    center_chain = set(kempe_chain_at(g, c, center, alpha, gamma).vertices)
    swap_idx = None
    for t in (i, j):  # prefer the earlier leaf when both are unlinked
        if leaves[t] not in center_chain:
            swap_idx = t
            break
    if swap_idx is None:
        raise InternalRepairFailure("both shared-missing leaves lie on the center's chain")
    chain = kempe_chain_at(g, c, leaves[swap_idx], alpha, gamma)
    kempe_swap(g, c, chain)
    alpha_bit = 1 << (alpha - 1)
    for idx, w in enumerate(leaves):
        if c.missing_mask(w) & alpha_bit and c.missing_mask(center) & alpha_bit:
            _shift_fan_prefix(g, c, fan, idx)
            return
    raise InternalRepairFailure("swap did not open a shared missing color")


def _shift_fan_prefix(g: MultiGraph, c: EdgeColoring, fan: Multifan, m: int) -> None:
    """Rotate colors down the fan towards the start edge and finish with a
    color missing at both the center and leaf ``m``."""
    leaves, edges = fan.leaves, fan.edges
    # backward extraction: a sub-sequence ending at m in which each edge's
    # color is missing at the previous member.
    seq = [m]
    cur = m
    while cur != 0:
        color = c.assignment[edges[cur]]
        bit = 1 << (color - 1)
        prev = None
        for t in range(cur):
            if c.missing_mask(leaves[t]) & bit:
                prev = t
                break
        if prev is None:
            raise InternalRepairFailure("fan growth witness disappeared")
        seq.append(prev)
        cur = prev
    seq.reverse()

    final = c.lowest_common_missing(fan.center, leaves[m])
    if final is None:
        raise InternalRepairFailure("prefix tip lost its shared missing color")
    moved = [c.assignment[edges[t]] for t in seq[1:]]
    for t in seq[1:]:
        c.unassign(*edges[t])
    targets = seq[:-1]
    for t, color in zip(targets, moved):
        c.assign(edges[t][0], edges[t][1], edges[t][2], color)
    last = edges[seq[-1]]
    c.assign(last[0], last[1], last[2], final)
