"""Spanning path covers with prescribed endpoints.

``path_cover`` covers all vertices of a simple graph by vertex-disjoint paths
joining the given endpoint pairs.  The construction is heuristic: BFS seed
paths, greedy absorption of uncovered vertices by neighbor insertion, and
2-opt reshuffles that keep both endpoints fixed, under randomized restarts.
Every returned cover is checked by an independent validator; exhausting the
budget raises ``CoverNotFound`` with the largest partial cover.

``path_cover_star`` extends the cover to a star-multigraph by removing the
multi-center, rewiring the affected endpoint pair through the center's
neighbors, covering the simple remainder, and stitching the center back."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .errors import CoverNotFound, PreconditionViolated
from .multigraph import MultiGraph, induced_subgraph

log = logging.getLogger(__name__)


@dataclass
class PathCover:
    """Vertex-disjoint paths P_1..P_t covering V(G); path i joins the i-th
    registered endpoint pair."""

    paths: list[list[int]]
    endpoints: list[tuple[int, int]]

    def covered(self) -> set[int]:
        return {v for p in self.paths for v in p}

    def total_edges(self) -> int:
        return sum(len(p) - 1 for p in self.paths)


@dataclass
class CoverBudget:
    restarts: int = 20
    rotations_per_vertex: int = 50

    def rotations(self, n: int) -> int:
        return max(1, self.rotations_per_vertex * n)


def validate_path_cover(g: MultiGraph, cover: PathCover,
                        pairs: list[tuple[int, int]] | None = None) -> list[str]:
    """Independent validity check; returns a list of problems (empty = valid).

    Deliberately shares no state with the construction: coverage,
    disjointness, endpoint identity, and edge existence are all recomputed
    from the graph."""
    issues = []
    expected = list(pairs) if pairs is not None else list(cover.endpoints)
    if len(cover.paths) != len(expected):
        issues.append(f"{len(cover.paths)} paths for {len(expected)} pairs")
        return issues
    seen: set[int] = set()
    for idx, (path, (a, b)) in enumerate(zip(cover.paths, expected)):
        if len(path) < 2:
            issues.append(f"path {idx} has fewer than two vertices")
            continue
        if path[0] != a or path[-1] != b:
            issues.append(f"path {idx} joins ({path[0]},{path[-1]}), expected ({a},{b})")
        for v in path:
            if v in seen:
                issues.append(f"vertex {v} appears in two paths or twice")
            seen.add(v)
        for u, v in zip(path, path[1:]):
            if g.multiplicity(u, v) == 0:
                issues.append(f"path {idx} uses missing edge ({u},{v})")
    if seen != set(range(g.n)):
        missing = sorted(set(range(g.n)) - seen)
        issues.append(f"uncovered vertices {missing[:6]}{'...' if len(missing) > 6 else ''}")
    return issues


def _bfs_path(adj: list[list[int]], a: int, b: int, blocked: set[int],
              rng: random.Random) -> list[int] | None:
    """Shortest a-b path avoiding ``blocked``; neighbor order randomized."""
    if a == b:
        return None
    prev = {a: a}
    frontier = [a]
    while frontier:
        nxt = []
        rng.shuffle(frontier)
        for u in frontier:
            for w in adj[u]:
                if w in prev or (w in blocked and w != b):
                    continue
                prev[w] = u
                if w == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                nxt.append(w)
        frontier = nxt
    return None


def _try_insert(g: MultiGraph, paths: list[list[int]], w: int) -> bool:
    """Insert w between some adjacent consecutive pair of a path."""
    mask = g.neighbor_mask(w)
    for path in paths:
        for i in range(len(path) - 1):
            if (mask >> path[i]) & 1 and (mask >> path[i + 1]) & 1:
                path.insert(i + 1, w)
                return True
    return False


def _try_insert_pair(g: MultiGraph, paths: list[list[int]], w1: int, w2: int) -> bool:
    """Insert the adjacent uncovered pair w1-w2 into some path edge."""
    m1, m2 = g.neighbor_mask(w1), g.neighbor_mask(w2)
    for path in paths:
        for i in range(len(path) - 1):
            u, v = path[i], path[i + 1]
            if (m1 >> u) & 1 and (m2 >> v) & 1:
                path[i + 1:i + 1] = [w1, w2]
                return True
            if (m2 >> u) & 1 and (m1 >> v) & 1:
                path[i + 1:i + 1] = [w2, w1]
                return True
    return False


def _two_opt(g: MultiGraph, path: list[int], rng: random.Random) -> bool:
    """In-place 2-opt keeping both endpoints; True if the path changed."""
    m = len(path) - 1
    if m < 3:
        return False
    for _ in range(8):
        i = rng.randrange(0, m - 2)
        j = rng.randrange(i + 2, m)
        if g.has_edge(path[i], path[j]) and g.has_edge(path[i + 1], path[j + 1]):
            path[i + 1:j + 1] = reversed(path[i + 1:j + 1])
            return True
    return False


def path_cover(g: MultiGraph, pairs: list[tuple[int, int]],
               budget: CoverBudget | None = None,
               rng: random.Random | None = None, seed: int | None = None,
               alpha: float | None = None) -> PathCover:
    """Vertex-disjoint paths covering V(g), path i joining pairs[i].

    ``alpha`` only drives advisory logging of the density heuristics."""
    if g.max_multiplicity() > 1:
        raise PreconditionViolated("path_cover expects a simple graph")
    ends = [w for pair in pairs for w in pair]
    if len(set(ends)) != len(ends):
        raise PreconditionViolated("endpoint pairs must be pairwise disjoint")
    if any(not (0 <= w < g.n) for w in ends):
        raise PreconditionViolated("endpoint outside vertex range")
    if not pairs:
        if g.n == 0:
            return PathCover([], [])
        raise CoverNotFound("no endpoint pairs but a non-empty vertex set",
                            partial=PathCover([], []))
    if alpha is not None:
        if len(pairs) > alpha * g.n / 5:
            log.info("path_cover: %d pairs exceeds the advisory cap %.1f",
                     len(pairs), alpha * g.n / 5)
        if g.min_degree() < alpha * g.n:
            log.info("path_cover: min degree %d below advisory %.1f",
                     g.min_degree(), alpha * g.n)

    if rng is None:
        rng = random.Random(seed)
    budget = budget or CoverBudget()
    adj = [g.neighbors(v) for v in range(g.n)]
    best: PathCover | None = None
    best_covered = -1
    order = list(range(len(pairs)))

    for restart in range(budget.restarts):
        rng.shuffle(order)
        used: set[int] = set(ends)
        paths_by_pair: dict[int, list[int]] = {}
        ok = True
        for idx in order:
            a, b = pairs[idx]
            blocked = used - {a, b}
            seedpath = _bfs_path(adj, a, b, blocked, rng)
            if seedpath is None:
                ok = False
                break
            paths_by_pair[idx] = seedpath
            used.update(seedpath)
        if not ok:
            continue
        paths = [paths_by_pair[i] for i in range(len(pairs))]
        uncovered = [v for v in range(g.n) if v not in used]
        rng.shuffle(uncovered)
        rotations = 0
        cap = budget.rotations(g.n)
        while uncovered and rotations <= cap:
            progress = False
            remaining = []
            for w in uncovered:
                if _try_insert(g, paths, w):
                    progress = True
                else:
                    remaining.append(w)
            if progress:
                uncovered = remaining
                continue
            # try absorbing adjacent uncovered pairs before reshuffling
            pair_done: set[int] = set()
            for w1 in remaining:
                if w1 in pair_done:
                    continue
                for w2 in remaining:
                    if w2 in pair_done or w2 == w1 or not g.has_edge(w1, w2):
                        continue
                    if _try_insert_pair(g, paths, w1, w2):
                        pair_done.update((w1, w2))
                        progress = True
                        break
            uncovered = [w for w in remaining if w not in pair_done]
            if progress:
                continue
            shuffled = _two_opt(g, paths[rng.randrange(len(paths))], rng)
            rotations += 1
            if not shuffled and rotations > cap:
                break
        cover = PathCover([list(p) for p in paths], list(pairs))
        if not uncovered and not validate_path_cover(g, cover, list(pairs)):
            return cover
        covered = g.n - len(uncovered)
        if covered > best_covered:
            best_covered = covered
            best = cover
    raise CoverNotFound(
        f"no spanning path cover within {budget.restarts} restarts "
        f"(best covered {best_covered}/{g.n})", partial=best)


def path_cover_star(g: MultiGraph, pairs: list[tuple[int, int]],
                    budget: CoverBudget | None = None,
                    rng: random.Random | None = None, seed: int | None = None,
                    alpha: float | None = None) -> PathCover:
    """Path cover of a star-multigraph: remove the multi-center, rewire the
    pair touching it (or split the last pair through two center neighbors),
    cover the simple remainder, and stitch the center back in."""
    x = g.multi_center
    if x is None:
        raise PreconditionViolated("path_cover_star needs a multi-center")
    if not pairs:
        raise PreconditionViolated("at least one endpoint pair is required")
    ends = [w for pair in pairs for w in pair]
    if len(set(ends)) != len(ends):
        raise PreconditionViolated("endpoint pairs must be pairwise disjoint")
    avail = [v for v in g.neighbors(x) if v not in set(ends)]
    if len(avail) < 2:
        raise PreconditionViolated(
            f"multi-center has {len(avail)} neighbors outside the endpoints, needs 2")
    if rng is None:
        rng = random.Random(seed)

    # relabel so that a pair containing x, if any, is last with x first
    order = list(range(len(pairs)))
    x_pair = next((i for i, p in enumerate(pairs) if x in p), None)
    if x_pair is not None:
        order = [i for i in order if i != x_pair] + [x_pair]
    work = [pairs[i] for i in order]
    if x_pair is not None and work[-1][0] != x:
        work[-1] = (work[-1][1], work[-1][0])

    sub, new_to_old = induced_subgraph(g, [v for v in range(g.n) if v != x])
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    budget = budget or CoverBudget()

    # The neighbor substitutes may be chosen freely; retry a few choices with
    # the restart budget split between them, canonical lowest-index first.
    if x_pair is not None:
        choices: list[tuple[int, ...]] = [(min(avail),)]
        extra = [v for v in avail if v != choices[0][0]]
        rng.shuffle(extra)
        choices += [(v,) for v in extra[:3]]
    else:
        lo = sorted(avail)[:2]
        choices = [(lo[0], lo[1])]
        seen = {choices[0]}
        for _ in range(12):
            pick = tuple(rng.sample(avail, 2))
            if pick not in seen:
                seen.add(pick)
                choices.append(pick)
            if len(choices) >= 4:
                break
    per_choice = CoverBudget(max(4, budget.restarts // len(choices)),
                             budget.rotations_per_vertex)

    lifted: list[list[int]] | None = None
    failure: CoverNotFound | None = None
    for choice in choices:
        reduced = [(old_to_new[a], old_to_new[b]) for a, b in work[:-1]]
        if x_pair is not None:
            a_sub = choice[0]
            reduced.append((old_to_new[a_sub], old_to_new[work[-1][1]]))
        else:
            a_t, b_t = work[-1]
            reduced.append((old_to_new[a_t], old_to_new[choice[0]]))
            reduced.append((old_to_new[choice[1]], old_to_new[b_t]))
        try:
            sub_cover = path_cover(sub, reduced, budget=per_choice, rng=rng, alpha=alpha)
        except CoverNotFound as exc:
            failure = exc
            continue
        lifted = [[new_to_old[v] for v in p] for p in sub_cover.paths]
        if x_pair is not None:
            lifted[-1] = [x] + lifted[-1]
        else:
            merged = lifted[-2] + [x] + lifted[-1]
            lifted = lifted[:-2] + [merged]
        break
    if lifted is None:
        raise CoverNotFound(
            f"no cover through any of {len(choices)} center-neighbor choices",
            partial=failure.partial if failure else None)

    # restore the caller's pair order
    paths = [None] * len(pairs)
    for pos, original_idx in enumerate(order):
        path = lifted[pos]
        a, b = pairs[original_idx]
        if path[0] == b and path[-1] == a:
            path = list(reversed(path))
        paths[original_idx] = path
    cover = PathCover(paths, list(pairs))
    issues = validate_path_cover(g, cover, list(pairs))
    if issues:
        raise CoverNotFound(f"stitched cover invalid: {issues[:3]}", partial=cover)
    return cover
