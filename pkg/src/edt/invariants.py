"""Exact domination, connected domination and independence numbers."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, Tree, bits, classify_vertices, eccentricity, is_star, mask_of, validate_tree

MAX_GAMMA_BRUTE_N = 20
MAX_BETA_BRUTE_N = 24
MAX_MDS_ENUM_N = 16

INF = math.inf


class SizeLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DominatingSet:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


@dataclass(frozen=True)
class InvariantBundle:
    gamma: int
    gamma_c: int
    beta: int
    half_ceil: int


def _as_tree(g: Graph) -> Tree | None:
    if isinstance(g, Tree):
        return g
    return validate_tree(g) if g.is_tree() else None


def dominates(g: Graph, vertices) -> bool:
    covered = 0
    for v in vertices:
        covered |= g.closed_masks[v]
    return covered == g.full_mask


def _rooted(t: Graph, root: int = 0) -> tuple[list[int], list[int]]:
    parent = [-1] * t.n
    order = [root]
    seen = {root}
    for u in order:
        for w in t.adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    return order, parent


def _tree_gamma(t: Graph) -> int:
    # in_d: v in D; dominated: v not in D but a child is; needs: v not in D, no child in D
    order, parent = _rooted(t)
    in_d = [1] * t.n
    dominated = [INF] * t.n
    needs = [0] * t.n
    for v in reversed(order):
        kids = [c for c in t.adj[v] if parent[c] == v]
        in_d[v] = 1 + sum(min(in_d[c], dominated[c], needs[c]) for c in kids)
        needs[v] = sum(dominated[c] for c in kids)
        if kids:
            base = sum(min(in_d[c], dominated[c]) for c in kids)
            bump = min(max(0, in_d[c] - dominated[c]) for c in kids)
            dominated[v] = base + bump
    root = order[0]
    return int(min(in_d[root], dominated[root]))


def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        for u in comp:
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def brute_domination_number(g: Graph) -> int:
    if g.n > MAX_GAMMA_BRUTE_N:
        raise SizeLimitExceeded(f"exact domination search is limited to n <= {MAX_GAMMA_BRUTE_N}")
    cm = g.closed_masks
    full = g.full_mask
    for k in range(0, g.n + 1):
        for combo in combinations(range(g.n), k):
            cov = 0
            for v in combo:
                cov |= cm[v]
            if cov == full:
                return k
    return g.n


def domination_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    comps = _components(g)
    if len(comps) > 1:
        return sum(domination_number(g.induced(c)[0]) for c in comps)
    if g.m == g.n - 1:
        return _tree_gamma(g)
    return brute_domination_number(g)


def enumerate_min_dominating_sets(g: Graph, gamma: int | None = None) -> list[DominatingSet]:
    if g.n > MAX_MDS_ENUM_N:
        raise SizeLimitExceeded(f"minimum dominating set enumeration is limited to n <= {MAX_MDS_ENUM_N}")
    if gamma is None:
        gamma = domination_number(g)
    cm = g.closed_masks
    full = g.full_mask
    out = []
    for combo in combinations(range(g.n), gamma):
        cov = 0
        for v in combo:
            cov |= cm[v]
        if cov == full:
            out.append(DominatingSet(frozenset(combo)))
    return out


def connected_domination_number(t: Tree) -> int:
    if t.n <= 2:
        return 1
    return t.n - t.leaf_count


def brute_connected_domination_number(g: Graph) -> int:
    """Smallest dominating set inducing a connected subgraph, by subset search."""
    if g.n > MAX_GAMMA_BRUTE_N:
        raise SizeLimitExceeded("connected domination search is too large")
    cm = g.closed_masks
    full = g.full_mask
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            cov = 0
            for v in combo:
                cov |= cm[v]
            if cov == full and induces_connected(g, mask_of(combo)):
                return k
    raise ValueError("graph is not connected")


def induces_connected(g: Graph, mask: int) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    reached = start
    frontier = start
    nm = g.nbr_masks
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= nm[v]
        nxt &= mask & ~reached
        reached |= nxt
        frontier = nxt
    return reached == mask


def _tree_beta(t: Graph) -> int:
    order, parent = _rooted(t)
    take = [1] * t.n
    skip = [0] * t.n
    for v in reversed(order):
        for c in t.adj[v]:
            if parent[c] == v:
                take[v] += skip[c]
                skip[v] += max(take[c], skip[c])
    root = order[0]
    return max(take[root], skip[root])


def brute_independence_number(g: Graph) -> int:
    if g.n > MAX_BETA_BRUTE_N:
        raise SizeLimitExceeded(f"exact independence search is limited to n <= {MAX_BETA_BRUTE_N}")
    nm = g.nbr_masks

    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        # vertices of degree <= 1 inside mask can always be taken
        if (nm[v] & mask).bit_count() <= 1:
            return 1 + best(mask & ~(1 << v) & ~nm[v])
        return max(best(mask & ~(1 << v)), 1 + best(mask & ~(1 << v) & ~nm[v]))

    return best(g.full_mask)


def independence_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    comps = _components(g)
    if len(comps) > 1:
        return sum(independence_number(g.induced(c)[0]) for c in comps)
    if g.m == g.n - 1:
        return _tree_beta(g)
    return brute_independence_number(g)


def _star_beta(t: Graph) -> int:
    return 1 if t.n <= 2 else t.n - 1


def beta_via_star_partition(t: Tree, rng: random.Random | None = None) -> tuple[int, list[frozenset[int]]]:
    """Peel exposed stems with their leaves until a star remains.

    Without ``rng`` the exposed stem of largest eccentricity (smallest id on
    ties) is peeled each round; with ``rng`` a random exposed stem is used.
    """
    if t.n < 2:
        raise ValueError("need at least two vertices")
    alive = list(range(t.n))
    parts: list[frozenset[int]] = []
    total = 0
    cur, ids = t.induced(alive)
    while True:
        cur_t = validate_tree(cur)
        if is_star(cur_t):
            parts.append(frozenset(ids))
            total += _star_beta(cur_t)
            break
        cls = classify_vertices(cur_t)
        stems = cls.exposed_stems
        if rng is None:
            stem = min(stems, key=lambda s: (-eccentricity(cur_t, s), s))
        else:
            stem = rng.choice(stems)
        peeled = [stem] + [w for w in cur_t.adj[stem] if w in cur_t.leaves]
        parts.append(frozenset(ids[v] for v in peeled))
        total += len(peeled) - 1
        rest = [ids[v] for v in range(cur_t.n) if v not in peeled]
        cur, ids = t.induced(rest)
    return total, parts


def external_private_neighbors(g: Graph, X, x: int) -> frozenset[int]:
    X = frozenset(X)
    if x not in X:
        raise ValueError(f"{x} is not a member of the set")
    xmask = mask_of(X)
    others = xmask & ~(1 << x)
    out = []
    for v in g.adj[x]:
        if v in X:
            continue
        if g.nbr_masks[v] & others == 0:
            out.append(v)
    return frozenset(out)


@dataclass(frozen=True)
class DominationLabeling:
    host: Graph
    D: frozenset[int]
    label: tuple[int, ...]

    @property
    def ones(self) -> frozenset[int]:
        return frozenset(v for v, c in enumerate(self.label) if c == 1)

    @property
    def L2(self) -> frozenset[int]:
        return frozenset(v for v, c in enumerate(self.label) if c == 2)

    @property
    def F1(self) -> Graph:
        return self.host.induced(self.ones)[0]

    def f1_neighbors(self, x: int) -> frozenset[int]:
        ones = self.ones
        if x not in ones:
            return frozenset()
        return frozenset(w for w in self.host.adj[x] if w in ones)


def domination_labeling(g: Graph, D) -> DominationLabeling:
    D = frozenset(D.vertices if isinstance(D, DominatingSet) else D)
    if not dominates(g, D):
        raise ValueError("labeling needs a dominating set")
    dmask = mask_of(D)
    label = tuple((g.closed_masks[v] & dmask).bit_count() for v in range(g.n))
    return DominationLabeling(g, D, label)


def invariant_bundle(t: Tree) -> InvariantBundle:
    return InvariantBundle(
        gamma=domination_number(t),
        gamma_c=connected_domination_number(t),
        beta=independence_number(t),
        half_ceil=(t.n + 1) // 2,
    )
