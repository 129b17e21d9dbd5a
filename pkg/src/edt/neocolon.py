"""Neo-colonizations: connected vertex partitions weighted by clique / connected domination.

For a tree the weight of a part is 1 for K_1 and K_2 and otherwise one
more than the number of vertices that are internal in the part's induced
subtree.  Both rules collapse to ``1 + #{v : deg_part(v) >= 2}``, which is
what the dynamic program below charges.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .graph import Graph, Tree, bits, classify_vertices, mask_of, validate_tree
from .invariants import (
    DominatingSet,
    SizeLimitExceeded,
    brute_connected_domination_number,
    connected_domination_number,
    dominates,
    domination_number,
    induces_connected,
)

MAX_ORACLE_N = 12
MAX_EXHAUSTIVE_N = 12


class NotMinimumWeight(ValueError):
    pass


@dataclass(frozen=True)
class NeoColonization:
    host: Graph
    parts: tuple[frozenset[int], ...]
    part_weights: tuple[int, ...]
    total_weight: int

    @property
    def k(self) -> int:
        return len(self.parts)

    def sorted_parts(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]

    def part_of(self, v: int) -> frozenset[int]:
        for p in self.parts:
            if v in p:
                return p
        raise KeyError(v)

    def crossing_edges(self) -> list[tuple[int, int]]:
        owner = {v: i for i, p in enumerate(self.parts) for v in p}
        return sorted(e for e in self.host.edges if owner[e[0]] != owner[e[1]])

    def has_singleton(self) -> bool:
        return any(len(p) == 1 for p in self.parts)


def _part_degrees(g: Graph, part: frozenset[int]) -> dict[int, int]:
    pm = mask_of(part)
    return {v: (g.nbr_masks[v] & pm).bit_count() for v in part}


def is_clique(g: Graph, part: Iterable[int]) -> bool:
    part = list(part)
    return all(g.has_edge(u, v) for u, v in combinations(part, 2))


def part_weight(t: Graph, part: Iterable[int]) -> int:
    """Weight of one part of a tree partition."""
    part = frozenset(part)
    if not part or not induces_connected(t, mask_of(part)):
        raise ValueError(f"part {sorted(part)} does not induce a connected subgraph")
    if len(part) <= 2:
        return 1
    return 1 + sum(1 for d in _part_degrees(t, part).values() if d >= 2)


def neocolonization(t: Graph, parts: Iterable[Iterable[int]]) -> NeoColonization:
    """Validate ``parts`` as a partition of a tree and attach weights."""
    ps = [frozenset(p) for p in parts]
    seen: set[int] = set()
    for p in ps:
        if seen & p:
            raise ValueError("parts overlap")
        seen |= p
    if seen != set(range(t.n)):
        raise ValueError("parts do not cover every vertex")
    ps.sort(key=min)
    weights = tuple(part_weight(t, p) for p in ps)
    return NeoColonization(t, tuple(ps), weights, sum(weights))


# --- exact optimizer for trees ----------------------------------------------------


def _rooted(t: Graph) -> tuple[list[int], list[int]]:
    parent = [-1] * t.n
    order = [0]
    seen = {0}
    for u in order:
        for w in t.adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    return order, parent


def _add(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] + b[0], a[1] + b[1])


def _optimize(t: Tree, no_singletons: bool) -> NeoColonization:
    """Rooted-tree DP minimizing (weight, -part_count) lexicographically.

    State of a vertex while its part is still open towards the parent: the
    number of children already joined into its part, capped at 2.  A joined
    child becomes internal in the part iff it already had a joined child.
    """
    order, parent = _rooted(t)
    kids = [[c for c in t.adj[v] if parent[c] == v] for v in range(t.n)]
    table: list[dict[int, tuple[int, int]]] = [dict() for _ in range(t.n)]
    trace: list[list[dict[int, tuple[int, object]]]] = [[] for _ in range(t.n)]
    best_close: list[tuple[tuple[int, int], int] | None] = [None] * t.n

    def closing(v: int) -> tuple[tuple[int, int], int] | None:
        best = None
        for d, cost in sorted(table[v].items()):
            if no_singletons and d == 0:
                continue
            c = _add(cost, (1 + (d >= 2), -1))
            if best is None or c < best[0]:
                best = (c, d)
        return best

    for v in reversed(order):
        cur: dict[int, tuple[int, int]] = {0: (0, 0)}
        for c in kids[v]:
            nxt: dict[int, tuple[int, int]] = {}
            back: dict[int, tuple[int, object]] = {}

            def offer(nd: int, cost: tuple[int, int], how: tuple[int, object]) -> None:
                if nd not in nxt or cost < nxt[nd]:
                    nxt[nd] = cost
                    back[nd] = how

            close_c = best_close[c]
            for d, cost in sorted(cur.items()):
                if close_c is not None:
                    offer(d, _add(cost, close_c[0]), (d, "cut"))
                for dc, ccost in sorted(table[c].items()):
                    offer(min(d + 1, 2), _add(cost, _add(ccost, (int(dc >= 1), 0))), (d, dc))
            cur = nxt
            trace[v].append(back)
        table[v] = cur
        best_close[v] = closing(v)

    root = order[0]
    if best_close[root] is None:
        raise ValueError("no admissible partition")
    joined: list[tuple[int, int]] = []

    def unwind(v: int, d: int) -> None:
        for i in range(len(kids[v]) - 1, -1, -1):
            c = kids[v][i]
            prev, how = trace[v][i][d]
            if how == "cut":
                unwind(c, best_close[c][1])
            else:
                joined.append((v, c))
                unwind(c, how)
            d = prev

    if t.n + 100 > sys.getrecursionlimit():
        sys.setrecursionlimit(t.n + 100)
    unwind(root, best_close[root][1])
    return neocolonization(t, _components_from(t.n, joined))


def _components_from(n: int, kept_edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in kept_edges:
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def theta_c(t: Tree) -> tuple[int, NeoColonization]:
    """Minimum neo-colonization weight of a tree plus one optimal partition."""
    t = validate_tree(t)
    p = _optimize(t, no_singletons=False)
    return p.total_weight, p


def finest_neocolonization(t: Tree) -> tuple[NeoColonization, int]:
    """Minimum weight, no singleton parts, and as many parts as possible."""
    t = validate_tree(t)
    if t.n < 2:
        raise ValueError("need at least two vertices")
    p = _optimize(t, no_singletons=True)
    if p.total_weight != _optimize(t, no_singletons=False).total_weight:
        raise AssertionError("no-singleton optimum heavier than the unrestricted optimum")
    return p, p.k


# --- exhaustive paths ---------------------------------------------------------


def all_neocolonizations(t: Tree) -> Iterator[NeoColonization]:
    """Every neo-colonization of a tree, one per subset of kept edges."""
    if t.n > MAX_EXHAUSTIVE_N:
        raise SizeLimitExceeded(f"partition enumeration is limited to n <= {MAX_EXHAUSTIVE_N}")
    edges = t.sorted_edges()
    for keep in range(1 << len(edges)):
        kept = [edges[i] for i in bits(keep)]
        yield neocolonization(t, _components_from(t.n, kept))


def minimum_neocolonizations(t: Tree) -> list[NeoColonization]:
    every = list(all_neocolonizations(t))
    best = min(p.total_weight for p in every)
    return [p for p in every if p.total_weight == best]


def all_finest_neocolonizations(t: Tree) -> list[NeoColonization]:
    cands = [p for p in minimum_neocolonizations(t) if not p.has_singleton()]
    k = max(p.k for p in cands)
    return [p for p in cands if p.k == k]


def theta_c_oracle(g: Graph) -> int:
    """Exact clique-connected cover number by search over connected partitions.

    Works on any graph: cliques weigh 1, other parts weigh one more than the
    connected domination number of the part, found by subset search.
    """
    if g.n > MAX_ORACLE_N:
        raise SizeLimitExceeded(f"partition oracle is limited to n <= {MAX_ORACLE_N}")

    @lru_cache(maxsize=None)
    def weight(mask: int) -> int:
        vs = bits(mask)
        if is_clique(g, vs):
            return 1
        sub, _ = g.induced(vs)
        return 1 + brute_connected_domination_number(sub)

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        low = mask & -mask
        rest = mask ^ low
        out = None
        sub = rest
        while True:
            part = sub | low
            if induces_connected(g, part):
                w = weight(part) + best(mask & ~part)
                if out is None or w < out:
                    out = w
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return out

    return best(g.full_mask)


# --- partition surgery ---------------------------------------------------------


def normalize_no_singletons(t: Tree, p: NeoColonization) -> NeoColonization:
    """Merge singleton parts into a neighboring part without changing the weight."""
    if t.n < 2:
        raise ValueError("need at least two vertices")
    parts = [set(q) for q in p.parts]
    while True:
        single = next((q for q in parts if len(q) == 1), None)
        if single is None:
            break
        (x,) = single
        merged = False
        for q in sorted((q for q in parts if q is not single), key=min):
            if not any(t.has_edge(x, y) for y in q):
                continue
            before = part_weight(t, q) + 1
            after = part_weight(t, q | {x})
            if after == before:
                q.add(x)
                parts.remove(single)
                merged = True
                break
            if after < before:
                raise NotMinimumWeight(f"merging {x} lowers the weight; input is not minimum")
        if not merged:
            raise NotMinimumWeight(f"no weight-preserving merge target for singleton {x}")
    out = neocolonization(t, parts)
    if out.total_weight != p.total_weight:
        raise NotMinimumWeight("weight changed during normalization")
    return out


@dataclass(frozen=True)
class StarPartition:
    partition: NeoColonization
    centers: tuple[int, ...]

    @property
    def fat(self) -> bool:
        return all(len(p) >= 3 for p in self.partition.parts)


def dominating_set_partition(t: Tree, D) -> StarPartition:
    """Stars centered at the members of a minimum dominating set."""
    D = frozenset(D.vertices if isinstance(D, DominatingSet) else D)
    if not dominates(t, D):
        raise ValueError("set does not dominate the tree")
    if len(D) != domination_number(t):
        raise ValueError("set is not a minimum dominating set")
    groups = {c: {c} for c in D}
    for v in range(t.n):
        if v not in D:
            groups[min(w for w in t.adj[v] if w in D)].add(v)
    part = neocolonization(t, groups.values())
    centers = tuple(next(c for c in D if c in q) for q in part.parts)
    return StarPartition(part, centers)


def is_fat_dominating_partition(t: Tree, p: NeoColonization, gamma: int | None = None) -> bool:
    """True when every part is a star on >= 3 vertices and the centers form a minimum dominating set."""
    if gamma is None:
        gamma = domination_number(t)
    if p.k != gamma:
        return False
    centers = []
    for q in p.parts:
        if len(q) < 3:
            return False
        degs = _part_degrees(t, q)
        hubs = [v for v, d in degs.items() if d == len(q) - 1]
        if len(hubs) != 1 or sum(degs.values()) != 2 * (len(q) - 1):
            return False
        centers.append(hubs[0])
    return dominates(t, centers)


# --- spanning-forest form ---------------------------------------------------------


@dataclass(frozen=True)
class ForestWitness:
    subtrees: tuple[frozenset[int], ...]
    k: int
    r: int
    loners_as_leaves: tuple[int, ...]
    deleted_edges: tuple[tuple[int, int], ...]


def _forest_witness_from(t: Tree, parts: Iterable[frozenset[int]], loners: set[int]) -> ForestWitness:
    parts = tuple(sorted(parts, key=min))
    k = sum(1 for p in parts if len(p) >= 3)
    r = sum(1 for p in parts if len(p) == 2)
    leafy = []
    for p in parts:
        for v, d in _part_degrees(t, p).items():
            if d <= 1 and v in loners:
                leafy.append(v)
    owner = {v: i for i, p in enumerate(parts) for v in p}
    cut = tuple(sorted(e for e in t.edges if owner[e[0]] != owner[e[1]]))
    return ForestWitness(parts, k, r, tuple(sorted(leafy)), cut)


def spanning_forest_witness(t: Tree) -> ForestWitness | None:
    """Forest certificate that the game number is below gamma_c + 1, if it is."""
    t = validate_tree(t)
    if t.n < 2:
        raise ValueError("need at least two vertices")
    p, _ = finest_neocolonization(t)
    if p.total_weight >= connected_domination_number(t) + 1:
        return None
    loners = set(classify_vertices(t).loners)
    return _forest_witness_from(t, p.parts, loners)


def verify_forest_witness(t: Tree, w: ForestWitness) -> bool:
    """Re-check a witness from scratch against the tree."""
    covered: set[int] = set()
    for p in w.subtrees:
        if len(p) < 2 or covered & p or not induces_connected(t, mask_of(p)):
            return False
        covered |= p
    if covered != set(range(t.n)):
        return False
    loners = set(classify_vertices(t).loners)
    fresh = _forest_witness_from(t, w.subtrees, loners)
    if (fresh.k, fresh.r, fresh.loners_as_leaves, fresh.deleted_edges) != (
        w.k,
        w.r,
        w.loners_as_leaves,
        w.deleted_edges,
    ):
        return False
    kept = set(t.edges) - set(w.deleted_edges)
    comps = _components_from(t.n, kept)
    if sorted(map(sorted, comps)) != sorted(map(sorted, w.subtrees)):
        return False
    return len(w.loners_as_leaves) >= w.k
