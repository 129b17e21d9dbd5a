"""Graphs, trees, edge-list parsing, tree generation and the leaf/stem taxonomy.

Vertices are always the dense integers ``0..n-1``.  Vertex sets that need
to be hashed or combined quickly are carried around as int bitmasks.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

import networkx as nx

DEFAULT_MAX_ENUM_N = 10


class GraphError(ValueError):
    """Base class for malformed graph input."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotConnected(GraphError):
    pass


class HasCycle(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm: set[tuple[int, int]] = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise GraphError(f"duplicate edge {e}")
            norm.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(norm), tuple(tuple(sorted(s)) for s in nbrs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nb) for nb in self.adj)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.nbr_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_masks[u] >> v & 1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph with compacted ids, plus the new-to-old id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class Tree(Graph):
    leaf_count: int = 0

    @cached_property
    def leaves(self) -> frozenset[int]:
        if self.n == 1:
            return frozenset({0})
        return frozenset(v for v in range(self.n) if len(self.adj[v]) == 1)

    @cached_property
    def internal(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.leaves

    @cached_property
    def code(self) -> str:
        return canonical_code(self)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# --- parsing -----------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header plus ``u v`` edge lines format.

    Blank lines and ``#`` comments are skipped.  Every error carries the
    1-based line number it was found on.
    """
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise ParseError(f"bad header {line!r}", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}: {line!r}", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        e = (min(a, b), max(a, b))
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]} (first on line {seen[e]})", lineno)
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise ParseError("missing 'n m' header", last_line or 1)
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} found", last_line)
    return Graph.from_edges(n, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# --- trees -------------------------------------------------------------------


def validate_tree(g: Graph) -> Tree:
    if isinstance(g, Tree):
        return g
    if not g.is_connected():
        raise NotConnected(f"graph on {g.n} vertices is not connected")
    if g.m != g.n - 1:
        raise HasCycle(f"connected graph with {g.m} edges on {g.n} vertices has a cycle")
    leaves = 1 if g.n == 1 else sum(1 for nb in g.adj if len(nb) == 1)
    return Tree(g.n, g.edges, g.adj, leaf_count=leaves)


def tree_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    return validate_tree(Graph.from_edges(n, edges))


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def eccentricity(g: Graph, v: int) -> int:
    dist = bfs_distances(g, v)
    if len(dist) != g.n:
        raise NotConnected("eccentricity is undefined on a disconnected graph")
    return max(dist.values())


def tree_centers(t: Graph) -> list[int]:
    """Center(s) of a tree by repeated leaf stripping."""
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = [len(nb) for nb in t.adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for u in layer:
            for w in t.adj[u]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(t: Graph, root: int) -> str:
    # iterative post-order so deep paths do not hit the recursion limit
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    label: dict[int, str] = {}
    for u in reversed(order):
        kids = sorted(label[w] for w in t.adj[u] if parent.get(w) == u and w != root)
        label[u] = "(" + "".join(kids) + ")"
    return label[root]


def canonical_code(t: Graph) -> str:
    """Isomorphism-invariant string for a tree (AHU encoding at the center)."""
    if t.n == 0:
        return ""
    return min(_ahu(t, c) for c in tree_centers(t))


def prufer_decode(seq: list[int] | tuple[int, ...], n: int) -> Tree:
    if n == 1:
        return tree_from_edges(1, [])
    if n == 2:
        return tree_from_edges(2, [(0, 1)])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return tree_from_edges(n, edges)


def _check_n(n: int, max_n: int) -> None:
    if not 1 <= n <= max_n:
        raise ValueError(f"n must be in 1..{max_n}, got {n}")


def enumerate_trees(n: int, max_n: int = DEFAULT_MAX_ENUM_N) -> Iterator[Tree]:
    """One tree per isomorphism class on ``n`` vertices.

    Backed by networkx's level-sequence generator; :func:`grow_trees` and
    Prüfer-sequence dedup are the independent cross-checks.
    """
    _check_n(n, max_n)
    if n <= 2:
        yield prufer_decode((), n)
        return
    for g in nx.nonisomorphic_trees(n):
        yield tree_from_edges(n, [(int(u), int(v)) for u, v in g.edges()])


def prufer_classes(n: int) -> list[Tree]:
    """Decode every Prüfer sequence and keep one tree per canonical code."""
    if n <= 2:
        return [prufer_decode((), n)]
    seen: dict[str, Tree] = {}
    for seq in product(range(n), repeat=n - 2):
        t = prufer_decode(seq, n)
        seen.setdefault(t.code, t)
    return list(seen.values())


def grow_trees(n: int) -> list[Tree]:
    """Independent generator: extend every (n-1)-vertex class by one leaf."""
    if n < 1:
        raise ValueError("n must be positive")
    level = {"()": tree_from_edges(1, [])}
    for size in range(2, n + 1):
        nxt: dict[str, Tree] = {}
        for t in level.values():
            for v in range(t.n):
                grown = tree_from_edges(size, list(t.edges) + [(v, size - 1)])
                nxt.setdefault(grown.code, grown)
        level = nxt
    return list(level.values())


def random_tree(n: int, seed: int) -> Tree:
    """Uniform labeled tree on ``n`` vertices from a seeded Prüfer sequence."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    out = Graph.from_edges(g.n, edges)
    return validate_tree(out) if isinstance(g, Tree) else out


# --- vertex taxonomy ---------------------------------------------------------


class Role(str, Enum):
    LEAF = "leaf"
    WEAK_STEM = "weakStem"
    STRONG_STEM = "strongStem"
    LONER = "loner"


@dataclass(frozen=True)
class VertexClassification:
    roles: tuple[Role, ...]
    exposed: tuple[bool, ...]

    def of_role(self, role: Role) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r is role]

    @property
    def stems(self) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r in (Role.WEAK_STEM, Role.STRONG_STEM)]

    @property
    def exposed_stems(self) -> list[int]:
        return [v for v, e in enumerate(self.exposed) if e]

    @property
    def loners(self) -> list[int]:
        return self.of_role(Role.LONER)


def classify_vertices(t: Tree) -> VertexClassification:
    if t.n < 2:
        raise ValueError("vertex roles need a tree with at least two vertices")
    leaves = t.leaves
    roles = []
    exposed = []
    for v in range(t.n):
        if v in leaves:
            roles.append(Role.LEAF)
            exposed.append(False)
            continue
        k = sum(1 for w in t.adj[v] if w in leaves)
        role = Role.LONER if k == 0 else Role.WEAK_STEM if k == 1 else Role.STRONG_STEM
        roles.append(role)
        inner = len(t.adj[v]) - k
        exposed.append(role is not Role.LONER and inner <= 1)
    return VertexClassification(tuple(roles), tuple(exposed))


def is_star(t: Tree) -> bool:
    """K_1 and every K_{1,m} count as stars."""
    return t.n <= 2 or len(t.internal) == 1


# --- named families used by fixtures and tests ----------------------------------


def path(n: int) -> Tree:
    return tree_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(m: int) -> Tree:
    return tree_from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def corona(g: Graph) -> Graph:
    """Attach a new pendant ``v + n`` to every vertex ``v``."""
    edges = list(g.edges) + [(v, v + g.n) for v in range(g.n)]
    out = Graph.from_edges(2 * g.n, edges)
    return validate_tree(out) if isinstance(g, Tree) else out


def spider(*legs: int) -> Tree:
    """Center 0 with one path of the given length per leg."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return tree_from_edges(nxt, edges)
