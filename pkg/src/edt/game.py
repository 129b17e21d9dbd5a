"""Guard games on graphs: move rules, the greatest-fixpoint solver and playback.

A configuration is the set of guarded vertices, stored as an int bitmask.
The solver starts from every dominating configuration of size ``k`` and
discards configurations that cannot answer some attack with a move into a
surviving configuration, until nothing changes.  What is left is the
largest winning family of size ``k``; it is empty iff the defender loses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable

from .graph import Graph, bits, mask_of
from .invariants import domination_number, external_private_neighbors

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    pass


class IllegalAttack(ValueError):
    pass


class Model(str, Enum):
    SINGLE = "singleGuard"
    ALL = "allGuards"


def budget() -> int:
    return int(os.environ.get("EDT_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class GuardConfig:
    mask: int
    host: Graph | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, vertices: Iterable[int], host: Graph | None = None) -> "GuardConfig":
        return cls(mask_of(vertices), host)

    @property
    def vertices(self) -> list[int]:
        return bits(self.mask)

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)


def _mask(c: GuardConfig | int | Iterable[int]) -> int:
    if isinstance(c, GuardConfig):
        return c.mask
    if isinstance(c, int):
        return c
    return mask_of(c)


def lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


# --- move rules ----------------------------------------------------------------


def is_dominating(g: Graph, c) -> bool:
    m = _mask(c)
    cov = 0
    for v in bits(m):
        cov |= g.closed_masks[v]
    return cov == g.full_mask


def single_guard_move_legal(g: Graph, D, D2, r: int) -> bool:
    a, b = _mask(D), _mask(D2)
    if a >> r & 1 or not b >> r & 1:
        return False
    gone = a & ~b
    if a.bit_count() != b.bit_count() or gone.bit_count() != 1 or (b & ~a) != 1 << r:
        return False
    return bool(g.nbr_masks[r] & gone)


def _max_matching(left: list[int], options: dict[int, list[int]]) -> int:
    """Augmenting-path bipartite matching; returns its size."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in options[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_right or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    return sum(1 for u in left if augment(u, set()))


def all_guards_move_legal(g: Graph, D, D2) -> bool:
    """Every guard stays put or crosses one edge, ending exactly on ``D2``."""
    a, b = _mask(D), _mask(D2)
    if a.bit_count() != b.bit_count():
        return False
    src = bits(a)
    options = {u: [w for w in bits(g.closed_masks[u] & b)] for u in src}
    return _max_matching(src, options) == len(src)


def all_guards_successors(g: Graph, D: int) -> set[int]:
    """Every configuration reachable when each guard moves at most one step."""
    states = {0}
    for v in bits(D):
        targets = bits(g.closed_masks[v])
        states = {s | (1 << t) for s in states for t in targets if not s >> t & 1}
    return states


def single_guard_successors(g: Graph, D: int) -> set[int]:
    out = set()
    for v in bits(D):
        for r in bits(g.nbr_masks[v] & ~D):
            out.add(D ^ (1 << v) | (1 << r))
    return out


# --- solver ----------------------------------------------------------------------


@dataclass(frozen=True)
class WinningFamily:
    host: Graph
    k: int
    model: Model
    configs: frozenset[int]
    responses: dict[tuple[int, int], int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.configs)

    def __contains__(self, c) -> bool:
        return _mask(c) in self.configs

    def initial(self) -> GuardConfig:
        return GuardConfig(min(self.configs, key=lex_key), self.host)

    def sorted_configs(self) -> list[list[int]]:
        return sorted(lex_key(c) for c in self.configs)


def solve(g: Graph, model: Model | str, k: int, limit: int | None = None) -> WinningFamily | None:
    model = Model(model)
    n = g.n
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}")
    limit = budget() if limit is None else limit
    if comb(n, k) > limit:
        raise BudgetExceeded(f"C({n}, {k}) = {comb(n, k)} configurations exceeds budget {limit}")
    full = g.full_mask
    cm = g.closed_masks
    configs = []
    for combo in combinations(range(n), k):
        cov = 0
        m = 0
        for v in combo:
            cov |= cm[v]
            m |= 1 << v
        if cov == full:
            configs.append(m)
    if not configs:
        return None
    alive = set(configs)
    step = all_guards_successors if model is Model.ALL else single_guard_successors
    succ = {D: [s for s in step(g, D) if s in alive and s != D] for D in configs}
    preds: dict[int, list[int]] = {D: [] for D in configs}
    for D, ss in succ.items():
        for s in ss:
            preds[s].append(D)

    def defended(D: int) -> bool:
        cov = D
        for s in succ[D]:
            if s in alive:
                cov |= s
        return cov == full

    queue = list(configs)
    queued = set(configs)
    while queue:
        D = queue.pop()
        queued.discard(D)
        if D in alive and not defended(D):
            alive.discard(D)
            for p in preds[D]:
                if p in alive and p not in queued:
                    queued.add(p)
                    queue.append(p)
    if not alive:
        return None
    responses: dict[tuple[int, int], int] = {}
    for D in alive:
        ranked = sorted((s for s in succ[D] if s in alive), key=lex_key)
        for r in bits(full & ~D):
            responses[(D, r)] = next(s for s in ranked if s >> r & 1)
    return WinningFamily(g, k, model, frozenset(alive), responses)


def defend(f: WinningFamily, current, attack: int) -> GuardConfig:
    m = _mask(current)
    if m not in f.configs:
        raise ValueError("current configuration is not in the winning family")
    if not 0 <= attack < f.host.n:
        raise IllegalAttack(f"vertex {attack} does not exist")
    if m >> attack & 1:
        raise IllegalAttack(f"vertex {attack} already holds a guard")
    return GuardConfig(f.responses[(m, attack)], f.host)


@dataclass(frozen=True)
class GameNumbers:
    gamma_inf: int
    gamma_m_inf: int


def smallest_winning_k(g: Graph, model: Model | str, start: int = 0, limit: int | None = None) -> int:
    k = max(start, domination_number(g))
    while solve(g, model, k, limit) is None:
        k += 1
    return k


def eternal_numbers(g: Graph, limit: int | None = None) -> GameNumbers:
    gm = smallest_winning_k(g, Model.ALL, limit=limit)
    gi = smallest_winning_k(g, Model.SINGLE, start=gm, limit=limit)
    return GameNumbers(gamma_inf=gi, gamma_m_inf=gm)


def two_gamma_placement(g: Graph, D) -> GuardConfig:
    """Guards on ``D`` plus one external private neighbor (smallest id) per member that has one."""
    D = frozenset(getattr(D, "vertices", D))
    if not is_dominating(g, D):
        raise ValueError("placement needs a dominating set")
    extra = set()
    for v in sorted(D):
        epn = external_private_neighbors(g, D, v)
        if epn:
            extra.add(min(epn))
    return GuardConfig.of(D | extra, g)
