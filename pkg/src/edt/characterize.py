"""Structural tests for the trees that sit on each bound of the m-eternal domination number.

Every checker returns a :class:`Verdict` holding both sides: the equality
as measured by the game number, and the structural condition with its
witness.  ``agree`` is what the verification sweeps count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .game import BudgetExceeded, GameNumbers, Model, eternal_numbers, smallest_winning_k
from .graph import Graph, Role, Tree, canonical_code, classify_vertices, eccentricity, path, validate_tree
from .invariants import (
    InvariantBundle,
    SizeLimitExceeded,
    connected_domination_number,
    domination_labeling,
    domination_number,
    enumerate_min_dominating_sets,
    external_private_neighbors,
    independence_number,
    invariant_bundle,
)
from .neocolon import (
    ForestWitness,
    _rooted,
    all_finest_neocolonizations,
    is_fat_dominating_partition,
    minimum_neocolonizations,
    spanning_forest_witness,
    theta_c,
    verify_forest_witness,
)

SOLVER_MAX_N = 14
EXHAUSTIVE_N = 10


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    structural: bool
    witness: Any = None

    @property
    def agree(self) -> bool:
        return self.holds == self.structural


def game_number(t: Tree, use_solver: bool = True) -> int:
    """m-eternal domination number: solver when small, the neo-colonization optimum otherwise."""
    if use_solver and t.n <= SOLVER_MAX_N:
        try:
            return smallest_winning_k(t, Model.ALL)
        except BudgetExceeded:
            pass
    return theta_c(t)[0]


# --- coronas ----------------------------------------------------------------------


def is_corona(t: Tree) -> tuple[bool, list[tuple[int, int]] | None]:
    """Corona test plus the base-vertex/pendant matching when it is one."""
    t = validate_tree(t)
    if t.n < 2:
        raise ValueError("need at least two vertices")
    if t.n == 2:
        return True, [(0, 1)]
    if t.n % 2 or t.leaf_count != t.n // 2:
        return False, None
    pairs = []
    for v in sorted(t.internal):
        pend = [w for w in t.adj[v] if w in t.leaves]
        if len(pend) != 1:
            return False, None
        pairs.append((v, pend[0]))
    return True, pairs


def corona_base(t: Tree, pairs: list[tuple[int, int]]) -> Graph:
    return t.induced([b for b, _ in pairs])[0]


def check_gamma_equality(t: Tree, gm: int | None = None, gamma: int | None = None) -> Verdict:
    gm = game_number(t) if gm is None else gm
    gamma = domination_number(t) if gamma is None else gamma
    ok, pairs = is_corona(t)
    return Verdict("gamma", gm == gamma, ok, {"pendant_matching": pairs})


# --- operation EWS ---------------------------------------------------------------


class NotExposedWeakStem(ValueError):
    pass


def apply_ews(t: Tree, stem: int) -> tuple[Tree, list[int]]:
    """Delete an exposed weak stem and its leaf; returns the tree and the new-to-old id map."""
    t = validate_tree(t)
    if t.n < 3:
        raise NotExposedWeakStem("trees on fewer than three vertices have no exposed stems")
    cls = classify_vertices(t)
    if cls.roles[stem] is not Role.WEAK_STEM or not cls.exposed[stem]:
        raise NotExposedWeakStem(f"vertex {stem} is not an exposed weak stem")
    leaf = next(w for w in t.adj[stem] if w in t.leaves)
    keep = [v for v in range(t.n) if v not in (stem, leaf)]
    sub, ids = t.induced(keep)
    return validate_tree(sub), ids


def exposed_weak_stems(t: Tree) -> list[int]:
    if t.n < 3:
        return []
    cls = classify_vertices(t)
    return [v for v in cls.exposed_stems if cls.roles[v] is Role.WEAK_STEM]


_P3_CODE = canonical_code(path(3))


@dataclass(frozen=True)
class EwsResult:
    """Outcome of the EWS reduction search.

    ``reducible`` is the K_1/K_2 target.  ``reducible_with_p3`` also accepts
    a final P_3, the only reading under which the reduction tracks
    gamma_m = beta (P_3 itself has beta = gamma_m = 2 and no weak stem).
    """

    reducible: bool
    sequence: list[tuple[int, int]] | None
    greedy_reducible: bool
    reducible_with_p3: bool
    sequence_with_p3: list[tuple[int, int]] | None


def _greedy_ews(t: Tree) -> bool:
    while t.n > 2:
        stems = exposed_weak_stems(t)
        if not stems:
            return False
        s = min(stems, key=lambda v: (-eccentricity(t, v), v))
        t, _ = apply_ews(t, s)
    return True


def _ews_search(t: Tree, allow_p3: bool) -> list[tuple[int, int]] | None:
    dead: set[str] = set()

    def search(cur: Tree, ids: list[int]) -> list[tuple[int, int]] | None:
        if cur.n <= 2:
            return []
        code = canonical_code(cur)
        if allow_p3 and code == _P3_CODE:
            return []
        if code in dead:
            return None
        for s in exposed_weak_stems(cur):
            leaf = next(w for w in cur.adj[s] if w in cur.leaves)
            nxt, sub_ids = apply_ews(cur, s)
            rest = search(nxt, [ids[i] for i in sub_ids])
            if rest is not None:
                return [(ids[s], ids[leaf])] + rest
        dead.add(code)
        return None

    return search(t, list(range(t.n)))


def ews_reducible(t: Tree) -> EwsResult:
    """Search every EWS order for a reduction to K_1 or K_2.

    Dead ends are memoized by canonical code.  Sequences are reported as
    ``(stem, leaf)`` pairs in the original vertex ids.
    """
    t = validate_tree(t)
    if t.n < 2:
        raise ValueError("need at least two vertices")
    seq = _ews_search(t, allow_p3=False)
    seq3 = _ews_search(t, allow_p3=True)
    return EwsResult(seq is not None, seq, _greedy_ews(t), seq3 is not None, seq3)


def check_beta_equality(t: Tree, gm: int | None = None, beta: int | None = None) -> Verdict:
    gm = game_number(t) if gm is None else gm
    beta = independence_number(t) if beta is None else beta
    res = ews_reducible(t)
    return Verdict(
        "beta",
        gm == beta,
        res.reducible,
        {
            "ews_sequence": res.sequence,
            "greedy_agrees": res.greedy_reducible == res.reducible,
            "reducible_with_p3": res.reducible_with_p3,
            "ews_sequence_with_p3": res.sequence_with_p3,
        },
    )


# --- K_2 / P_3 partitions --------------------------------------------------------


def _k2_p3_min_weight(t: Tree) -> int | None:
    """Lightest partition into K_2 and P_3 parts using at most one P_3 (DP)."""
    # open-part shapes seen from the top vertex v of its part (so far):
    #   0: {v}   1: v + one child   2: v center of a P_3   3: v end of a P_3
    order, parent = _rooted(t)
    table: list[dict[tuple[int, int], int]] = [dict() for _ in range(t.n)]

    def closed(v: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for (shape, p3), w in table[v].items():
            if shape == 0:
                continue
            np3, nw = (p3, w + 1) if shape == 1 else (p3 + 1, w + 2)
            if np3 <= 1 and (np3 not in out or nw < out[np3]):
                out[np3] = nw
        return out

    close_cache: list[dict[int, int]] = [dict() for _ in range(t.n)]
    for v in reversed(order):
        cur = {(0, 0): 0}
        for c in (w for w in t.adj[v] if parent[w] == v):
            nxt: dict[tuple[int, int], int] = {}

            def offer(key: tuple[int, int], w: int) -> None:
                if key[1] <= 1 and (key not in nxt or w < nxt[key]):
                    nxt[key] = w

            for (shape, p3), w in cur.items():
                for cp3, cw in close_cache[c].items():
                    offer((shape, p3 + cp3), w + cw)
                for (cshape, cp3), cw in table[c].items():
                    if shape == 0 and cshape == 0:
                        offer((1, p3 + cp3), w + cw)
                    elif shape == 0 and cshape == 1:
                        offer((3, p3 + cp3), w + cw)
                    elif shape == 1 and cshape == 0:
                        offer((2, p3 + cp3), w + cw)
            cur = nxt
        table[v] = cur
        close_cache[v] = closed(v)
    root = close_cache[order[0]]
    return min(root.values()) if root else None


def _is_k2_or_p3(t: Tree, part: frozenset[int]) -> str | None:
    if len(part) == 2:
        return "K2"
    if len(part) == 3:
        return "P3"
    return None


def check_k2_p3_neocolonization(t: Tree, exhaustive: bool | None = None) -> tuple[bool, list[list[int]] | None]:
    """Is some minimum-weight neo-colonization made of K_2's and at most one P_3?"""
    t = validate_tree(t)
    if t.n < 2:
        raise ValueError("need at least two vertices")
    if exhaustive is None:
        exhaustive = t.n <= EXHAUSTIVE_N
    if exhaustive:
        for p in minimum_neocolonizations(t):
            shapes = [_is_k2_or_p3(t, q) for q in p.parts]
            if None not in shapes and shapes.count("P3") <= 1:
                return True, p.sorted_parts()
        return False, None
    best = _k2_p3_min_weight(t)
    return best is not None and best == theta_c(t)[0], None


# --- the 2 gamma conditions -----------------------------------------------------------


@dataclass
class DominatingSetCheck:
    D: list[int]
    conditions: dict[str, bool]
    labeling: dict[str, bool]
    failures: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    @property
    def labeling_ok(self) -> bool:
        return all(self.labeling.values())


@dataclass
class TwoGammaConditionReport:
    per_set: list[DominatingSetCheck]

    @property
    def verdict(self) -> bool:
        return all(c.ok for c in self.per_set)

    @property
    def forms_agree(self) -> bool:
        return all(c.ok == c.labeling_ok for c in self.per_set)


def _is_path6(sub: Graph) -> bool:
    return sub.n == 6 and sub.m == 5 and sub.is_connected() and max(len(a) for a in sub.adj) <= 2


def _p6_pattern(t: Graph, x: int, px: frozenset[int], y: int, py: frozenset[int]) -> bool:
    """Do x, y and their private neighbors induce the path a, x, b, c, y, z?"""
    if len(px) != 2 or len(py) != 2 or px & py:
        return False
    sub, ids = t.induced({x, y} | px | py)
    if not _is_path6(sub):
        return False
    ends = [i for i in range(6) if len(sub.adj[i]) == 1]
    walk = [ends[0]]
    while len(walk) < 6:
        walk.append(next(w for w in sub.adj[walk[-1]] if w not in walk))
    seq = [ids[i] for i in walk]
    if seq.index(x) > seq.index(y):
        seq.reverse()
    return seq[1] == x and seq[4] == y and {seq[0], seq[2]} == px and {seq[3], seq[5]} == py


def _check_one(t: Tree, D: frozenset[int]) -> DominatingSetCheck:
    dmask = sum(1 << v for v in D)
    hits = [(t.nbr_masks[v] & dmask).bit_count() for v in range(t.n)]
    ds = sorted(D)
    fail: dict[str, Any] = {}

    over = [v for v in range(t.n) if hits[v] > 2]
    if over:
        fail["a"] = over[0]
    pair = next(((u, v) for u, v in sorted(t.edges) if u in D and v in D), None)
    if pair:
        fail["b"] = list(pair)
    pair = next(((u, v) for u, v in sorted(t.edges) if hits[u] >= 2 and hits[v] >= 2), None)
    if pair:
        fail["c"] = list(pair)
    epn = {x: external_private_neighbors(t, D, x) for x in D}
    few = [x for x in ds if len(epn[x]) < 2]
    if few:
        fail["d"] = few[0]
    for i, x in enumerate(ds):
        for y in ds[i + 1 :]:
            if "e" not in fail and _p6_pattern(t, x, epn[x], y, epn[y]):
                fail["e"] = [x, y]
    conditions = {c: c not in fail for c in "abcde"}

    lab = domination_labeling(t, D)
    ones = lab.ones
    closed_f1 = {x: ({x} | lab.f1_neighbors(x)) if x in ones else set() for x in D}
    lab_e = not any(
        _is_path6(t.induced(closed_f1[x] | closed_f1[y])[0])
        for i, x in enumerate(ds)
        for y in ds[i + 1 :]
    )
    labeling = {
        "a": all(1 <= c <= 2 for c in lab.label),
        "b": all(lab.label[x] == 1 for x in D),
        "c": not any(lab.label[u] == 2 and lab.label[v] == 2 for u, v in t.edges),
        "d": all(len(lab.f1_neighbors(x)) >= 2 for x in D),
        "e": lab_e,
    }
    return DominatingSetCheck(ds, conditions, labeling, fail)


def two_gamma_conditions(t: Tree) -> TwoGammaConditionReport:
    t = validate_tree(t)
    return TwoGammaConditionReport([_check_one(t, d.vertices) for d in enumerate_min_dominating_sets(t)])


def check_2gamma_conditions(t: Tree, gm: int | None = None, gamma: int | None = None) -> Verdict:
    gm = game_number(t) if gm is None else gm
    gamma = domination_number(t) if gamma is None else gamma
    rep = two_gamma_conditions(t)
    if not rep.forms_agree:
        raise AssertionError("neighborhood and labeling forms of the 2-gamma conditions disagree")
    bad = next((c for c in rep.per_set if not c.ok), None)
    witness = None if bad is None else {"D": bad.D, "failures": bad.failures}
    return Verdict("2gamma", gm == 2 * gamma, rep.verdict, witness)


def fat_finest_partition(t: Tree) -> list[list[int]] | None:
    """A finest neo-colonization that is a fat dominating set partition, if one exists (n <= 12)."""
    if t.n < 2:
        return None
    gamma = domination_number(t)
    for p in all_finest_neocolonizations(t):
        if is_fat_dominating_partition(t, p, gamma):
            return p.sorted_parts()
    return None


# --- gamma_c + 1 -------------------------------------------------------------------


def check_gammac_plus_one(t: Tree, gm: int | None = None) -> Verdict:
    t = validate_tree(t)
    gm = game_number(t) if gm is None else gm
    w = spanning_forest_witness(t)
    if w is not None and not verify_forest_witness(t, w):
        raise AssertionError("emitted spanning-forest witness failed re-verification")
    return Verdict("gammaC+1", gm == connected_domination_number(t) + 1, w is None, _forest_json(w))


def _forest_json(w: ForestWitness | None) -> dict | None:
    if w is None:
        return None
    return {
        "subtrees": [sorted(p) for p in w.subtrees],
        "k": w.k,
        "r": w.r,
        "loners_as_leaves": list(w.loners_as_leaves),
        "deleted_edges": [list(e) for e in w.deleted_edges],
    }


# --- combined report -------------------------------------------------------------------


@dataclass
class ClassificationReport:
    n: int
    edges: list[list[int]]
    invariants: InvariantBundle
    theta_c: int
    theta_c_partition: list[list[int]]
    game: GameNumbers | None
    solver_status: str
    equalities: dict[str, bool]
    verdicts: dict[str, Verdict]

    @property
    def gamma_m_inf(self) -> int:
        return self.game.gamma_m_inf if self.game else self.theta_c

    @property
    def consistent(self) -> bool:
        return all(v.agree for v in self.verdicts.values()) and (
            self.game is None or self.game.gamma_m_inf == self.theta_c
        )

    def to_dict(self) -> dict[str, Any]:
        inv = self.invariants
        return {
            "graph": {"n": self.n, "edges": self.edges, "tree": True},
            "invariants": {
                "gamma": inv.gamma,
                "gamma_c": inv.gamma_c,
                "beta": inv.beta,
                "half_ceil": inv.half_ceil,
            },
            "theta_c": self.theta_c,
            "theta_c_partition": self.theta_c_partition,
            "game": {
                "status": self.solver_status,
                "gamma_inf": self.game.gamma_inf if self.game else None,
                "gamma_m_inf": self.game.gamma_m_inf if self.game else None,
            },
            "gamma_m_inf": self.gamma_m_inf,
            "equalities": dict(self.equalities),
            "checks": {
                name: {"equality": v.holds, "structural": v.structural, "agree": v.agree, "witness": v.witness}
                for name, v in self.verdicts.items()
            },
            "consistent": self.consistent,
        }


def classify(t: Tree, use_solver: bool = True, solver_max_n: int = SOLVER_MAX_N) -> ClassificationReport:
    t = validate_tree(t)
    inv = invariant_bundle(t)
    th, part = theta_c(t)
    game = None
    status = "skipped"
    if use_solver:
        if t.n > solver_max_n:
            status = "unverified"
        else:
            try:
                game = eternal_numbers(t)
                status = "solved"
            except BudgetExceeded:
                status = "unverified"
    gm = game.gamma_m_inf if game else th
    equalities = {
        "gamma": gm == inv.gamma,
        "2gamma": gm == 2 * inv.gamma,
        "beta": gm == inv.beta,
        "gammaC+1": gm == inv.gamma_c + 1,
        "half_ceil": gm == inv.half_ceil,
    }
    verdicts: dict[str, Verdict] = {}
    if t.n >= 2:
        verdicts["gamma"] = check_gamma_equality(t, gm, inv.gamma)
        verdicts["beta"] = check_beta_equality(t, gm, inv.beta)
        verdicts["gammaC+1"] = check_gammac_plus_one(t, gm)
        try:
            verdicts["2gamma"] = check_2gamma_conditions(t, gm, inv.gamma)
        except SizeLimitExceeded:
            pass
    return ClassificationReport(
        n=t.n,
        edges=[list(e) for e in t.sorted_edges()],
        invariants=inv,
        theta_c=th,
        theta_c_partition=part.sorted_parts(),
        game=game,
        solver_status=status,
        equalities=equalities,
        verdicts=verdicts,
    )
