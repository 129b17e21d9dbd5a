"""Exhaustive verification sweeps: every structural check run over every small tree."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from . import characterize as ch
from .game import Model, smallest_winning_k, solve, two_gamma_placement
from .graph import Role, Tree, classify_vertices, enumerate_trees, is_star, validate_tree
from .invariants import (
    beta_via_star_partition,
    connected_domination_number,
    domination_number,
    enumerate_min_dominating_sets,
    independence_number,
)
from .neocolon import (
    _components_from,
    _forest_witness_from,
    all_finest_neocolonizations,
    dominating_set_partition,
    is_fat_dominating_partition,
    minimum_neocolonizations,
    spanning_forest_witness,
    theta_c,
    theta_c_oracle,
    verify_forest_witness,
)

MAX_SWEEP_N = 10


class TreeFacts:
    """Lazily computed parameters of one tree, shared by all checks."""

    def __init__(self, t: Tree, solver_max_n: int = ch.SOLVER_MAX_N):
        self.t = validate_tree(t)
        self.solver_max_n = solver_max_n

    @property
    def n(self) -> int:
        return self.t.n

    @cached_property
    def gamma(self) -> int:
        return domination_number(self.t)

    @cached_property
    def beta(self) -> int:
        return independence_number(self.t)

    @cached_property
    def gamma_c(self) -> int:
        return connected_domination_number(self.t)

    @cached_property
    def theta(self) -> int:
        return theta_c(self.t)[0]

    @cached_property
    def gm(self) -> int:
        if self.n <= self.solver_max_n:
            return smallest_winning_k(self.t, Model.ALL)
        return self.theta

    @cached_property
    def mds(self) -> list[frozenset[int]]:
        return [d.vertices for d in enumerate_min_dominating_sets(self.t, self.gamma)]

    @cached_property
    def finest(self):
        return all_finest_neocolonizations(self.t)

    @cached_property
    def classes(self):
        return classify_vertices(self.t)


Check = Callable[[TreeFacts], bool]


def _theta_matches(f: TreeFacts) -> bool:
    return f.theta == theta_c_oracle(f.t) == f.gm


def _corona_rule(f: TreeFacts) -> bool:
    return ch.check_gamma_equality(f.t, f.gm, f.gamma).agree


def _corona_partition(f: TreeFacts) -> bool:
    if f.gm != f.gamma:
        return True
    mins = minimum_neocolonizations(f.t)
    if len(mins) != 1:
        return False
    for q in mins[0].parts:
        sub = validate_tree(f.t.induced(q)[0])
        if smallest_winning_k(sub, Model.ALL) != domination_number(sub):
            return False
    return all(len(q) == 2 and len(q & f.t.leaves) >= 1 for q in mins[0].parts)


def _forest_rule(f: TreeFacts) -> bool:
    w = spanning_forest_witness(f.t)
    if w is not None and not verify_forest_witness(f.t, w):
        return False
    strict = f.gm < f.gamma_c + 1
    if (w is not None) != strict:
        return False
    # the forest condition itself, searched over every spanning forest without K_1's
    loners = set(f.classes.loners)
    edges = f.t.sorted_edges()
    found = False
    for keep in range(1 << len(edges)):
        comps = _components_from(f.n, [e for i, e in enumerate(edges) if keep >> i & 1])
        if any(len(c) == 1 for c in comps):
            continue
        cand = _forest_witness_from(f.t, [frozenset(c) for c in comps], loners)
        if len(cand.loners_as_leaves) >= cand.k:
            found = True
            break
    return found == strict


def _two_gamma_conditions(f: TreeFacts) -> bool:
    return ch.check_2gamma_conditions(f.t, f.gm, f.gamma).agree


def _fat_finest_rule(f: TreeFacts) -> bool:
    fat = any(is_fat_dominating_partition(f.t, p, f.gamma) for p in f.finest)
    return fat == (f.gm == 2 * f.gamma)


def _finest_meets_D(f: TreeFacts) -> bool:
    if f.gm != 2 * f.gamma:
        return True
    return all(p.k <= f.gamma and all(q & D for q in p.parts) for p in f.finest for D in f.mds)


def _no_leaf_in_D(f: TreeFacts) -> bool:
    if f.gm != 2 * f.gamma or f.n <= 2:
        return True
    return not any(D & f.t.leaves for D in f.mds)


def _star_partitions_fat(f: TreeFacts) -> bool:
    if f.gm != 2 * f.gamma:
        return True
    return all(dominating_set_partition(f.t, D).fat for D in f.mds)


def _big_parts_rule(f: TreeFacts) -> bool:
    if f.gm != 2 * f.gamma:
        return True
    big = any(all(len(q) >= 3 for q in p.parts) for p in f.finest)
    fat = any(dominating_set_partition(f.t, D).fat for D in f.mds)
    return big == fat


def _ews_rule(f: TreeFacts) -> bool:
    return ch.check_beta_equality(f.t, f.gm, f.beta).agree


def _ews_rule_p3(f: TreeFacts) -> bool:
    return ch.ews_reducible(f.t).reducible_with_p3 == (f.gm == f.beta)


def _k2_p3_rule(f: TreeFacts) -> bool:
    ok, _ = ch.check_k2_p3_neocolonization(f.t)
    return ok == (f.gm == f.beta)


def _ews_drop(f: TreeFacts) -> bool:
    for s in ch.exposed_weak_stems(f.t):
        t2, _ = ch.apply_ews(f.t, s)
        g2 = TreeFacts(t2, f.solver_max_n)
        if g2.beta != f.beta - 1 or g2.gm != f.gm - 1:
            return False
    return True


def _crowded_stem(f: TreeFacts) -> bool:
    if f.n < 3:
        return True
    cls = f.classes
    for s in cls.exposed_stems:
        if cls.roles[s] is Role.STRONG_STEM and sum(1 for w in f.t.adj[s] if w in f.t.leaves) > 2:
            return f.gm < f.beta
    return True


def _two_exposed_stems(f: TreeFacts) -> bool:
    return f.n < 3 or is_star(f.t) or len(f.classes.exposed_stems) >= 2


def _star_peeling(f: TreeFacts) -> bool:
    rng = random.Random(f.n * 7919 + len(f.t.code))
    totals = [beta_via_star_partition(f.t)[0]] + [beta_via_star_partition(f.t, rng)[0] for _ in range(5)]
    return all(x == f.beta for x in totals)


def _chain(f: TreeFacts) -> bool:
    gi = smallest_winning_k(f.t, Model.SINGLE, start=f.gm) if f.n <= f.solver_max_n else f.gm
    bound = min(2 * f.gamma, f.beta, f.theta, f.gamma_c + 1, (f.n + 1) // 2)
    return gi >= f.gm >= f.gamma and f.gm <= bound


def _placement(f: TreeFacts) -> bool:
    for D in f.mds:
        c = two_gamma_placement(f.t, D)
        fam = solve(f.t, Model.ALL, c.k)
        if c.k > 2 * f.gamma or fam is None or c.mask not in fam.configs:
            return False
    return True


CHECKS: dict[str, tuple[str, Check]] = {
    "thm2.1": ("theta_c DP = partition oracle = solver", _theta_matches),
    "prop3.1": ("forest witness <=> gamma_m < gamma_c + 1", _forest_rule),
    "thm4.2": ("corona <=> gamma_m = gamma", _corona_rule),
    "lemma4.1": ("gamma_m = gamma: unique leaf-stem partition", _corona_partition),
    "cor5.4": ("gamma_m = 2gamma: no leaf in a min dominating set", _no_leaf_in_D),
    "thm5.5": ("gamma_m = 2gamma: finest parts meet D and k <= gamma", _finest_meets_D),
    "lemma5.7": ("gamma_m = 2gamma: dominating set partitions are fat", _star_partitions_fat),
    "lemma5.8": ("gamma_m = 2gamma: all-big finest <=> fat partition", _big_parts_rule),
    "thm5.9": ("fat finest partition <=> gamma_m = 2gamma", _fat_finest_rule),
    "thm5.10": ("conditions (a)-(e) <=> gamma_m = 2gamma", _two_gamma_conditions),
    "prop5.1": ("2gamma guard placement is winning", _placement),
    "prop6.2": ("non-stars have two exposed stems", _two_exposed_stems),
    "prop6.3": ("star peeling sums to beta", _star_peeling),
    "lemma6.4": ("EWS lowers beta and gamma_m by one", _ews_drop),
    "lemma6.5": ("exposed stem with > 2 leaves => gamma_m < beta", _crowded_stem),
    "thm6.6": ("EWS reduces to K1/K2 <=> gamma_m = beta", _ews_rule),
    "thm6.6p3": ("EWS reduces to K1/K2/P3 <=> gamma_m = beta", _ews_rule_p3),
    "cor6.7": ("min K2/P3 partition <=> gamma_m = beta", _k2_p3_rule),
    "chain": ("gamma_inf >= gamma_m >= gamma, upper bounds", _chain),
}


@dataclass
class SweepResult:
    min_n: int
    max_n: int
    trees: int
    passed: dict[str, int]
    failed: dict[str, int]
    counterexamples: dict[str, list[str]] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def table(self) -> str:
        width = max(len(c) for c in self.passed) if self.passed else 5
        lines = [f"trees n={self.min_n}..{self.max_n}: {self.trees}   ({self.seconds:.1f}s)"]
        for name in self.passed:
            p, f = self.passed[name], self.failed[name]
            mark = "ok  " if f == 0 else "FAIL"
            lines.append(f"  {mark} {name:<{width}}  pass={p:<5} fail={f:<4} {CHECKS[name][0]}")
            for code in self.counterexamples.get(name, [])[:3]:
                lines.append(f"         counterexample {code}")
        return "\n".join(lines)


def resolve_checks(names: list[str] | str) -> list[str]:
    if isinstance(names, str):
        names = [names]
    out: list[str] = []
    for name in names:
        if name == "all":
            out.extend(c for c in CHECKS if c not in out)
        elif name in CHECKS:
            if name not in out:
                out.append(name)
        else:
            raise KeyError(f"unknown check {name!r}; choose from: all, {', '.join(CHECKS)}")
    return out


def run_checks(t: Tree, names: list[str], solver_max_n: int = ch.SOLVER_MAX_N) -> dict[str, bool]:
    facts = TreeFacts(t, solver_max_n)
    return {name: bool(CHECKS[name][1](facts)) for name in names}


def _job(args) -> tuple[str, dict[str, bool]]:
    t, names, solver_max_n = args
    return t.code, run_checks(t, names, solver_max_n)


def sweep(
    max_n: int = 9,
    checks: list[str] | str = "all",
    jobs: int = 1,
    min_n: int = 2,
    solver_max_n: int = ch.SOLVER_MAX_N,
) -> SweepResult:
    if not 2 <= max_n <= MAX_SWEEP_N:
        raise ValueError(f"max_n must be in 2..{MAX_SWEEP_N}")
    names = resolve_checks(checks)
    start = time.perf_counter()
    work = [(t, names, solver_max_n) for n in range(min_n, max_n + 1) for t in enumerate_trees(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, work, chunksize=4))
    else:
        results = [_job(w) for w in work]
    passed = {n: 0 for n in names}
    failed = {n: 0 for n in names}
    bad: dict[str, list[str]] = {}
    for code, verdicts in results:
        for name, ok in verdicts.items():
            if ok:
                passed[name] += 1
            else:
                failed[name] += 1
                bad.setdefault(name, []).append(code)
    return SweepResult(min_n, max_n, len(work), passed, failed, bad, time.perf_counter() - start)
