import itertools
import random

import pytest

from edt.fixtures import load
from edt.game import (
    BudgetExceeded,
    GuardConfig,
    IllegalAttack,
    Model,
    all_guards_move_legal,
    defend,
    eternal_numbers,
    is_dominating,
    single_guard_move_legal,
    smallest_winning_k,
    solve,
    two_gamma_placement,
)
from edt.graph import cycle, enumerate_trees, path, spider, star
from edt.invariants import domination_number, independence_number


def brute_all_guards_legal(g, D, D2):
    # try every assignment of the guards on D to distinct vertices of D2
    src, dst = sorted(D), sorted(D2)
    if len(src) != len(dst):
        return False
    return any(
        all(u == w or g.has_edge(u, w) for u, w in zip(src, perm)) for perm in itertools.permutations(dst)
    )


def test_is_dominating():
    assert is_dominating(star(3), {0})
    assert is_dominating(path(4), {0, 3})
    assert not is_dominating(path(4), {0, 1})


def test_single_guard_moves():
    p4 = path(4)
    assert single_guard_move_legal(p4, {1, 3}, {0, 3}, 0)
    assert not single_guard_move_legal(p4, {1, 3}, {0, 1}, 0)
    assert single_guard_move_legal(p4, {0, 3}, {0, 2}, 2)
    assert not single_guard_move_legal(p4, {0, 3}, {0, 3}, 0)


def test_all_guards_moves():
    p4 = path(4)
    assert all_guards_move_legal(p4, {0, 2}, {0, 2})
    assert all_guards_move_legal(p4, {0, 2}, {1, 3})
    assert not brute_all_guards_legal(p4, {0, 1}, {2, 3})
    assert not all_guards_move_legal(p4, {0, 1}, {2, 3})


def test_matching_agrees_with_permutation_search():
    rng = random.Random(5)
    for g in [spider(2, 2, 1), cycle(6), load("prop51_graph")]:
        for _ in range(300):
            k = rng.randint(1, 4)
            D = rng.sample(range(g.n), k)
            D2 = rng.sample(range(g.n), k)
            assert all_guards_move_legal(g, D, D2) == brute_all_guards_legal(g, D, D2)


def test_solver_examples():
    k13 = star(3)
    assert solve(k13, Model.ALL, 1) is None
    assert solve(k13, Model.ALL, 2) is not None
    assert solve(cycle(6), Model.ALL, 2) is not None
    g = load("prop51_graph")
    assert solve(g, Model.ALL, 3) is None
    assert solve(g, Model.ALL, 4) is not None


def test_family_invariants():
    for g in [cycle(6), path(6), spider(3, 3, 3), load("prop51_graph")]:
        for model in Model:
            k = smallest_winning_k(g, model)
            fam = solve(g, model, k)
            for D in fam.configs:
                assert is_dominating(g, D)
                assert all_guards_move_legal(g, D, D)
                for r in range(g.n):
                    if D >> r & 1:
                        continue
                    nxt = fam.responses[(D, r)]
                    assert nxt in fam.configs and nxt >> r & 1
                    if model is Model.ALL:
                        assert all_guards_move_legal(g, D, nxt)
                    else:
                        assert single_guard_move_legal(g, D, nxt, r)


def test_monotone_in_k():
    for g in [cycle(6), path(7), star(4), load("prop51_graph")]:
        for model in Model:
            k = smallest_winning_k(g, model)
            for extra in (1, 2):
                if k + extra <= g.n:
                    assert solve(g, model, k + extra) is not None


def test_eternal_numbers():
    assert eternal_numbers(path(4)).gamma_m_inf == 2
    s = spider(3, 3, 3)
    nums = eternal_numbers(s)
    assert nums.gamma_m_inf == 5 < independence_number(s) == 6
    assert eternal_numbers(load("sec7_tree")).gamma_m_inf == 6
    # the single-guard game on the 6-cycle needs its independence number
    assert eternal_numbers(cycle(6)) == type(nums)(gamma_inf=3, gamma_m_inf=2)


@pytest.mark.parametrize("n", range(1, 8))
def test_chain_on_small_trees(n):
    for t in enumerate_trees(n):
        nums = eternal_numbers(t)
        assert nums.gamma_inf >= nums.gamma_m_inf >= domination_number(t)
        assert nums.gamma_m_inf <= (n + 1) // 2


def test_defend():
    fam = solve(cycle(6), Model.ALL, 2)
    for D in fam.configs:
        for r in range(6):
            if not D >> r & 1:
                assert r in defend(fam, D, r)
    fam = solve(star(3), Model.ALL, 2)
    nxt = defend(fam, GuardConfig.of([0, 1]), 2)
    assert 2 in nxt and nxt.mask in fam.configs
    with pytest.raises(IllegalAttack):
        defend(fam, GuardConfig.of([0, 1]), 1)
    with pytest.raises(ValueError):
        defend(fam, GuardConfig.of([1, 2]), 3)


def test_budget():
    with pytest.raises(BudgetExceeded):
        solve(path(30), Model.ALL, 10)
    with pytest.raises(BudgetExceeded):
        solve(path(10), Model.ALL, 5, limit=100)
    with pytest.raises(ValueError):
        solve(path(4), Model.ALL, 5)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("EDT_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        solve(path(6), Model.ALL, 3)


def test_two_gamma_placement():
    assert two_gamma_placement(star(3), {0}).vertices == [0, 1]
    assert two_gamma_placement(path(4), {1, 2}).vertices == [0, 1, 2, 3]
    assert two_gamma_placement(path(6), {1, 4}).vertices == [0, 1, 3, 4]
    with pytest.raises(ValueError):
        two_gamma_placement(path(4), {0})


def test_random_playback():
    g = spider(3, 2, 2)
    fam = solve(g, Model.ALL, smallest_winning_k(g, Model.ALL))
    rng = random.Random(3)
    cur = fam.initial()
    for _ in range(2000):
        r = rng.choice([v for v in range(g.n) if v not in cur])
        nxt = defend(fam, cur, r)
        assert all_guards_move_legal(g, cur, nxt) and is_dominating(g, nxt) and r in nxt
        cur = nxt
