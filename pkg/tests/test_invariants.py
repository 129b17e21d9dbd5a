import itertools
import random

import pytest

from edt.fixtures import load
from edt.graph import corona, cycle, enumerate_trees, path, spider, star
from edt.invariants import (
    SizeLimitExceeded,
    beta_via_star_partition,
    brute_connected_domination_number,
    brute_domination_number,
    brute_independence_number,
    connected_domination_number,
    dominates,
    domination_labeling,
    domination_number,
    enumerate_min_dominating_sets,
    external_private_neighbors,
    independence_number,
)


def brute_min_dominating_sets(g):
    for k in range(1, g.n + 1):
        found = [set(c) for c in itertools.combinations(range(g.n), k) if dominates(g, c)]
        if found:
            return sorted(sorted(s) for s in found)


def test_gamma_examples():
    assert domination_number(star(3)) == 1
    assert brute_domination_number(path(9)) == 3
    assert domination_number(path(9)) == 3
    g = load("prop51_graph")
    assert brute_domination_number(g) == 2 == domination_number(g)


def test_min_dominating_sets():
    assert [d.sorted() for d in enumerate_min_dominating_sets(star(3))] == [[0]]
    assert [d.sorted() for d in enumerate_min_dominating_sets(path(3))] == [[1]]
    p4 = path(4)
    expected = brute_min_dominating_sets(p4)
    assert expected == [[0, 2], [0, 3], [1, 2], [1, 3]]
    assert [d.sorted() for d in enumerate_min_dominating_sets(p4)] == expected


def test_gamma_c():
    assert connected_domination_number(path(4)) == 2
    assert connected_domination_number(star(3)) == 1
    s = spider(3, 3, 3)
    assert brute_connected_domination_number(s) == 7 == connected_domination_number(s)
    assert connected_domination_number(path(1)) == connected_domination_number(path(2)) == 1


def test_beta():
    assert independence_number(star(3)) == 3
    assert brute_independence_number(path(6)) == 3 == independence_number(path(6))
    s = spider(3, 3, 3)
    assert brute_independence_number(s) == 6 == independence_number(s)
    assert independence_number(cycle(6)) == 3


@pytest.mark.parametrize("n", range(1, 10))
def test_tree_dps_match_brute_force(n):
    for t in enumerate_trees(n):
        assert domination_number(t) == brute_domination_number(t)
        assert independence_number(t) == brute_independence_number(t)
        if n >= 3:
            assert connected_domination_number(t) == brute_connected_domination_number(t)


def test_brute_force_size_limits():
    with pytest.raises(SizeLimitExceeded):
        brute_domination_number(cycle(21))
    with pytest.raises(SizeLimitExceeded):
        independence_number(cycle(25))


def test_star_partition_examples():
    assert beta_via_star_partition(path(6)) == (3, [{0, 1}, {2, 3}, {4, 5}])
    assert beta_via_star_partition(star(3)) == (3, [{0, 1, 2, 3}])
    total, parts = beta_via_star_partition(corona(path(3)))
    assert total == 3 and sorted(map(sorted, parts)) == [[0, 3], [1, 4], [2, 5]]


@pytest.mark.parametrize("n", range(2, 11))
def test_star_partition_any_order(n):
    rng = random.Random(n)
    for t in enumerate_trees(n):
        beta = independence_number(t)
        for _ in range(6):
            total, parts = beta_via_star_partition(t, rng)
            assert total == beta
            assert sorted(v for p in parts for v in p) == list(range(n))


def test_external_private_neighbors():
    p4 = path(4)
    assert external_private_neighbors(p4, {1, 2}, 1) == {0}
    assert external_private_neighbors(star(3), {0}, 0) == {1, 2, 3}
    assert external_private_neighbors(p4, {0, 2}, 2) == {3}
    with pytest.raises(ValueError):
        external_private_neighbors(p4, {0, 2}, 1)


def test_labeling():
    lab = domination_labeling(star(3), {0})
    assert lab.label == (1, 1, 1, 1) and lab.L2 == set() and lab.F1.n == 4
    lab = domination_labeling(path(4), {1, 2})
    assert lab.label == (1, 2, 2, 1) and lab.L2 == {1, 2}
    lab = domination_labeling(path(6), {1, 4})
    assert set(lab.label) == {1} and lab.F1 == path(6)
    with pytest.raises(ValueError):
        domination_labeling(path(4), {0})


@pytest.mark.parametrize("n", range(2, 9))
def test_labels_positive_and_gamma_at_most_beta(n):
    for t in enumerate_trees(n):
        for d in enumerate_min_dominating_sets(t):
            assert min(domination_labeling(t, d).label) >= 1
        assert domination_number(t) <= independence_number(t)
