import json

import pytest

from edt.characterize import (
    NotExposedWeakStem,
    apply_ews,
    check_2gamma_conditions,
    check_beta_equality,
    check_gamma_equality,
    check_gammac_plus_one,
    check_k2_p3_neocolonization,
    classify,
    corona_base,
    ews_reducible,
    exposed_weak_stems,
    is_corona,
    two_gamma_conditions,
)
from edt.fixtures import load
from edt.game import Model, smallest_winning_k
from edt.graph import Graph, canonical_code, corona, enumerate_trees, path, spider, star, validate_tree
from edt.invariants import independence_number
from edt.neocolon import all_neocolonizations, theta_c_oracle


def by_definition_corona(t):
    """Search every base graph: t is a corona iff some perfect matching of pendants rebuilds it."""
    if t.n % 2:
        return False
    for g in enumerate_trees(t.n // 2):
        if canonical_code(corona(g)) == t.code:
            return True
    return False


def test_is_corona_examples():
    assert is_corona(path(2)) == (True, [(0, 1)])
    assert is_corona(corona(path(3))) == (True, [(0, 3), (1, 4), (2, 5)])
    assert is_corona(path(6)) == (False, None)


@pytest.mark.parametrize("n", range(2, 11))
def test_corona_predicate_matches_definition(n):
    for t in enumerate_trees(n):
        ok, pairs = is_corona(t)
        assert ok == by_definition_corona(t)
        if ok:
            base = corona_base(t, pairs)
            assert canonical_code(corona(validate_tree(base))) == t.code


def test_gamma_equality():
    assert check_gamma_equality(path(4)).holds
    v = check_gamma_equality(star(3))
    assert not v.holds and v.agree
    v = check_gamma_equality(corona(path(3)))
    assert v.holds and v.structural


def test_apply_ews():
    t, ids = apply_ews(path(6), 1)
    assert t == path(4) and ids == [2, 3, 4, 5]
    assert apply_ews(path(4), 1)[0] == path(2)
    with pytest.raises(NotExposedWeakStem):
        apply_ews(star(3), 0)
    assert exposed_weak_stems(spider(3, 3, 3)) == [2, 5, 8]


def test_ews_reducible_examples():
    r = ews_reducible(path(6))
    assert r.reducible and r.sequence == [(1, 0), (3, 2)]
    r = ews_reducible(corona(path(3)))
    assert r.reducible
    assert not ews_reducible(spider(3, 3, 3)).reducible


def test_p3_is_not_reducible_to_k1_or_k2():
    r = ews_reducible(path(3))
    assert not r.reducible and r.reducible_with_p3 and r.sequence_with_p3 == []
    assert independence_number(path(3)) == smallest_winning_k(path(3), Model.ALL) == 2


def test_beta_equality():
    v = check_beta_equality(path(6))
    assert v.holds and v.agree
    v = check_beta_equality(spider(3, 3, 3))
    assert not v.holds and v.agree
    v = check_beta_equality(path(2))
    assert v.holds and v.witness["ews_sequence"] == []


def test_k2_p3_examples():
    assert check_k2_p3_neocolonization(path(6)) == (True, [[0, 1], [2, 3], [4, 5]])
    ok, parts = check_k2_p3_neocolonization(path(5))
    assert ok and sorted(map(len, parts)) == [2, 3]
    assert independence_number(path(5)) == theta_c_oracle(path(5)) == 3
    s = spider(3, 3, 3)
    assert check_k2_p3_neocolonization(s) == (False, None)
    # no K_2/P_3 partition with a single P_3 exists; with any number of P_3's the best weighs 6 > 5
    shaped = [p for p in all_neocolonizations(s) if all(len(q) in (2, 3) for q in p.parts)]
    assert not any(sum(len(q) == 3 for q in p.parts) <= 1 for p in shaped)
    assert (min(p.total_weight for p in shaped), theta_c_oracle(s)) == (6, 5)


@pytest.mark.parametrize("n", range(2, 11))
def test_k2_p3_shape_dp_matches_exhaustive(n):
    for t in enumerate_trees(n):
        assert check_k2_p3_neocolonization(t, exhaustive=True)[0] == check_k2_p3_neocolonization(t, exhaustive=False)[0]


def test_two_gamma_conditions_examples():
    rep = two_gamma_conditions(star(3))
    assert rep.verdict and rep.forms_agree
    assert check_2gamma_conditions(star(3)).holds
    rep = two_gamma_conditions(path(4))
    d12 = next(c for c in rep.per_set if c.D == [1, 2])
    assert not d12.conditions["b"] and not rep.verdict
    assert not check_2gamma_conditions(path(4)).holds
    rep = two_gamma_conditions(path(6))
    (only,) = rep.per_set
    assert only.D == [1, 4] and only.conditions["d"] and not only.conditions["e"]
    assert only.failures["e"] == [1, 4]
    assert smallest_winning_k(path(6), Model.ALL) == 3


@pytest.mark.parametrize("n", range(2, 11))
def test_two_gamma_forms_agree(n):
    for t in enumerate_trees(n):
        assert two_gamma_conditions(t).forms_agree


def test_gammac_plus_one():
    v = check_gammac_plus_one(star(3))
    assert v.holds and v.structural and v.witness is None
    v = check_gammac_plus_one(path(6))
    assert not v.holds and v.agree and (v.witness["k"], v.witness["r"]) == (0, 3)
    v = check_gammac_plus_one(path(4))
    assert not v.holds and (v.witness["k"], v.witness["r"]) == (0, 2)


EQ_KEYS = ["gamma", "2gamma", "beta", "gammaC+1", "half_ceil"]


@pytest.mark.parametrize(
    "tree, flags, gm",
    [
        (corona(path(3)), [True, False, True, False, True], 3),
        (star(3), [False, True, False, True, True], 2),
        (validate_tree(load("sec7_tree")), [False, False, False, False, True], 6),
    ],
)
def test_classify(tree, flags, gm):
    rep = classify(tree)
    assert [rep.equalities[k] for k in EQ_KEYS] == flags
    assert rep.gamma_m_inf == gm and rep.solver_status == "solved" and rep.consistent


def test_classify_without_solver():
    rep = classify(spider(3, 3, 3), use_solver=False)
    assert rep.solver_status == "skipped" and rep.gamma_m_inf == 5 and rep.game is None


def test_report_json_round_trip():
    for t in (corona(path(3)), spider(3, 3, 3), path(6)):
        text = json.dumps(classify(t).to_dict(), sort_keys=True, indent=2)
        assert json.dumps(json.loads(text), sort_keys=True, indent=2) == text


def test_report_rejects_non_tree():
    with pytest.raises(ValueError):
        classify(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
