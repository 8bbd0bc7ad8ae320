import random

import pytest

from dllite.chase import NULL_PREFIX, answers_over_chase, chase, chase_consistent, chase_violations
from dllite.core import models_kb
from dllite.errors import ValidationError
from dllite.generate import random_kb, random_query

from conftest import kb, q


def test_qualified_skeleton():
    m = chase(kb("A subClassOf exists P . B\nA(c)"), 1)
    (w,) = m.nulls
    assert w.startswith(NULL_PREFIX)
    assert m.interpretation.role("P") == {("c", w)}
    assert m.interpretation.concept("B") == {w}


def test_no_nulls_for_atomic():
    for depth in (0, 1, 4):
        m = chase(kb("A subClassOf B\nA(c)"), depth)
        assert not m.nulls and m.interpretation.concept("B") == {"c"}


def test_two_level_chain():
    m = chase(kb("A subClassOf exists P\nexists inv(P) subClassOf A\nA(c)"), 2)
    i = m.interpretation
    w1 = next(y for x, y in i.role("P") if x == "c")
    assert w1 in i.concept("A")
    assert any(x == w1 for x, _ in i.role("P"))
    assert max(m.depth.values()) == 2


def test_existing_witness_reused():
    m = chase(kb("A subClassOf exists P\nA(c)\nP(c, d)"), 3)
    assert not m.nulls


def test_answers():
    k = kb("A subClassOf exists P\nA(c)")
    assert answers_over_chase(k, q("q(x) :- P(x, y)"), 1) == {("c",)}
    assert answers_over_chase(k, q("q(x, y) :- P(x, y)"), 1) == set()
    assert answers_over_chase(kb("A(c)"), q("q(x) :- A(x)"), 0) == {("c",)}


def test_monotone_in_depth():
    rng = random.Random(21)
    for _ in range(60):
        k, query = random_kb(rng), random_query(rng)
        prev = set()
        for d in range(4):
            cur = answers_over_chase(k, query, d)
            assert prev <= cur
            prev = cur


def test_chase_contains_abox():
    rng = random.Random(22)
    for _ in range(40):
        k = random_kb(rng, negatives=False)
        i = chase(k, 4).interpretation
        for a in k.abox:
            ext = i.concept(a.pred) if len(a.args) == 1 else i.role(a.pred)
            assert (a.args[0] if len(a.args) == 1 else a.args) in ext


def test_violations():
    k = kb("A subClassOf not B\nA(c)\nB(c)")
    assert not chase_consistent(k, 2)
    assert chase_violations(chase(k, 2))
    assert chase_consistent(kb("A subClassOf not B\nA(c)\nB(d)"), 2)


def test_named_model_when_complete():
    k = kb("A subClassOf B\nP subRoleOf Q\nA(c)\nP(c, d)")
    m = chase(k, 1)
    assert models_kb(m.interpretation, k)


def test_bad_arguments():
    with pytest.raises(ValidationError):
        chase(kb("A(c)"), -1)
    with pytest.raises(ValidationError):
        chase(kb("A subClassOf B"), 1)
