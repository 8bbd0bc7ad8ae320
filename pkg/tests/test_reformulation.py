import random

import pytest

from dllite.chase import answers_over_chase
from dllite.answering import certain_answers
from dllite.core import Role
from dllite.errors import BudgetExceeded
from dllite.generate import random_kb, random_query
from dllite.reformulation import (
    isomorphic,
    mentions_internal,
    perfect_reformulation,
    reformulate,
    role_closure,
    subsumes,
)
from dllite.syntax import parse_kb, parse_query

from conftest import kb, q


def _has(ucq, text):
    want = parse_query(text).disjuncts[0]
    return any(isomorphic(d, want) for d in ucq.disjuncts)


def test_role_closure():
    h = role_closure(kb("P subRoleOf Q\n").tbox)
    assert {Role("Q"), Role("P")} <= h.sub_roles(Role("Q"))
    assert {Role("Q", True), Role("P", True)} <= h.sub_roles(Role("Q", True))
    h = role_closure(kb("P subRoleOf Q\nQ subRoleOf S\n").tbox)
    assert Role("P") in h.sub_roles(Role("S"))
    assert role_closure([]).sub_roles(Role("T")) == {Role("T")}


def test_empty_tbox_is_identity():
    query = q("q(x) :- A(x), P(x, y)\nq(x) :- B(x)")
    out = perfect_reformulation([], query)
    assert len(out.disjuncts) == 2
    assert all(any(isomorphic(a, b) for b in out.disjuncts) for a in query.disjuncts)


def test_concept_inclusion():
    out = perfect_reformulation(kb("A subClassOf B").tbox, q("q(x) :- B(x)"))
    assert _has(out, "q(x) :- B(x)") and _has(out, "q(x) :- A(x)")
    assert len(out.disjuncts) == 2


def test_unbound_existential():
    out = perfect_reformulation(kb("A and C subClassOf exists P").tbox, q("q() :- P(x, y)"))
    assert _has(out, "q() :- A(x), C(x)")


def test_bound_existential_does_not_apply():
    out = perfect_reformulation(kb("A subClassOf exists P").tbox, q("q(x, y) :- P(x, y)"))
    assert len(out.disjuncts) == 1


def test_qualified_existential():
    t = kb("A subClassOf exists P . B").tbox
    out = perfect_reformulation(t, q("q(x) :- P(x, y), B(y)"))
    assert _has(out, "q(x) :- A(x)")
    assert not any(mentions_internal(d) for d in out.disjuncts)


def test_role_inclusion_with_inverse():
    out = perfect_reformulation(kb("P subRoleOf inv(Q)").tbox, q("q(x) :- Q(x, y)"))
    assert _has(out, "q(x) :- P(y, x)")


def test_chained_reduce():
    t = kb("A subClassOf exists P\nexists inv(P) subClassOf B").tbox
    out = perfect_reformulation(t, q("q(x) :- P(x, y), B(y)"))
    assert _has(out, "q(x) :- A(x)")


def test_monotone_growth():
    rng = random.Random(11)
    for _ in range(100):
        k, query = random_kb(rng), random_query(rng)
        out = perfect_reformulation(k.tbox, query)
        for d in query.disjuncts:
            assert any(subsumes(o, d) for o in out.disjuncts)


def test_idempotent():
    rng = random.Random(12)
    for _ in range(60):
        k, query = random_kb(rng), random_query(rng)
        once = perfect_reformulation(k.tbox, query)
        twice = perfect_reformulation(k.tbox, once)
        assert len(once.disjuncts) == len(twice.disjuncts)
        assert all(any(isomorphic(a, b) for b in twice.disjuncts) for a in once.disjuncts)


def test_trace_replays_to_output():
    rng = random.Random(13)
    for _ in range(60):
        k, query = random_kb(rng), random_query(rng)
        out, trace = reformulate(k.tbox, query)
        reached = trace.replay()
        for d in out.disjuncts:
            assert any(isomorphic(d, r) for r in reached.items)


def test_limit():
    t = kb("A subClassOf B\nC subClassOf B\nD subClassOf B").tbox
    with pytest.raises(BudgetExceeded):
        reformulate(t, q("q(x) :- B(x), B(y), B(z)"), limit=3)


def test_agrees_with_chase():
    rng = random.Random(14)
    checked = 0
    while checked < 150:
        k, query = random_kb(rng), random_query(rng)
        ans = certain_answers(k, query)
        if ans.inconsistent:
            continue
        assert ans.tuples == answers_over_chase(k, query, 5)
        checked += 1


def test_literal_depth_can_be_too_shallow():
    """The largest rewritten disjunct has one atom, but the chase needs three levels of nulls."""
    k = parse_kb("A subClassOf exists P\nexists inv(P) subClassOf exists Q\nexists inv(Q) subClassOf exists S\nA(c)\n")
    query = q("q() :- S(x, y)")
    out = perfect_reformulation(k.tbox, query)
    assert out.max_atoms() == 1
    assert certain_answers(k, query).tuples == {()}
    assert answers_over_chase(k, query, 1) == set()
    assert answers_over_chase(k, query, 3) == {()}
