import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dllite.core import Atomic, ConceptInclusion, Conj, Exists, ExistsQualified, Graph, Role, RoleInclusion
from dllite.errors import ParseError
from dllite.generate import random_graph, random_interpretation, random_kb, random_query, right_concepts
from dllite.syntax import (
    parse_concept,
    parse_formula,
    parse_graph,
    parse_interpretation,
    parse_kb,
    parse_query,
    parse_relation,
    print_concept,
    print_formula,
    print_graph,
    print_interpretation,
    print_kb,
    print_query,
    print_relation,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_kb_axioms():
    kb = parse_kb("A and exists P subClassOf exists Q . B\nP subRoleOf inv(Q)\n")
    assert ConceptInclusion(Conj(Atomic("A"), Exists(Role("P"))), ExistsQualified(Role("Q"), Atomic("B"))) in kb.tbox
    assert RoleInclusion(Role("P"), Role("Q", True)) in kb.tbox


def test_qualified_left_side_rejected():
    with pytest.raises(ParseError, match="not a left concept"):
        parse_kb("exists P . B subClassOf A")


def test_conjunction_of_right_concepts_rejected():
    with pytest.raises(ParseError):
        parse_concept("exists P . (B and exists S . C)")


def test_queries():
    boolean = parse_query("q() :- R(u,v), R(v,w)")
    assert boolean.arity == 0 and len(boolean.disjuncts[0].atoms) == 2
    assert len(parse_query("q(x) :- A(x)\nq(x) :- B(x)").disjuncts) == 2
    with pytest.raises(ParseError, match="unsafe"):
        parse_query("q(x) :- P(y,z)")


def test_interpretations(ex_i_single, ex_j):
    assert ex_i_single.domain == {"d", "e1", "e2"}
    assert ex_i_single.concept("A") == {"e1"}
    assert ex_j.role("P") == {("d'", "e'")}
    assert ex_j.concept("A") == frozenset() and "A" in ex_j.concepts
    single = parse_interpretation("domain: d")
    assert single.domain == {"d"} and not single.concepts


def test_graphs():
    assert parse_graph("1 2") == Graph(frozenset({"1", "2"}), frozenset({("1", "2")}))
    tri = parse_graph("1 2\n2 3\n3 1\n")
    assert len(tri.vertices) == 3 and len(tri.edges) == 3
    bare = parse_graph("vertices: 1 2")
    assert bare.vertices == {"1", "2"} and not bare.edges


def test_relation_round_trip():
    pairs = frozenset({(frozenset({"d"}), "d'"), (frozenset({"e1", "e2"}), "e'")})
    assert parse_relation(print_relation(pairs)) == pairs
    assert parse_relation("{a}, b") == {(frozenset({"a"}), "b")}
    with pytest.raises(ParseError):
        parse_relation("<{}, b>")


def test_unicode_formula():
    assert parse_formula("∀y P(x,y) → A(y)") == parse_formula("forall y . P(x, y) -> A(y)")


@pytest.mark.parametrize(
    "text, parse",
    [
        ("A subClassOf\n", parse_kb),
        ("A subClassOf B\nA(c, d, e)\n", parse_kb),
        ("q(x) :- A(x\n", parse_query),
        ("q(x) :- A(x)\np(x) :- B(x)\n", parse_query),
        ("domain: d\nconcept A = {e}\n", parse_interpretation),
        ("concept A = {e}\n", parse_interpretation),
        ("1 2\n3 4 5\n", parse_graph),
        ("forall . A(x)", parse_formula),
        ("A(c) $", parse_kb),
        ("A(_n1)", parse_kb),
    ],
)
def test_errors_carry_spans(text, parse):
    with pytest.raises(ParseError) as info:
        parse(text)
    span = info.value.span
    assert 0 <= span.start <= span.end <= len(text)
    assert str(info.value).startswith(f"{span.line}:{span.column}:")


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_kb_round_trip(seed):
    kb = random_kb(random.Random(seed))
    assert parse_kb(print_kb(kb)) == kb


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_query_round_trip(seed):
    q = random_query(random.Random(seed))
    back = parse_query(print_query(q))
    assert back.disjuncts == q.disjuncts


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_interpretation_round_trip(seed):
    i = random_interpretation(random.Random(seed), ("A", "B"), ("P", "Q"))
    assert parse_interpretation(print_interpretation(i)) == i


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_graph_round_trip(seed):
    g = random_graph(random.Random(seed))
    assert parse_graph(print_graph(g)) == g


def test_concept_round_trip():
    for c in right_concepts(["A", "B"], ["P"], 2):
        assert parse_concept(print_concept(c)) == c


def test_formula_round_trip():
    for text in ["forall y . P(x, y) -> A(y)", 'A("c") or A\'("c\'")', "not (A(x) and exists y . P(y, x))"]:
        f = parse_formula(text)
        assert parse_formula(print_formula(f)) == f
