import pytest

from dllite.core import (
    Assertion,
    Atomic,
    ConceptInclusion,
    Conj,
    Exists,
    ExistsQualified,
    Interpretation,
    KnowledgeBase,
    NegAtomic,
    NegExists,
    Role,
    RoleInclusion,
    concept_to_fo,
    conj,
    depth,
    eval_concept,
    eval_fo,
    eval_role,
    interpretation_of_abox,
    is_left,
    is_negative_only,
    is_right,
    models_axiom,
    models_kb,
    satisfying_elements,
)
from dllite.errors import ValidationError
from dllite.generate import random_interpretation, right_concepts
from dllite.syntax import parse_formula

P = Role("P")


def test_role_extension(ex_i):
    assert eval_role(P, ex_i) == {("d", "e1"), ("d", "e2")}
    assert eval_role(P.inverse(), ex_i) == {("e1", "d"), ("e2", "d")}
    assert eval_role(Role("Q"), ex_i) == frozenset()


def test_concepts_on_single_variant(ex_i_single):
    i = ex_i_single
    assert eval_concept(Exists(P), i) == {"d"}
    assert eval_concept(ExistsQualified(P, Atomic("A")), i) == {"d"}
    assert eval_concept(NegAtomic("A"), i) == {"d", "e2"}
    assert eval_concept(ExistsQualified(P.inverse(), NegExists(P.inverse())), i) == {"e1", "e2"}


def test_complement_laws():
    import random

    rng = random.Random(7)
    for _ in range(50):
        i = random_interpretation(rng)
        for r in (P, P.inverse()):
            assert eval_concept(NegExists(r), i) == i.domain - eval_concept(Exists(r), i)
        assert eval_concept(NegAtomic("A"), i) == i.domain - eval_concept(Atomic("A"), i)


def test_axioms(ex_i_single):
    i = ex_i_single
    assert models_axiom(i, ConceptInclusion(Atomic("A"), Atomic("A")))
    assert not models_axiom(i, ConceptInclusion(Atomic("A"), Exists(P)))
    assert not models_axiom(i, RoleInclusion(P, P.inverse()))
    assert models_axiom(i, RoleInclusion(P, P))


def test_models_kb():
    kb = KnowledgeBase.of(abox=[Assertion("A", ("c",))])
    assert models_kb(interpretation_of_abox(kb.abox), kb)
    tb = KnowledgeBase.of([ConceptInclusion(Atomic("A"), Atomic("B"))], kb.abox)
    assert not models_kb(Interpretation(frozenset({"c"}), {"A": {"c"}, "B": set()}), tb)


def test_models_own_abox(ex_i):
    abox = [Assertion("A", (e,)) for e in ex_i.concept("A")]
    abox += [Assertion("P", p) for p in ex_i.role("P")]
    kb = KnowledgeBase.of(abox=abox)
    assert models_kb(ex_i, kb)


def test_abox_interpretation():
    i = interpretation_of_abox([Assertion("R", ("cu", "cv"))])
    assert i.domain == {"cu", "cv"} and i.role("R") == {("cu", "cv")}
    loop = interpretation_of_abox([Assertion("A", ("c",)), Assertion("P", ("c", "c"))])
    assert loop.domain == {"c"} and loop.role("P") == {("c", "c")}
    with pytest.raises(ValidationError):
        interpretation_of_abox([])


def test_fo_examples(ex_i, ex_j):
    phi = parse_formula("forall y . P(x, y) -> A(y)")
    assert eval_fo(phi, ex_i, {"x": "d"})
    assert not eval_fo(phi, ex_j, {"x": "d'"})
    assert eval_fo(parse_formula("A(x)"), ex_i, {"x": "e1"})


def test_concept_translation_agrees(ex_i, ex_j):
    for c in right_concepts(["A"], ["P"], 2):
        for i in (ex_i, ex_j):
            assert satisfying_elements(concept_to_fo(c), i) == eval_concept(c, i)


def test_interpretation_validation():
    with pytest.raises(ValidationError):
        Interpretation(frozenset())
    with pytest.raises(ValidationError):
        Interpretation(frozenset({"d"}), {"A": {"e"}})
    with pytest.raises(ValidationError):
        Interpretation(frozenset({"d"}), {}, {"P": {("d", "e")}})


def test_grammar_positions():
    a, b = Atomic("A"), Atomic("B")
    assert is_left(Conj(a, Exists(P)))
    assert not is_left(ExistsQualified(P, a))
    assert is_right(ExistsQualified(P, NegAtomic("A")))
    with pytest.raises(ValidationError):
        Conj(a, NegAtomic("B"))
    assert is_negative_only(ExistsQualified(P, NegExists(P)))
    assert not is_negative_only(ExistsQualified(P, b))
    assert depth(ExistsQualified(P, ExistsQualified(P, a))) == 2
    assert conj(a, b) == Conj(b, a)
    with pytest.raises(ValidationError):
        conj()


def test_kb_rejects_mixed_use():
    with pytest.raises(ValidationError):
        KnowledgeBase.of([ConceptInclusion(Atomic("P"), Exists(P))])
