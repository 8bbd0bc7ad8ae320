import random
from itertools import product

import pytest

from dllite.answering import certain_answers
from dllite.cli import bundled, load_hom_corpus
from dllite.core import Graph
from dllite.errors import BudgetExceeded, ValidationError
from dllite.generate import random_graph
from dllite.reduction import HomInstance, brute_force_hom, encode, find_hom
from dllite.syntax import parse_graph


def _naive(inst):
    v1, v2 = inst.g1.sorted_vertices(), inst.g2.sorted_vertices()
    for image in product(v1, repeat=len(v2)):
        f = dict(zip(v2, image))
        if all((f[a], f[b]) in inst.g1.edges for a, b in inst.g2.edges):
            return True
    return False


def test_encoding_shape():
    g1 = parse_graph("vertices: 9\n1 2")
    g2 = parse_graph("1 2\n2 3")
    kb, q = encode(HomInstance(g1, g2))
    assert not kb.tbox and len(kb.abox) == 1
    assert kb.constants == {"c1", "c2", "c9"}
    assert q.arity == 0 and len(q.disjuncts[0].atoms) == 2


def test_iff_random():
    rng = random.Random(41)
    for _ in range(200):
        inst = HomInstance(random_graph(rng, 4), random_graph(rng, 4))
        kb, q = encode(inst)
        expected = _naive(inst)
        assert brute_force_hom(inst) == expected
        assert bool(certain_answers(kb, q).tuples) == expected


def test_found_map_is_homomorphism():
    rng = random.Random(42)
    for _ in range(100):
        inst = HomInstance(random_graph(rng, 5), random_graph(rng, 5))
        f = find_hom(inst, chunk=7)
        if f is not None:
            assert all((f[a], f[b]) in inst.g1.edges for a, b in inst.g2.edges)


def test_corpus():
    cases = load_hom_corpus(bundled("hom_corpus.txt"))
    assert len(cases) >= 10
    for name, inst, expect in cases:
        assert brute_force_hom(inst) == expect, name


def test_budget():
    g = Graph.from_edges([], vertices=[str(k) for k in range(10)])
    with pytest.raises(BudgetExceeded):
        brute_force_hom(HomInstance(g, g), budget=1000)


def test_empty_graph_rejected():
    with pytest.raises(ValidationError):
        encode(HomInstance(Graph(frozenset(), frozenset()), parse_graph("1 2")))
