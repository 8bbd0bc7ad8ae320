"""Seeded random instances and exhaustive enumerators for property tests."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Sequence

from .core.concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Conj,
    Exists,
    ExistsQualified,
    NegAtomic,
    NegExists,
    Role,
    RoleInclusion,
    concept_key,
)
from .core.graph import Graph
from .core.interpretation import Interpretation
from .core.kb import Assertion, KnowledgeBase
from .core.query import Atom, ConjunctiveQuery, Const, UnionQuery, Var

CONCEPT_NAMES = ("A", "B", "C", "D", "E")
ROLE_NAMES = ("P", "Q", "S", "T")
INDIVIDUALS = ("a", "b", "c", "d", "e", "f")


def all_roles(role_names: Iterable[str]) -> list[Role]:
    return [Role(n, inv) for n in role_names for inv in (False, True)]


# -- concept enumeration ---------------------------------------------------------


def _dedup(cs: Iterable[Concept]) -> list[Concept]:
    seen: dict[tuple, Concept] = {}
    for c in cs:
        seen.setdefault(concept_key(c), c)
    return [seen[k] for k in sorted(seen)]


def left_concepts(concepts: Sequence[str], roles: Sequence[str], max_depth: int) -> list[Concept]:
    """Every left concept of nesting depth <= ``max_depth``, up to reordering of conjuncts."""
    basic = [Atomic(a) for a in concepts] + [Exists(r) for r in all_roles(roles)]
    level = _dedup(basic)
    for _ in range(max_depth):
        level = _dedup(level + [Conj(x, y) for x, y in combinations_with_replacement(level, 2)])
    return level


def right_concepts(concepts: Sequence[str], roles: Sequence[str], max_depth: int) -> list[Concept]:
    """Every right concept of nesting depth <= ``max_depth`` (left concepts included)."""
    negatives = [NegAtomic(a) for a in concepts] + [NegExists(r) for r in all_roles(roles)]
    level = _dedup(left_concepts(concepts, roles, 0) + negatives)
    for k in range(1, max_depth + 1):
        quals = [ExistsQualified(r, e) for r in all_roles(roles) for e in level]
        level = _dedup(left_concepts(concepts, roles, k) + negatives + quals)
    return level


# -- interpretation enumeration ----------------------------------------------------


def count_interpretations(n_concepts: int, n_roles: int, size: int) -> int:
    return 2 ** (n_concepts * size + n_roles * size * size)


def interpretations_over(
    concepts: Sequence[str], roles: Sequence[str], elements: Sequence[str]
) -> Iterator[Interpretation]:
    """All interpretations with domain exactly ``elements`` over the given signature."""
    elements = list(elements)
    pairs = [(a, b) for a in elements for b in elements]
    subsets = [frozenset(e for e, bit in zip(elements, bits) if bit) for bits in product((0, 1), repeat=len(elements))]
    relations = [frozenset(p for p, bit in zip(pairs, bits) if bit) for bits in product((0, 1), repeat=len(pairs))]
    for cext in product(subsets, repeat=len(concepts)):
        for rext in product(relations, repeat=len(roles)):
            yield Interpretation(frozenset(elements), dict(zip(concepts, cext)), dict(zip(roles, rext)))


def all_interpretations(concepts: Sequence[str], roles: Sequence[str], max_domain: int) -> Iterator[Interpretation]:
    for n in range(1, max_domain + 1):
        yield from interpretations_over(concepts, roles, [f"e{k}" for k in range(1, n + 1)])


# -- random instances ----------------------------------------------------------------


def random_interpretation(
    rng: random.Random,
    concepts: Sequence[str] = ("A", "B"),
    roles: Sequence[str] = ("P",),
    max_domain: int = 5,
    density: float | None = None,
    prefix: str = "d",
) -> Interpretation:
    n = rng.randint(1, max_domain)
    dom = [f"{prefix}{k}" for k in range(1, n + 1)]
    p = rng.uniform(0.15, 0.6) if density is None else density
    cext = {a: frozenset(e for e in dom if rng.random() < p) for a in concepts}
    q = p / max(1, n // 2)
    rext = {r: frozenset((x, y) for x in dom for y in dom if rng.random() < q) for r in roles}
    return Interpretation(frozenset(dom), cext, rext)


def random_graph(rng: random.Random, max_vertices: int = 6, density: float | None = None) -> Graph:
    n = rng.randint(1, max_vertices)
    vs = [str(k) for k in range(1, n + 1)]
    p = rng.uniform(0.1, 0.6) if density is None else density
    edges = {(a, b) for a in vs for b in vs if rng.random() < p}
    return Graph(frozenset(vs), frozenset(edges))


def _random_role(rng, roles) -> Role:
    return Role(rng.choice(roles), rng.random() < 0.4)


def _random_basic_left(rng, concepts, roles) -> Concept:
    if rng.random() < 0.55:
        return Atomic(rng.choice(concepts))
    return Exists(_random_role(rng, roles))


def random_left(rng, concepts, roles) -> Concept:
    c = _random_basic_left(rng, concepts, roles)
    if rng.random() < 0.25:
        c = Conj(c, _random_basic_left(rng, concepts, roles))
    return c


def random_right(rng, concepts, roles, depth: int = 2, negatives: bool = True) -> Concept:
    roll = rng.random()
    if depth > 0 and roll < 0.3:
        return ExistsQualified(_random_role(rng, roles), random_right(rng, concepts, roles, depth - 1, negatives))
    if negatives and roll < 0.4:
        if rng.random() < 0.5:
            return NegAtomic(rng.choice(concepts))
        return NegExists(_random_role(rng, roles))
    return random_left(rng, concepts, roles)


def random_tbox(
    rng: random.Random,
    concepts: Sequence[str],
    roles: Sequence[str],
    max_axioms: int = 6,
    negatives: bool = True,
):
    tbox = set()
    for _ in range(rng.randint(0, max_axioms)):
        if rng.random() < 0.15:
            tbox.add(RoleInclusion(_random_role(rng, roles), _random_role(rng, roles)))
        else:
            tbox.add(ConceptInclusion(random_left(rng, concepts, roles), random_right(rng, concepts, roles, 2, negatives)))
    return tbox


def random_abox(rng, concepts, roles, max_atoms: int = 8, individuals: Sequence[str] = INDIVIDUALS[:4]):
    abox = set()
    for _ in range(rng.randint(1, max_atoms)):
        if rng.random() < 0.5:
            abox.add(Assertion(rng.choice(concepts), (rng.choice(individuals),)))
        else:
            abox.add(Assertion(rng.choice(roles), (rng.choice(individuals), rng.choice(individuals))))
    return abox


def random_kb(
    rng: random.Random,
    n_concepts: int = 3,
    n_roles: int = 2,
    max_axioms: int = 6,
    max_abox: int = 8,
    negatives: bool = True,
) -> KnowledgeBase:
    concepts = CONCEPT_NAMES[:n_concepts]
    roles = ROLE_NAMES[:n_roles]
    tbox = random_tbox(rng, concepts, roles, max_axioms, negatives)
    return KnowledgeBase(frozenset(tbox), frozenset(random_abox(rng, concepts, roles, max_abox)))


def random_cq(rng, concepts, roles, arity: int, max_atoms: int = 3, constants: Sequence[str] = ()) -> ConjunctiveQuery:
    n_atoms = rng.randint(max(1, arity), max_atoms) if arity else rng.randint(1, max_atoms)
    pool = [Var(f"y{k}") for k in range(1, n_atoms + 2)]
    head = [Var(f"x{k}") for k in range(1, arity + 1)]
    terms = head + pool

    def term():
        if constants and rng.random() < 0.1:
            return Const(rng.choice(constants))
        return rng.choice(terms)

    while True:
        atoms = set()
        for _ in range(n_atoms):
            if rng.random() < 0.45:
                atoms.add(Atom(rng.choice(concepts), (term(),)))
            else:
                atoms.add(Atom(rng.choice(roles), (term(), term())))
        used = {t for a in atoms for t in a.args}
        missing = [v for v in head if v not in used]
        if len(missing) <= len(atoms):
            # anchor each missing answer variable in its own atom
            atoms = sorted(atoms, key=Atom.sort_key)
            for k, v in enumerate(missing):
                a = atoms[k]
                atoms[k] = Atom(a.pred, (v,) + a.args[1:])
            atoms = set(atoms)
            if all(any(v in a.args for a in atoms) for v in head):
                return ConjunctiveQuery(tuple(head), frozenset(atoms))


def random_query(
    rng: random.Random,
    n_concepts: int = 3,
    n_roles: int = 2,
    max_atoms: int = 3,
    max_disjuncts: int = 2,
    max_arity: int = 2,
    constants: Sequence[str] = INDIVIDUALS[:4],
) -> UnionQuery:
    concepts = CONCEPT_NAMES[:n_concepts]
    roles = ROLE_NAMES[:n_roles]
    arity = rng.randint(0, max_arity)
    ds = tuple(
        random_cq(rng, concepts, roles, arity, max_atoms, constants) for _ in range(rng.randint(1, max_disjuncts))
    )
    return UnionQuery(ds)
