"""Roles, concepts and inclusion axioms of DL-Lite_{R,⊓}.

Left concepts (allowed on the subsumee side)::

    D ::= A | exists R | D and D

Right concepts (allowed on the subsumer side)::

    E ::= D | not A | not exists R | exists R . E

Conjunction only ever joins left concepts, so every well-formed concept is a
right concept and ``is_left`` is the only interesting polarity test.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import ValidationError


@dataclass(frozen=True, order=True)
class Role:
    """An atomic role ``P`` or its inverse ``P⁻``."""

    name: str
    inverted: bool = False

    def inverse(self) -> Role:
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return f"inv({self.name})" if self.inverted else self.name


@dataclass(frozen=True)
class Atomic:
    name: str


@dataclass(frozen=True)
class Exists:
    """Unqualified existential ``exists R``."""

    role: Role


@dataclass(frozen=True)
class ExistsQualified:
    """Qualified existential ``exists R . E``; only legal on the right."""

    role: Role
    filler: "Concept"

    def __post_init__(self):
        if not is_right(self.filler):
            raise ValidationError(f"filler of exists {self.role} . _ must be a right concept")


@dataclass(frozen=True, eq=False)
class Conj:
    """Binary conjunction of left concepts.

    Equality and hashing see the flattened multiset of conjuncts, so
    ``A and B == B and A`` and nesting does not matter.
    """

    left: "Concept"
    right: "Concept"

    def __post_init__(self):
        if not (is_left(self.left) and is_left(self.right)):
            raise ValidationError("conjunction is only defined between left concepts")

    def __eq__(self, other):
        if not isinstance(other, Conj):
            return NotImplemented
        return concept_key(self) == concept_key(other)

    def __hash__(self):
        return hash(concept_key(self))


@dataclass(frozen=True)
class NegAtomic:
    name: str


@dataclass(frozen=True)
class NegExists:
    role: Role


Concept = Union[Atomic, Exists, ExistsQualified, Conj, NegAtomic, NegExists]


def conjuncts(c: Concept) -> Iterator[Concept]:
    """Yield the non-conjunction leaves of a (possibly nested) conjunction."""
    if isinstance(c, Conj):
        yield from conjuncts(c.left)
        yield from conjuncts(c.right)
    else:
        yield c


def conj(*parts: Concept) -> Concept:
    if not parts:
        raise ValidationError("empty conjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Conj(out, p)
    return out


def concept_key(c: Concept) -> tuple:
    """Total, canonical sort key; two concepts are equal iff their keys are."""
    if isinstance(c, Atomic):
        return (0, c.name)
    if isinstance(c, Exists):
        return (1, c.role.name, c.role.inverted)
    if isinstance(c, ExistsQualified):
        return (2, c.role.name, c.role.inverted, concept_key(c.filler))
    if isinstance(c, Conj):
        return (3, tuple(sorted(concept_key(x) for x in conjuncts(c))))
    if isinstance(c, NegAtomic):
        return (4, c.name)
    if isinstance(c, NegExists):
        return (5, c.role.name, c.role.inverted)
    raise TypeError(f"not a concept: {c!r}")


def conjunct_multiset(c: Concept) -> Counter:
    return Counter(concept_key(x) for x in conjuncts(c))


def is_left(c: Concept) -> bool:
    if isinstance(c, (Atomic, Exists)):
        return True
    if isinstance(c, Conj):
        return is_left(c.left) and is_left(c.right)
    return False


def is_right(c: Concept) -> bool:
    if is_left(c) or isinstance(c, (NegAtomic, NegExists)):
        return True
    if isinstance(c, ExistsQualified):
        return is_right(c.filler)
    return False


def is_negative_only(c: Concept) -> bool:
    """True for right concepts whose leaves are all negations (no positive atoms or ``exists R``)."""
    if isinstance(c, (NegAtomic, NegExists)):
        return True
    if isinstance(c, ExistsQualified):
        return is_negative_only(c.filler)
    return False


def depth(c: Concept) -> int:
    """Constructor nesting depth; basic concepts (A, not A, exists R, not exists R) have depth 0."""
    if isinstance(c, ExistsQualified):
        return 1 + depth(c.filler)
    if isinstance(c, Conj):
        return 1 + max(depth(c.left), depth(c.right))
    return 0


def concept_names(c: Concept) -> set[str]:
    if isinstance(c, (Atomic, NegAtomic)):
        return {c.name}
    if isinstance(c, ExistsQualified):
        return concept_names(c.filler)
    if isinstance(c, Conj):
        return concept_names(c.left) | concept_names(c.right)
    return set()


def role_names(c: Concept) -> set[str]:
    if isinstance(c, (Exists, NegExists)):
        return {c.role.name}
    if isinstance(c, ExistsQualified):
        return {c.role.name} | role_names(c.filler)
    if isinstance(c, Conj):
        return role_names(c.left) | role_names(c.right)
    return set()


@dataclass(frozen=True)
class ConceptInclusion:
    lhs: Concept
    rhs: Concept

    def __post_init__(self):
        if not is_left(self.lhs):
            raise ValidationError("left-hand side of a concept inclusion must be a left concept")
        if not is_right(self.rhs):
            raise ValidationError("right-hand side of a concept inclusion must be a right concept")

    @property
    def is_negative(self) -> bool:
        return isinstance(self.rhs, (NegAtomic, NegExists))


@dataclass(frozen=True)
class RoleInclusion:
    lhs: Role
    rhs: Role


Axiom = Union[ConceptInclusion, RoleInclusion]


def axiom_key(ax: Axiom) -> tuple:
    if isinstance(ax, ConceptInclusion):
        return (0, concept_key(ax.lhs), concept_key(ax.rhs))
    return (1, ax.lhs.name, ax.lhs.inverted, ax.rhs.name, ax.rhs.inverted)
