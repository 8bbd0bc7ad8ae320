from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..errors import ValidationError
from .concepts import Axiom, ConceptInclusion, RoleInclusion, axiom_key, concept_names, role_names


@dataclass(frozen=True, order=True)
class Assertion:
    """A ground membership assertion ``A(c)`` or ``P(c, d)``."""

    pred: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) not in (1, 2):
            raise ValidationError(f"assertion {self.pred} must be unary or binary")

    def __str__(self) -> str:
        return f"{self.pred}({', '.join(self.args)})"


def tbox_signature(tbox: Iterable[Axiom]) -> tuple[set[str], set[str]]:
    concepts: set[str] = set()
    roles: set[str] = set()
    for ax in tbox:
        if isinstance(ax, ConceptInclusion):
            for side in (ax.lhs, ax.rhs):
                concepts |= concept_names(side)
                roles |= role_names(side)
        else:
            roles |= {ax.lhs.name, ax.rhs.name}
    return concepts, roles


@dataclass(frozen=True)
class KnowledgeBase:
    """A pair ``<T, A>`` plus the set of individual constants it talks about."""

    tbox: frozenset[Axiom] = frozenset()
    abox: frozenset[Assertion] = frozenset()
    constants: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "tbox", frozenset(self.tbox))
        object.__setattr__(self, "abox", frozenset(self.abox))
        mentioned = {c for a in self.abox for c in a.args}
        object.__setattr__(self, "constants", frozenset(self.constants) | mentioned)
        concepts, roles = self.signature()
        clash = concepts & roles
        if clash:
            raise ValidationError(f"predicate used both as concept and role: {', '.join(sorted(clash))}")

    @classmethod
    def of(cls, tbox: Iterable[Axiom] = (), abox: Iterable[Assertion] = (), constants: Iterable[str] = ()):
        return cls(frozenset(tbox), frozenset(abox), frozenset(constants))

    def signature(self) -> tuple[set[str], set[str]]:
        concepts, roles = tbox_signature(self.tbox)
        for a in self.abox:
            (concepts if len(a.args) == 1 else roles).add(a.pred)
        return concepts, roles

    @property
    def axiom_count(self) -> int:
        return len(self.tbox)

    @property
    def tuple_count(self) -> int:
        """Number of distinct argument tuples among the ABox atoms."""
        return len({a.args for a in self.abox})

    def sorted_tbox(self) -> list[Axiom]:
        return sorted(self.tbox, key=axiom_key)

    def concept_inclusions(self) -> list[ConceptInclusion]:
        return [ax for ax in self.sorted_tbox() if isinstance(ax, ConceptInclusion)]

    def role_inclusions(self) -> list[RoleInclusion]:
        return [ax for ax in self.sorted_tbox() if isinstance(ax, RoleInclusion)]
