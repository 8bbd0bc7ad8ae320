"""Conjunctive queries and their unions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import ValidationError


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self) -> str:
        return f'"{self.name}"'


Term = Union[Var, Const]


def term_key(t: Term) -> tuple:
    return (0, t.name) if isinstance(t, Var) else (1, t.name)


@dataclass(frozen=True)
class Atom:
    """``A(t)`` or ``P(t1, t2)``; roles always appear un-inverted, inverses swap arguments."""

    pred: str
    args: tuple[Term, ...]

    def __post_init__(self):
        if len(self.args) not in (1, 2):
            raise ValidationError(f"atom {self.pred} has arity {len(self.args)}; only 1 and 2 are supported")

    def variables(self) -> set[Var]:
        return {t for t in self.args if isinstance(t, Var)}

    def sort_key(self) -> tuple:
        return (self.pred, tuple(term_key(t) for t in self.args))

    def __str__(self) -> str:
        return f"{self.pred}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class ConjunctiveQuery:
    """One disjunct: answer terms ``head`` and a set of body atoms.

    The head usually lists distinct variables, but rewriting may unify two
    answer variables or bind one to a constant, so repeated variables and
    constants are allowed. Every head variable must occur in the body.
    """

    head: tuple[Term, ...]
    atoms: frozenset[Atom]

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "head", tuple(self.head))
        body_vars = self.variables()
        for t in self.head:
            if isinstance(t, Var) and t not in body_vars:
                raise ValidationError(f"unsafe query: answer variable {t} does not occur in the body")

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for a in self.atoms:
            out |= a.variables()
        return out

    def constants(self) -> set[Const]:
        out = {t for t in self.head if isinstance(t, Const)}
        for a in self.atoms:
            out |= {t for t in a.args if isinstance(t, Const)}
        return out

    def predicates(self) -> set[str]:
        return {a.pred for a in self.atoms}

    @property
    def arity(self) -> int:
        return len(self.head)

    def sorted_atoms(self) -> list[Atom]:
        return sorted(self.atoms, key=Atom.sort_key)

    def __str__(self) -> str:
        body = ", ".join(map(str, self.sorted_atoms())) or "true"
        return f"q({', '.join(map(str, self.head))}) :- {body}"


def _distinct_vars(head: tuple[Term, ...]) -> bool:
    return all(isinstance(t, Var) for t in head) and len(set(head)) == len(head)


@dataclass(frozen=True)
class UnionQuery:
    """A UCQ: a non-empty tuple of disjuncts sharing the same arity."""

    disjuncts: tuple[ConjunctiveQuery, ...]
    name: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "disjuncts", tuple(self.disjuncts))
        if not self.disjuncts:
            raise ValidationError("a union of conjunctive queries needs at least one disjunct")
        arities = {d.arity for d in self.disjuncts}
        if len(arities) != 1:
            raise ValidationError(f"disjuncts disagree on arity: {sorted(arities)}")

    @classmethod
    def single(cls, head: Iterable[str | Term], atoms: Iterable[Atom]) -> UnionQuery:
        terms = tuple(Var(h) if isinstance(h, str) else h for h in head)
        return cls((ConjunctiveQuery(terms, frozenset(atoms)),))

    @property
    def arity(self) -> int:
        return self.disjuncts[0].arity

    @property
    def is_boolean(self) -> bool:
        return self.arity == 0

    @property
    def distinguished(self) -> tuple[str, ...]:
        """Answer-variable names: the head of the first disjunct listing distinct variables."""
        for d in self.disjuncts:
            if _distinct_vars(d.head):
                return tuple(t.name for t in d.head)
        return tuple(f"x{k + 1}" for k in range(self.arity))

    def size(self) -> int:
        """Symbol count: one per predicate occurrence and per term occurrence, heads included."""
        return sum(1 + len(d.head) + sum(1 + len(a.args) for a in d.atoms) for d in self.disjuncts)

    def max_atoms(self) -> int:
        return max(len(d.atoms) for d in self.disjuncts)

    def predicates(self) -> set[str]:
        out: set[str] = set()
        for d in self.disjuncts:
            out |= d.predicates()
        return out
