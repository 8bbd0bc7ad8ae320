"""Finite interpretations and the set semantics of concepts, roles and axioms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import ValidationError
from .concepts import (
    Atomic,
    Axiom,
    Concept,
    ConceptInclusion,
    Conj,
    Exists,
    ExistsQualified,
    NegAtomic,
    NegExists,
    Role,
)
from .kb import Assertion, KnowledgeBase

Pair = tuple[str, str]


@dataclass(frozen=True)
class Interpretation:
    """``<Δ, ·^I>`` over a finite, non-empty domain.

    Predicates without an entry have the empty extension. Entries that are
    present but empty are kept, so they survive printing and re-parsing.
    """

    domain: frozenset[str]
    concepts: Mapping[str, frozenset[str]] = field(default_factory=dict)
    roles: Mapping[str, frozenset[Pair]] = field(default_factory=dict)

    def __post_init__(self):
        domain = frozenset(self.domain)
        if not domain:
            raise ValidationError("interpretation domain must be non-empty")
        concepts = {k: frozenset(v) for k, v in self.concepts.items()}
        roles = {k: frozenset((a, b) for a, b in v) for k, v in self.roles.items()}
        for name, ext in concepts.items():
            stray = ext - domain
            if stray:
                raise ValidationError(f"concept {name} mentions elements outside the domain: {sorted(stray)}")
        for name, ext in roles.items():
            stray = {e for pair in ext for e in pair} - domain
            if stray:
                raise ValidationError(f"role {name} mentions elements outside the domain: {sorted(stray)}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "concepts", concepts)
        object.__setattr__(self, "roles", roles)

    def concept(self, name: str) -> frozenset[str]:
        return self.concepts.get(name, frozenset())

    def role(self, name: str) -> frozenset[Pair]:
        return self.roles.get(name, frozenset())

    def signature(self) -> tuple[set[str], set[str]]:
        return set(self.concepts), set(self.roles)

    def sorted_domain(self) -> list[str]:
        return sorted(self.domain)


def eval_role(r: Role, i: Interpretation) -> frozenset[Pair]:
    ext = i.role(r.name)
    if r.inverted:
        return frozenset((b, a) for a, b in ext)
    return ext


def successors(r: Role, i: Interpretation) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {d: set() for d in i.domain}
    for a, b in eval_role(r, i):
        out[a].add(b)
    return out


def eval_concept(c: Concept, i: Interpretation) -> frozenset[str]:
    if isinstance(c, Atomic):
        return i.concept(c.name)
    if isinstance(c, Exists):
        return frozenset(a for a, _ in eval_role(c.role, i))
    if isinstance(c, ExistsQualified):
        filler = eval_concept(c.filler, i)
        return frozenset(a for a, b in eval_role(c.role, i) if b in filler)
    if isinstance(c, Conj):
        return eval_concept(c.left, i) & eval_concept(c.right, i)
    if isinstance(c, NegAtomic):
        return i.domain - i.concept(c.name)
    if isinstance(c, NegExists):
        return i.domain - eval_concept(Exists(c.role), i)
    raise TypeError(f"not a concept: {c!r}")


def models_axiom(i: Interpretation, ax: Axiom) -> bool:
    if isinstance(ax, ConceptInclusion):
        return eval_concept(ax.lhs, i) <= eval_concept(ax.rhs, i)
    return eval_role(ax.lhs, i) <= eval_role(ax.rhs, i)


def models_assertion(i: Interpretation, a: Assertion) -> bool:
    if len(a.args) == 1:
        return a.args[0] in i.concept(a.pred)
    return a.args in i.role(a.pred)


def kb_violations(i: Interpretation, kb: KnowledgeBase) -> list[str]:
    """Human-readable reasons why ``i`` is not a model of ``kb`` (empty list if it is)."""
    problems = [f"constant {c} is not in the domain" for c in sorted(kb.constants - i.domain)]
    from ..syntax.printer import print_axiom  # local: printer imports core

    for ax in kb.sorted_tbox():
        if not models_axiom(i, ax):
            problems.append(f"axiom violated: {print_axiom(ax)}")
    for a in sorted(kb.abox):
        if not models_assertion(i, a):
            problems.append(f"assertion violated: {a}")
    return problems


def models_kb(i: Interpretation, kb: KnowledgeBase) -> bool:
    return not kb_violations(i, kb)


def interpretation_of_abox(abox: Iterable[Assertion], constants: Iterable[str] = ()) -> Interpretation:
    """The ABox read as a structure: its constants are the domain, its atoms the extensions."""
    abox = list(abox)
    domain = set(constants)
    concepts: dict[str, set[str]] = {}
    roles: dict[str, set[Pair]] = {}
    for a in abox:
        domain.update(a.args)
        if len(a.args) == 1:
            concepts.setdefault(a.pred, set()).add(a.args[0])
        else:
            roles.setdefault(a.pred, set()).add(a.args)
    if not domain:
        raise ValidationError("cannot build an interpretation from an empty ABox without constants")
    return Interpretation(frozenset(domain), concepts, roles)
