"""Certain answers: rewrite, then evaluate each disjunct over the ABox."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, product
from typing import Iterable, Mapping, Sequence

from .core.concepts import NegAtomic, NegExists
from .core.interpretation import Interpretation, interpretation_of_abox
from .core.kb import KnowledgeBase
from .core.query import Atom, ConjunctiveQuery, Const, Term, UnionQuery, Var
from .errors import ValidationError
from .reformulation import (
    DEFAULT_LIMIT,
    atoms_of,
    mentions_internal,
    normalize_tbox,
    perfect_reformulation,
    role_atom,
    saturate,
)

Assignment = dict[Var, str]


class _Index:
    """Per-predicate lookup tables over one interpretation."""

    def __init__(self, i: Interpretation):
        self.i = i
        self.by_first: dict[str, dict[str, list[tuple[str, str]]]] = {}
        self.by_second: dict[str, dict[str, list[tuple[str, str]]]] = {}

    def pairs(self, pred: str, s: str | None, t: str | None) -> list[tuple[str, str]]:
        ext = self.i.role(pred)
        if s is not None and t is not None:
            return [(s, t)] if (s, t) in ext else []
        if s is not None:
            table = self.by_first.get(pred)
            if table is None:
                table = self.by_first[pred] = {}
                for a, b in ext:
                    table.setdefault(a, []).append((a, b))
            return table.get(s, [])
        if t is not None:
            table = self.by_second.get(pred)
            if table is None:
                table = self.by_second[pred] = {}
                for a, b in ext:
                    table.setdefault(b, []).append((a, b))
            return table.get(t, [])
        return sorted(ext)


def _candidates(a: Atom, index: _Index, binding: Mapping[Var, str]) -> list[tuple[str, ...]]:
    vals = [t.name if isinstance(t, Const) else binding.get(t) for t in a.args]
    if len(a.args) == 1:
        ext = index.i.concept(a.pred)
        if vals[0] is not None:
            return [(vals[0],)] if vals[0] in ext else []
        return [(e,) for e in sorted(ext)]
    pairs = index.pairs(a.pred, vals[0], vals[1])
    if a.args[0] == a.args[1]:
        pairs = [p for p in pairs if p[0] == p[1]]
    return pairs


def _search(atoms: list[Atom], index: _Index, binding: Assignment, out: list[Assignment], first_only: bool):
    if not atoms:
        out.append(dict(binding))
        return
    # most constrained atom first
    best, options = None, None
    for a in atoms:
        cand = _candidates(a, index, binding)
        if options is None or len(cand) < len(options):
            best, options = a, cand
            if not cand:
                return
    rest = [a for a in atoms if a is not best]
    for tup in options:
        added = []
        for t, val in zip(best.args, tup):
            if isinstance(t, Var) and t not in binding:
                binding[t] = val
                added.append(t)
        _search(rest, index, binding, out, first_only)
        for t in added:
            del binding[t]
        if first_only and out:
            return


def evaluate_disjunct(
    atoms: Iterable[Atom],
    i: Interpretation,
    binding: Mapping[Var, str] | None = None,
    first_only: bool = False,
) -> list[Assignment]:
    """All total assignments extending ``binding`` that satisfy every atom in ``i``."""
    atoms = list(atoms)
    binding = dict(binding or {})
    for a in atoms:
        for t in a.args:
            if isinstance(t, Const) and t.name not in i.domain:
                return []
    out: list[Assignment] = []
    _search(atoms, _Index(i), binding, out, first_only)
    return out


def _holds_somewhere(cq: ConjunctiveQuery, i: Interpretation | None) -> bool:
    if not cq.atoms:
        return True
    return i is not None and bool(evaluate_disjunct(cq.atoms, i, first_only=True))


def _abox_interpretation(kb: KnowledgeBase) -> Interpretation | None:
    if not kb.constants:
        return None
    return interpretation_of_abox(kb.abox, kb.constants)


def violation_queries(kb: KnowledgeBase, limit: int = DEFAULT_LIMIT) -> list[tuple[str, list[ConjunctiveQuery]]]:
    """Boolean rewritten queries, one family per negative inclusion, that detect a clash."""
    from .syntax.printer import print_axiom

    nt = normalize_tbox(kb.tbox)
    result = []
    x = Var("x")
    for rule in nt.negative:
        fresh = count(1)
        atoms = atoms_of(rule.body, x, fresh)
        if isinstance(rule.head, NegAtomic):
            atoms.add(Atom(rule.head.name, (x,)))
        elif isinstance(rule.head, NegExists):
            atoms.add(role_atom(rule.head.role, x, Var("_w")))
        cq = ConjunctiveQuery((), frozenset(atoms))
        rewritten = [d for d in saturate([cq], nt, limit) if not mentions_internal(d)]
        result.append((print_axiom(rule.source), rewritten))
    return result


def inconsistency_reasons(kb: KnowledgeBase, limit: int = DEFAULT_LIMIT) -> list[str]:
    i = _abox_interpretation(kb)
    reasons = []
    for axiom, family in violation_queries(kb, limit):
        if any(_holds_somewhere(d, i) for d in family):
            reasons.append(axiom)
    return reasons


def is_consistent(kb: KnowledgeBase, limit: int = DEFAULT_LIMIT) -> bool:
    i = _abox_interpretation(kb)
    return not any(
        _holds_somewhere(d, i) for _, family in violation_queries(kb, limit) for d in family
    )


@dataclass(frozen=True)
class Witness:
    disjunct: ConjunctiveQuery
    assignment: Mapping[Var, str]


@dataclass(frozen=True)
class AnswerSet:
    arity: int
    tuples: frozenset[tuple[str, ...]]
    inconsistent: bool = False
    witnesses: Mapping[tuple[str, ...], Witness] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.arity:
                raise ValidationError(f"answer {t} does not have arity {self.arity}")

    def sorted(self) -> list[tuple[str, ...]]:
        return sorted(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)


def _project(head: Sequence[Term], m: Mapping[Var, str]) -> tuple[str, ...]:
    return tuple(t.name if isinstance(t, Const) else m[t] for t in head)


def evaluate_query(q: UnionQuery, i: Interpretation | None) -> dict[tuple[str, ...], Witness]:
    """Answers of ``q`` read directly over ``i`` (``None`` stands for no individuals)."""
    found: dict[tuple[str, ...], Witness] = {}
    for d in q.disjuncts:
        if i is None:
            if not d.atoms:
                found.setdefault(_project(d.head, {}), Witness(d, {}))
            continue
        for m in evaluate_disjunct(d.atoms, i):
            found.setdefault(_project(d.head, m), Witness(d, m))
    return found


def certain_answers(kb: KnowledgeBase, q: UnionQuery, limit: int = DEFAULT_LIMIT) -> AnswerSet:
    """Tuples entailed by every model of ``kb``; everything if ``kb`` is inconsistent."""
    if not is_consistent(kb, limit):
        everything = frozenset(product(sorted(kb.constants), repeat=q.arity))
        return AnswerSet(q.arity, everything, inconsistent=True)
    rewritten = perfect_reformulation(kb.tbox, q, limit)
    found = evaluate_query(rewritten, _abox_interpretation(kb))
    return AnswerSet(q.arity, frozenset(found), witnesses=found)


def entails(kb: KnowledgeBase, q: UnionQuery, tup: Sequence[str], limit: int = DEFAULT_LIMIT) -> bool:
    """Decide ``<T, A> |= q(tup)``.

    An inconsistent KB entails every tuple, including ones naming fresh
    individuals. Otherwise a fresh individual only matches itself.
    """
    tup = tuple(tup)
    if len(tup) != q.arity:
        raise ValidationError(f"tuple has {len(tup)} components but the query has arity {q.arity}")
    answers = certain_answers(kb, q, limit)
    return answers.inconsistent or tup in answers.tuples
