"""Bounded restricted chase: the canonical model used as an independent oracle.

Works directly on the TBox as written (no normalisation), so it shares no
code with the rewriting engine beyond the core data types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .core.concepts import (
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
    RoleInclusion,
    axiom_key,
    conjuncts,
)
from .core.interpretation import Interpretation
from .core.kb import KnowledgeBase
from .core.query import Atom, ConjunctiveQuery, Const, UnionQuery
from .errors import ValidationError

NULL_PREFIX = "_n"


def _null_key(e: str):
    m = re.fullmatch(r"_n(\d+)", e)
    return (1, int(m.group(1)), "") if m else (0, 0, e)


@dataclass(frozen=True)
class ChaseStep:
    element: str
    axiom: Axiom
    added: tuple[str, ...]


@dataclass(frozen=True)
class ChaseModel:
    interpretation: Interpretation
    nulls: frozenset[str]
    depth: dict[str, int]
    log: tuple[ChaseStep, ...]
    # negative facts required by qualified skeletons or negative inclusions
    markers: frozenset[tuple[str, Concept]]

    def elements(self) -> list[str]:
        return sorted(self.interpretation.domain, key=_null_key)


class _Builder:
    def __init__(self, kb: KnowledgeBase, bound: int):
        self.bound = bound
        self.domain: list[str] = sorted(kb.constants)
        self.depth = {c: 0 for c in self.domain}
        self.concepts: dict[str, set[str]] = {}
        self.out: dict[str, dict[str, set[str]]] = {}
        self.inn: dict[str, dict[str, set[str]]] = {}
        self.markers: set[tuple[str, Concept]] = set()
        self.fired: set[tuple] = set()
        self.null_count = 0
        self.log: list[ChaseStep] = []
        self.changed = False
        for a in sorted(kb.abox):
            if len(a.args) == 1:
                self.add_concept(a.pred, a.args[0])
            else:
                self.add_edge(Role(a.pred), *a.args)
        self.changed = False

    # -- model updates
    def add_concept(self, name: str, e: str) -> bool:
        ext = self.concepts.setdefault(name, set())
        if e in ext:
            return False
        ext.add(e)
        self.changed = True
        return True

    def add_edge(self, r: Role, s: str, t: str) -> bool:
        if r.inverted:
            s, t = t, s
        out = self.out.setdefault(r.name, {}).setdefault(s, set())
        if t in out:
            return False
        out.add(t)
        self.inn.setdefault(r.name, {}).setdefault(t, set()).add(s)
        self.changed = True
        return True

    def succ(self, r: Role, e: str) -> set[str]:
        index = self.inn if r.inverted else self.out
        return index.get(r.name, {}).get(e, set())

    def new_null(self, parent: str) -> str:
        self.null_count += 1
        name = f"{NULL_PREFIX}{self.null_count}"
        self.domain.append(name)
        self.depth[name] = self.depth[parent] + 1
        self.changed = True
        return name

    # -- concept tests on the current model
    def holds(self, c: Concept, e: str) -> bool:
        if isinstance(c, Atomic):
            return e in self.concepts.get(c.name, ())
        if isinstance(c, Exists):
            return bool(self.succ(c.role, e))
        if isinstance(c, Conj):
            return self.holds(c.left, e) and self.holds(c.right, e)
        if isinstance(c, (NegAtomic, NegExists)):
            return (e, c) in self.markers
        if isinstance(c, ExistsQualified):
            return any(self.holds(c.filler, s) for s in self.succ(c.role, e))
        raise TypeError(f"not a concept: {c!r}")

    # -- rule application
    def satisfy(self, c: Concept, e: str, added: list[str]):
        """Make ``c`` true at ``e``, creating nulls only when no witness exists."""
        for part in conjuncts(c):
            if isinstance(part, Atomic):
                if self.add_concept(part.name, e):
                    added.append(f"{part.name}({e})")
            elif isinstance(part, (NegAtomic, NegExists)):
                if (e, part) not in self.markers:
                    self.markers.add((e, part))
                    self.changed = True
            elif not self.holds(part, e) and self.depth[e] < self.bound:
                w = self.new_null(e)
                self.add_edge(part.role, e, w)
                added.append(f"{part.role}({e}, {w})")
                if isinstance(part, ExistsQualified):
                    self.satisfy(part.filler, w, added)

    def run(self, tbox: Iterable[Axiom]):
        axioms = sorted(tbox, key=axiom_key)
        cis = [ax for ax in axioms if isinstance(ax, ConceptInclusion)]
        ris = [ax for ax in axioms if isinstance(ax, RoleInclusion)]
        while True:
            self.changed = False
            for ax in ris:
                index = self.inn if ax.lhs.inverted else self.out
                pairs = [(s, t) for s, ts in index.get(ax.lhs.name, {}).items() for t in ts]
                for s, t in sorted(pairs):
                    if self.add_edge(ax.rhs, s, t):
                        self.log.append(ChaseStep(s, ax, (f"{ax.rhs}({s}, {t})",)))
            for e in list(self.domain):
                for ax in cis:
                    if not self.holds(ax.lhs, e):
                        continue
                    for k, part in enumerate(conjuncts(ax.rhs)):
                        trigger = (e, axiom_key(ax), k)
                        if trigger in self.fired:
                            continue
                        if isinstance(part, (Exists, ExistsQualified)):
                            if self.holds(part, e):
                                continue
                            if self.depth[e] >= self.bound:
                                continue
                        self.fired.add(trigger)
                        added: list[str] = []
                        self.satisfy(part, e, added)
                        if added:
                            self.log.append(ChaseStep(e, ax, tuple(added)))
            if not self.changed:
                return


def chase(kb: KnowledgeBase, depth: int) -> ChaseModel:
    """Restricted chase of ``kb`` that never creates nulls deeper than ``depth``."""
    if depth < 0:
        raise ValidationError("chase depth must be non-negative")
    b = _Builder(kb, depth)
    if not b.domain:
        raise ValidationError("cannot chase a knowledge base without individuals")
    b.run(kb.tbox)
    roles = {
        name: frozenset((s, t) for s, ts in by_src.items() for t in ts) for name, by_src in b.out.items()
    }
    for name in kb.signature()[1]:
        roles.setdefault(name, frozenset())
    concepts = {name: frozenset(ext) for name, ext in b.concepts.items()}
    for name in kb.signature()[0]:
        concepts.setdefault(name, frozenset())
    interp = Interpretation(frozenset(b.domain), concepts, roles)
    nulls = frozenset(e for e in b.domain if b.depth[e] > 0)
    return ChaseModel(interp, nulls, dict(b.depth), tuple(b.log), frozenset(b.markers))


def chase_violations(model: ChaseModel) -> list[str]:
    """Clashes in the chased model: negative inclusions or skeleton markers that fail."""
    from .core.interpretation import eval_concept
    from .syntax.printer import print_concept

    i = model.interpretation
    found = []
    for e, c in sorted(model.markers, key=lambda m: (_null_key(m[0]), repr(m[1]))):
        if e not in eval_concept(c, i):
            found.append(f"{e} violates {print_concept(c)}")
    return found


def chase_consistent(kb: KnowledgeBase, depth: int) -> bool:
    return not chase_violations(chase(kb, depth))


# -- naive evaluation ---------------------------------------------------------


def _matches(atoms: list[Atom], i: Interpretation, binding: dict, named: frozenset[str], keep: set):
    """Left-to-right matching; variables in ``keep`` may only take named values."""
    if not atoms:
        yield dict(binding)
        return
    first, rest = atoms[0], atoms[1:]
    if len(first.args) == 1:
        candidates = [(e,) for e in i.concept(first.pred)]
    else:
        candidates = list(i.role(first.pred))
    for tup in candidates:
        new = dict(binding)
        ok = True
        for t, val in zip(first.args, tup):
            cur = t.name if isinstance(t, Const) else new.get(t)
            if cur is None:
                if t in keep and val not in named:
                    ok = False
                    break
                new[t] = val
            elif cur != val:
                ok = False
                break
        if ok:
            yield from _matches(rest, i, new, named, keep)


def _components(atoms: Iterable[Atom]) -> list[list[Atom]]:
    groups: list[tuple[set, list[Atom]]] = []
    for a in sorted(atoms, key=Atom.sort_key):
        vs = {t for t in a.args if not isinstance(t, Const)}
        merged = [g for g in groups if g[0] & vs]
        for g in merged:
            groups.remove(g)
            vs |= g[0]
        groups.append((vs, [a] + [x for g in merged for x in g[1]]))
    return [sorted(g[1], key=Atom.sort_key) for g in groups]


def _chain(atoms: list[Atom]) -> list[Atom]:
    """Order atoms so each one after the first shares a variable with an earlier one."""
    todo, done, seen = list(atoms), [], set()
    while todo:
        nxt = next((a for a in todo if seen & set(a.args)), todo[0])
        todo.remove(nxt)
        done.append(nxt)
        seen |= set(a for a in nxt.args if not isinstance(a, Const))
    return done


def answers_over_chase(kb: KnowledgeBase, q: UnionQuery, depth: int) -> set[tuple[str, ...]]:
    """Tuples of named individuals matching ``q`` in the depth-bounded chase."""
    if not kb.constants:
        return {tuple(t.name for t in d.head) for d in q.disjuncts if not d.atoms}
    i = chase(kb, depth).interpretation
    named = frozenset(kb.constants)
    result = set()
    for d in q.disjuncts:
        head = {t for t in d.head if not isinstance(t, Const)}
        partial = [{}]
        for comp in _components(d.atoms):
            keep = head & {t for a in comp for t in a.args}
            found = []
            for m in _matches(_chain(comp), i, {}, named, keep):
                found.append({v: m[v] for v in keep})
                if not keep:
                    break
            if not found:
                partial = []
                break
            unique = {tuple(sorted(f.items(), key=lambda kv: kv[0].name)) for f in found}
            partial = [dict(p, **{v.name: val for v, val in u}) for p in partial for u in unique]
        for p in partial:
            result.add(tuple(t.name if isinstance(t, Const) else p[t.name] for t in d.head))
    return result


def boolean_over_chase(kb: KnowledgeBase, cq: ConjunctiveQuery, depth: int) -> bool:
    return bool(answers_over_chase(kb, UnionQuery((cq,)), depth))
