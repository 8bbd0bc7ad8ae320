"""Perfect reformulation: compile a TBox into a UCQ.

After reformulation, evaluating the query directly over the ABox (read as an
interpretation) yields exactly the certain answers over consistent KBs.

The TBox is first normalised:

* ``D ⊑ E1 ⊓ E2`` splits into one rule per conjunct;
* ``D ⊑ ∃R.F`` becomes ``D ⊑ ∃Q``, ``Q ⊑ R`` and ``∃Q⁻ ⊑ F`` for a fresh
  internal role ``Q`` (names starting with ``_``), recursively in ``F``;
* negative right-hand sides (``¬A``, ``¬∃R``) are set aside for the
  consistency check.

Saturation then applies, to every disjunct and breadth first:

* ``A(t)`` -> ``atoms(D, t)`` for each rule ``D ⊑ A``;
* ``P(s, t)`` -> ``S(s, t)`` for each sub-role ``S ⊑* P`` (inverses swap arguments);
* ``P(s, u)`` with ``u`` unbound -> ``atoms(D, s)`` for each rule ``D ⊑ ∃P``
  (symmetrically for ``∃P⁻``);
* reduce: unify two atoms over the same predicate, if that predicate can be rewritten.

A qualified existential on the right is therefore handled by rewriting the
fresh-role atoms away. Disjuncts still mentioning an internal name cannot
match any ABox and are dropped from the result.

Generated disjuncts are condensed (redundant atoms on unbound variables are
removed) and deduplicated up to variable renaming, which keeps the set finite.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from itertools import count
from typing import Iterable, Iterator, Mapping

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
)
from .core.kb import tbox_signature
from .core.query import Atom, ConjunctiveQuery, Const, Term, UnionQuery, Var
from .errors import BudgetExceeded

DEFAULT_LIMIT = 10**6
INTERNAL_PREFIX = "_"


def is_internal(name: str) -> bool:
    return name.startswith(INTERNAL_PREFIX)


# -- role hierarchy ----------------------------------------------------------


@dataclass(frozen=True)
class RoleHierarchy:
    """For each role, every role entailed to be included in it (itself included)."""

    sub: Mapping[Role, frozenset[Role]]

    def sub_roles(self, r: Role) -> frozenset[Role]:
        return self.sub.get(r, frozenset({r}))

    def super_roles(self, r: Role) -> set[Role]:
        return {s for s, subs in self.sub.items() if r in subs} | {r}


def role_closure(tbox: Iterable[Axiom]) -> RoleHierarchy:
    """Reflexive-transitive closure of the role inclusions, closed under inversion."""
    tbox = list(tbox)
    _, names = tbox_signature(tbox)
    roles = {Role(n, inv) for n in names for inv in (False, True)}
    up: dict[Role, set[Role]] = defaultdict(set)
    for ax in tbox:
        if isinstance(ax, RoleInclusion):
            up[ax.lhs].add(ax.rhs)
            up[ax.lhs.inverse()].add(ax.rhs.inverse())
    sub: dict[Role, set[Role]] = {r: {r} for r in roles}
    for r in roles:
        stack, seen = [r], {r}
        while stack:
            for s in up[stack.pop()]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        for s in seen:
            sub[s].add(r)
    return RoleHierarchy({r: frozenset(s) for r, s in sub.items()})


# -- normalisation -----------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    """``body ⊑ head`` with a left-concept body and a basic head."""

    body: Concept
    head: Concept
    source: Axiom


@dataclass
class NormalTBox:
    positive: list[Rule]
    negative: list[Rule]
    role_inclusions: list[RoleInclusion]
    hierarchy: RoleHierarchy
    by_concept: dict[str, list[Rule]] = field(default_factory=dict)
    by_exists: dict[Role, list[Rule]] = field(default_factory=dict)
    generated: frozenset[str] = frozenset()
    rewritable: frozenset[str] = frozenset()


def normalize_tbox(tbox: Iterable[Axiom]) -> NormalTBox:
    positive: list[Rule] = []
    negative: list[Rule] = []
    inclusions: list[RoleInclusion] = []
    fresh = count(1)

    def split(body: Concept, head: Concept, source: Axiom):
        if isinstance(head, (Atomic, Exists)):
            positive.append(Rule(body, head, source))
        elif isinstance(head, Conj):
            split(body, head.left, source)
            split(body, head.right, source)
        elif isinstance(head, (NegAtomic, NegExists)):
            negative.append(Rule(body, head, source))
        elif isinstance(head, ExistsQualified):
            q = Role(f"{INTERNAL_PREFIX}r{next(fresh)}")
            positive.append(Rule(body, Exists(q), source))
            inclusions.append(RoleInclusion(q, head.role))
            split(Exists(q.inverse()), head.filler, source)
        else:
            raise TypeError(f"not a concept: {head!r}")

    for ax in sorted(tbox, key=axiom_key):
        if isinstance(ax, RoleInclusion):
            inclusions.append(ax)
        else:
            split(ax.lhs, ax.rhs, ax)

    hierarchy = role_closure(inclusions + [ConceptInclusion(r.body, r.head) for r in positive + negative])
    nt = NormalTBox(positive, negative, inclusions, hierarchy)
    for r in positive:
        if isinstance(r.head, Atomic):
            nt.by_concept.setdefault(r.head.name, []).append(r)
        else:
            nt.by_exists.setdefault(r.head.role, []).append(r)
    generated = set()
    for role in nt.by_exists:
        generated |= {s.name for s in hierarchy.super_roles(role)}
    nt.generated = frozenset(generated)
    proper_sub = {r.name for r, subs in hierarchy.sub.items() if len(subs) > 1}
    nt.rewritable = frozenset(nt.by_concept) | nt.generated | proper_sub
    return nt


# -- disjunct manipulation ---------------------------------------------------


def role_atom(r: Role, s: Term, t: Term) -> Atom:
    return Atom(r.name, (t, s) if r.inverted else (s, t))


def atoms_of(c: Concept, t: Term, fresh: Iterator[int]) -> set[Atom]:
    """Atoms of left concept ``c`` anchored at ``t``; each ``∃R`` gets a fresh variable."""
    if isinstance(c, Atomic):
        return {Atom(c.name, (t,))}
    if isinstance(c, Exists):
        return {role_atom(c.role, t, Var(f"{INTERNAL_PREFIX}v{next(fresh)}"))}
    if isinstance(c, Conj):
        return atoms_of(c.left, t, fresh) | atoms_of(c.right, t, fresh)
    raise TypeError(f"not a left concept: {c!r}")


def _occurrences(cq: ConjunctiveQuery) -> Counter:
    return Counter(t for a in cq.atoms for t in a.args if isinstance(t, Var))


def _unbound_test(cq: ConjunctiveQuery):
    counts = _occurrences(cq)
    head = {t for t in cq.head if isinstance(t, Var)}
    return lambda t: isinstance(t, Var) and t not in head and counts[t] == 1


def condense(cq: ConjunctiveQuery) -> ConjunctiveQuery:
    """Drop atoms that fold onto another atom by renaming only their unbound variables."""
    atoms = set(cq.atoms)
    while True:
        unbound = _unbound_test(ConjunctiveQuery(cq.head, frozenset(atoms)))
        victim = None
        for g in sorted(atoms, key=Atom.sort_key):
            others = [a for a in atoms if a.pred == g.pred and a != g]
            if not others:
                continue
            if len(g.args) == 1:
                redundant = unbound(g.args[0])
            else:
                s, t = g.args
                redundant = (
                    (unbound(s) and unbound(t))
                    or (unbound(t) and any(a.args[0] == s for a in others))
                    or (unbound(s) and any(a.args[1] == t for a in others))
                )
            if redundant:
                victim = g
                break
        if victim is None:
            return ConjunctiveQuery(cq.head, frozenset(atoms))
        atoms.discard(victim)


def _mgu(a: Atom, b: Atom, head: tuple[Term, ...]) -> dict[Term, Term] | None:
    parent: dict[Term, Term] = {}

    def find(t):
        while parent.get(t, t) != t:
            t = parent[t]
        return t

    rank = {t: k for k, t in enumerate(head) if isinstance(t, Var)}

    def better(x, y):
        # constants, then answer variables, then by name
        kx = (0, x.name) if isinstance(x, Const) else (1, rank[x], "") if x in rank else (2, x.name)
        ky = (0, y.name) if isinstance(y, Const) else (1, rank[y], "") if y in rank else (2, y.name)
        return kx <= ky

    for s, t in zip(a.args, b.args):
        rs, rt = find(s), find(t)
        if rs == rt:
            continue
        if isinstance(rs, Const) and isinstance(rt, Const):
            return None
        if better(rs, rt):
            parent[rt] = rs
        else:
            parent[rs] = rt
    return {t: find(t) for t in parent}


def substitute(cq: ConjunctiveQuery, sigma: Mapping[Term, Term]) -> ConjunctiveQuery:
    return ConjunctiveQuery(
        tuple(sigma.get(t, t) for t in cq.head),
        frozenset(Atom(a.pred, tuple(sigma.get(t, t) for t in a.args)) for a in cq.atoms),
    )


def _steps(cq: ConjunctiveQuery, nt: NormalTBox, fresh) -> Iterator[tuple[str, ConjunctiveQuery]]:
    from .syntax.printer import print_axiom

    unbound = _unbound_test(cq)
    ordered = cq.sorted_atoms()
    for g in ordered:
        rest = cq.atoms - {g}
        if len(g.args) == 1:
            for rule in nt.by_concept.get(g.pred, ()):
                new = rest | atoms_of(rule.body, g.args[0], fresh)
                yield f"{g} by {print_axiom(rule.source)}", ConjunctiveQuery(cq.head, new)
            continue
        s, t = g.args
        role = Role(g.pred)
        for sub in sorted(nt.hierarchy.sub_roles(role)):
            if sub != role:
                yield f"{g} by role inclusion {sub} ⊑* {role}", ConjunctiveQuery(cq.head, rest | {role_atom(sub, s, t)})
        for anchor, direction in ((s, role), (t, role.inverse())):
            other = t if anchor is s else s
            if unbound(other):
                for rule in nt.by_exists.get(direction, ()):
                    new = rest | atoms_of(rule.body, anchor, fresh)
                    yield f"{g} by {print_axiom(rule.source)}", ConjunctiveQuery(cq.head, new)
    for k, a in enumerate(ordered):
        if a.pred not in nt.rewritable:
            continue
        for b in ordered[k + 1:]:
            if a.pred != b.pred:
                continue
            sigma = _mgu(a, b, cq.head)
            if sigma is not None:
                yield f"reduce {a}, {b}", substitute(cq, sigma)


# -- deduplication up to renaming -------------------------------------------


def _shape(cq: ConjunctiveQuery) -> tuple:
    counts = _occurrences(cq)
    head_pos = {}
    for k, t in enumerate(cq.head):
        if isinstance(t, Var):
            head_pos.setdefault(t, k)

    def code(t):
        if isinstance(t, Const):
            return (0, t.name)
        if t in head_pos:
            return (1, str(head_pos[t]))
        return (2, str(counts[t]))

    head = tuple(code(t) for t in cq.head)
    return head, tuple(sorted((a.pred, tuple(code(t) for t in a.args)) for a in cq.atoms))


def _head_mapping(a: ConjunctiveQuery, b: ConjunctiveQuery) -> dict[Term, Term] | None:
    if a.arity != b.arity:
        return None
    mapping: dict[Term, Term] = {}
    for ta, tb in zip(a.head, b.head):
        if isinstance(ta, Const):
            if ta != tb:
                return None
        elif mapping.setdefault(ta, tb) != tb:
            return None
    return mapping


def _extend_atoms(a: ConjunctiveQuery, b: ConjunctiveQuery, mapping: dict, injective: bool) -> bool:
    """Can ``mapping`` extend to send every atom of ``a`` onto an atom of ``b``?"""
    by_pred: dict[str, list[Atom]] = defaultdict(list)
    for h in b.atoms:
        by_pred[h.pred].append(h)
    todo = sorted(a.atoms, key=lambda g: (len(by_pred[g.pred]), g.sort_key()))

    def extend(m, used, xs, ys):
        m, used = dict(m), set(used)
        for x, y in zip(xs, ys):
            if isinstance(x, Const):
                if x != y:
                    return None
            elif x in m:
                if m[x] != y:
                    return None
            elif injective and (y in used or isinstance(y, Const)):
                return None
            else:
                m[x] = y
                used.add(y)
        return m, used

    def search(k, m, used):
        if k == len(todo):
            return True
        g = todo[k]
        for h in by_pred[g.pred]:
            nxt = extend(m, used, g.args, h.args)
            if nxt is not None and search(k + 1, *nxt):
                return True
        return False

    return search(0, mapping, set(mapping.values()))


def isomorphic(a: ConjunctiveQuery, b: ConjunctiveQuery) -> bool:
    """Equal up to a renaming of variables that fixes answer positions."""
    if len(a.atoms) != len(b.atoms):
        return False
    mapping = _head_mapping(a, b)
    if mapping is None or any(isinstance(t, Const) for t in mapping.values()):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    return _extend_atoms(a, b, mapping, injective=True)


def subsumes(general: ConjunctiveQuery, specific: ConjunctiveQuery) -> bool:
    """True if ``general`` maps homomorphically into ``specific``, answers to answers.

    Then every answer of ``specific`` is an answer of ``general``.
    """
    if not general.predicates() <= specific.predicates():
        return False
    mapping = _head_mapping(general, specific)
    return mapping is not None and _extend_atoms(general, specific, mapping, injective=False)


class DisjunctSet:
    """Insertion-ordered set of disjuncts modulo variable renaming."""

    def __init__(self):
        self._buckets: dict[tuple, list[ConjunctiveQuery]] = defaultdict(list)
        self.items: list[ConjunctiveQuery] = []
        self._preds: list[set[str]] = []

    def add(self, cq: ConjunctiveQuery) -> bool:
        bucket = self._buckets[_shape(cq)]
        if any(isomorphic(cq, other) for other in bucket):
            return False
        bucket.append(cq)
        self.items.append(cq)
        self._preds.append(cq.predicates())
        return True

    def subsumed(self, cq: ConjunctiveQuery) -> bool:
        preds = cq.predicates()
        return any(p <= preds and subsumes(other, cq) for p, other in zip(self._preds, self.items))

    def __contains__(self, cq: ConjunctiveQuery) -> bool:
        return any(isomorphic(cq, other) for other in self._buckets.get(_shape(cq), ()))

    def __len__(self):
        return len(self.items)


# -- saturation --------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    before: ConjunctiveQuery
    rule: str
    after: ConjunctiveQuery


@dataclass(frozen=True)
class RewriteTrace:
    inputs: tuple[ConjunctiveQuery, ...]
    steps: tuple[TraceStep, ...]

    def replay(self) -> DisjunctSet:
        """Every disjunct reachable from the inputs through the recorded steps."""
        reached = DisjunctSet()
        for cq in self.inputs:
            reached.add(cq)
        for step in self.steps:
            if step.before not in reached:
                raise ValueError(f"trace step starts from an unreached disjunct: {step.before}")
            reached.add(step.after)
        return reached


def _dead(cq: ConjunctiveQuery) -> bool:
    """An internal atom ``_r(s, t)`` only disappears once ``t`` is unbound; a constant or
    answer variable there never will be."""
    head = set(cq.head)
    return any(is_internal(a.pred) and (isinstance(a.args[1], Const) or a.args[1] in head) for a in cq.atoms)


def saturate(
    disjuncts: Iterable[ConjunctiveQuery],
    nt: NormalTBox,
    limit: int = DEFAULT_LIMIT,
    steps: list[TraceStep] | None = None,
) -> list[ConjunctiveQuery]:
    """Closure of ``disjuncts`` under the rewriting rules, internal names included.

    A rewritten disjunct that some stored disjunct subsumes is discarded; this
    loses nothing because the subsumer can replay the same step after
    unifying the atoms mapped together. Results of ``reduce`` are therefore
    exempt from the check, as they are always subsumed by their parent. Only
    predicates some rule rewrites need that unification, which is why
    ``reduce`` is limited to them.
    """
    disjuncts = list(disjuncts)
    used = [int(v.name[len(INTERNAL_PREFIX) + 1:]) for cq in disjuncts for v in cq.variables()
            if re.fullmatch(rf"{INTERNAL_PREFIX}v\d+", v.name)]
    fresh = count(max(used, default=0) + 1)
    store = DisjunctSet()
    queue: deque[ConjunctiveQuery] = deque()
    for cq in disjuncts:
        if store.add(cq):
            queue.append(cq)
    while queue:
        cq = queue.popleft()
        for label, new in _steps(cq, nt, fresh):
            new = condense(new)
            if _dead(new):
                continue
            if not label.startswith("reduce") and store.subsumed(new):
                continue
            if store.add(new):
                queue.append(new)
                if steps is not None:
                    steps.append(TraceStep(cq, label, new))
                if len(store) > limit:
                    raise BudgetExceeded(f"rewriting produced more than {limit} disjuncts")
    return store.items


def tidy(cq: ConjunctiveQuery) -> ConjunctiveQuery:
    """Rename internal fresh variables to readable ``u1, u2, ...`` names."""
    taken = {v.name for v in cq.variables()}
    sigma: dict[Term, Term] = {}
    names = (f"u{k}" for k in count(1))
    for v in sorted(cq.variables()):
        if is_internal(v.name):
            name = next(n for n in names if n not in taken)
            sigma[v] = Var(name)
    return substitute(cq, sigma) if sigma else cq


def mentions_internal(cq: ConjunctiveQuery) -> bool:
    return any(is_internal(a.pred) for a in cq.atoms)


def minimize(disjuncts: list[ConjunctiveQuery], protected: int = 0) -> list[ConjunctiveQuery]:
    """Drop disjuncts subsumed by another one; the first ``protected`` are always kept.

    Of two mutually subsuming disjuncts the earlier one survives.
    """
    kept = []
    for k, d in enumerate(disjuncts):
        if k < protected:
            kept.append(d)
            continue
        redundant = False
        for m, e in enumerate(disjuncts):
            if m != k and subsumes(e, d) and (m < k or not subsumes(d, e)):
                redundant = True
                break
        if not redundant:
            kept.append(d)
    return kept


def reformulate(
    tbox: Iterable[Axiom], query: UnionQuery, limit: int = DEFAULT_LIMIT
) -> tuple[UnionQuery, RewriteTrace]:
    nt = normalize_tbox(tbox)
    steps: list[TraceStep] = []
    items = saturate(query.disjuncts, nt, limit, steps)
    given = DisjunctSet()
    for cq in query.disjuncts:
        given.add(cq)
    final = [cq for cq in items if not mentions_internal(cq)]
    kept = tuple(tidy(cq) for cq in minimize(final, len(given)))
    trace = RewriteTrace(
        tuple(tidy(cq) for cq in query.disjuncts),
        tuple(TraceStep(tidy(s.before), s.rule, tidy(s.after)) for s in steps),
    )
    return UnionQuery(kept, query.name), trace


def perfect_reformulation(tbox: Iterable[Axiom], query: UnionQuery, limit: int = DEFAULT_LIMIT) -> UnionQuery:
    """Rewrite ``query`` w.r.t. ``tbox`` so that plain evaluation over the ABox gives certain answers.

    Negative inclusions play no part here; see ``answering.is_consistent``.
    """
    return reformulate(tbox, query, limit)[0]
