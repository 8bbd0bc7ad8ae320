"""DL-Lite simulations between finite interpretations and closure checks.

A pair ``(X, d')`` relates a non-empty subset ``X`` of the source domain to
one element ``d'`` of the target. Clauses, for every atomic concept ``A`` and
every role ``R`` (inverses included):

left
    (A)       ``X ⊆ A^I``  implies ``d' ∈ A^J``
    (∃R)      every ``d ∈ X`` has an R-successor implies ``d'`` has one
right
    (¬A)      ``X ∩ A^I = ∅`` implies ``d' ∉ A^J``
    (¬∃R)     no ``d ∈ X`` has an R-successor implies ``d'`` has none
    (∃R.C)    every ``d ∈ X`` has an R-successor implies: for every minimal
              set ``Y`` holding a successor of each ``d``, some R-successor
              ``e'`` of ``d'`` has ``(Y, e')`` in the relation

``combined`` is the union of a left and a right simulation. ``full`` asks
every pair to satisfy all five clauses; it is the kind that preserves right
concepts mixing positive and negative parts, such as ``∃R.A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .core.concepts import (
    Concept,
    Role,
    is_left,
    is_negative_only,
)
from .core.fo import Formula, eval_fo, free_vars, fo_models
from .core.interpretation import Interpretation, eval_concept
from .errors import BudgetExceeded, ValidationError

KINDS = ("left", "right", "combined", "full")
DEFAULT_CAP = 12

Pair = tuple[frozenset[str], str]


def pair_key(p: Pair):
    return (len(p[0]), sorted(p[0]), p[1])


def format_pair(p: Pair) -> str:
    return f"<{{{', '.join(sorted(p[0]))}}}, {p[1]}>"


@dataclass(frozen=True)
class SimulationRelation:
    kind: str
    pairs: frozenset[Pair]
    # left and right parts of a combined relation, when known
    components: tuple[frozenset[Pair], frozenset[Pair]] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown simulation kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "pairs", frozenset((frozenset(x), d) for x, d in self.pairs))

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs, key=pair_key)

    def __contains__(self, p) -> bool:
        return (frozenset(p[0]), p[1]) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)


@dataclass(frozen=True)
class Violation:
    pair: Pair
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{format_pair(self.pair)} violates {self.clause}: {self.detail}"


@dataclass(frozen=True)
class SimulationCheck:
    valid: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.valid


class _Pairing:
    """Bitmask view of a source/target interpretation pair over their joint signature."""

    def __init__(self, i: Interpretation, j: Interpretation):
        self.i, self.j = i, j
        self.src = i.sorted_domain()
        self.tgt = j.sorted_domain()
        self.bit = {e: 1 << k for k, e in enumerate(self.src)}
        ci, ri = i.signature()
        cj, rj = j.signature()
        self.concepts = sorted(ci | cj)
        self.roles = [Role(n, inv) for n in sorted(ri | rj) for inv in (False, True)]
        self.ext = {a: self.mask(i.concept(a)) for a in self.concepts}
        self.ext_j = {a: j.concept(a) for a in self.concepts}
        self.succ_i: dict[Role, dict[str, int]] = {}
        self.succ_j: dict[Role, dict[str, list[str]]] = {}
        self.dom_i: dict[Role, int] = {}
        for r in self.roles:
            si = {e: 0 for e in self.src}
            for a, b in i.role(r.name):
                s, t = (b, a) if r.inverted else (a, b)
                si[s] |= self.bit[t]
            self.succ_i[r] = si
            self.dom_i[r] = self.mask(e for e in self.src if si[e])
            sj: dict[str, set[str]] = {e: set() for e in self.tgt}
            for a, b in j.role(r.name):
                s, t = (b, a) if r.inverted else (a, b)
                sj[s].add(t)
            self.succ_j[r] = {e: sorted(v) for e, v in sj.items()}
        self._hitting: dict[tuple[Role, int], list[int]] = {}

    def mask(self, elems: Iterable[str]) -> int:
        m = 0
        for e in elems:
            m |= self.bit[e]
        return m

    def members(self, x: int) -> frozenset[str]:
        return frozenset(e for e in self.src if x & self.bit[e])

    def hitting_sets(self, r: Role, x: int) -> list[int]:
        """Minimal sets meeting the R-successors of every element of ``x``."""
        key = (r, x)
        if key not in self._hitting:
            families = sorted({self.succ_i[r][e] for e in self.src if x & self.bit[e]})
            universe = 0
            for f in families:
                universe |= f
            elems = [b for b in (1 << k for k in range(len(self.src))) if universe & b]
            found: list[int] = []
            for size in range(1, len(elems) + 1):
                for combo in combinations(elems, size):
                    y = sum(combo)
                    if any(y & m == m for m in found):
                        continue
                    if all(y & f for f in families):
                        found.append(y)
            self._hitting[key] = found
        return self._hitting[key]

    # -- clauses; each returns (clause, detail) pairs for failures
    def left_failures(self, x: int, d: str) -> list[tuple[str, str]]:
        out = []
        for a in self.concepts:
            if x & self.ext[a] == x and d not in self.ext_j[a]:
                out.append(("(A)", f"X is inside {a} but {d} is not"))
        for r in self.roles:
            if x & self.dom_i[r] == x and not self.succ_j[r][d]:
                out.append(("(exists R)", f"every element of X has a {r}-successor but {d} has none"))
        return out

    def right_static_failures(self, x: int, d: str) -> list[tuple[str, str]]:
        out = []
        for a in self.concepts:
            if not x & self.ext[a] and d in self.ext_j[a]:
                out.append(("(not A)", f"X avoids {a} but {d} is in it"))
        for r in self.roles:
            if not x & self.dom_i[r] and self.succ_j[r][d]:
                out.append(("(not exists R)", f"no element of X has a {r}-successor but {d} has one"))
        return out

    def demand_failures(self, x: int, d: str, alive) -> list[tuple[str, str]]:
        out = []
        for r in self.roles:
            if x & self.dom_i[r] != x:
                continue
            targets = self.succ_j[r][d]
            for y in self.hitting_sets(r, x):
                if not any(alive(y, e) for e in targets):
                    ys = ", ".join(sorted(self.members(y)))
                    out.append(("(exists R . C)", f"no {r}-successor of {d} is paired with {{{ys}}}"))
                    break
        return out

    def static_failures(self, kind: str, x: int, d: str) -> list[tuple[str, str]]:
        if kind == "left":
            return self.left_failures(x, d)
        if kind == "right":
            return self.right_static_failures(x, d)
        return self.left_failures(x, d) + self.right_static_failures(x, d)

    def greatest(self, kind: str, candidates: Iterable[tuple[int, str]]) -> set[tuple[int, str]]:
        """Largest subset of ``candidates`` closed under the clauses of ``kind``."""
        alive = {p for p in candidates if not self.static_failures(kind, *p)}
        if kind == "left":
            return alive
        changed = True
        while changed:
            changed = False
            for p in sorted(alive):
                if p in alive and self.demand_failures(*p, lambda y, e: (y, e) in alive):
                    alive.discard(p)
                    changed = True
        return alive

    def encode(self, pairs: Iterable[Pair]) -> set[tuple[int, str]]:
        out = set()
        for x, d in pairs:
            if not x:
                raise ValidationError("simulation pair with an empty source set")
            stray = set(x) - set(self.src)
            if stray:
                raise ValidationError(f"pair mentions {sorted(stray)} outside the source domain")
            if d not in self.j.domain:
                raise ValidationError(f"pair target {d!r} is outside the target domain")
            out.add((self.mask(x), d))
        return out

    def decode(self, pairs: Iterable[tuple[int, str]]) -> frozenset[Pair]:
        return frozenset((self.members(x), d) for x, d in pairs)


def _check_cap(i: Interpretation, cap: int):
    if len(i.domain) > cap:
        raise BudgetExceeded(
            f"source domain has {len(i.domain)} elements; the simulation cap is {cap} (raise it with --cap)"
        )


def maximal_simulation(
    i: Interpretation, j: Interpretation, kind: str = "combined", cap: int = DEFAULT_CAP
) -> SimulationRelation:
    """Union of all simulations of ``kind`` from ``i`` to ``j`` (a greatest fixpoint)."""
    if kind not in KINDS:
        raise ValidationError(f"unknown simulation kind {kind!r}; expected one of {', '.join(KINDS)}")
    _check_cap(i, cap)
    ctx = _Pairing(i, j)
    everything = [(x, d) for x in range(1, 1 << len(ctx.src)) for d in ctx.tgt]
    if kind == "combined":
        left = ctx.decode(ctx.greatest("left", everything))
        right = ctx.decode(ctx.greatest("right", everything))
        return SimulationRelation("combined", left | right, (left, right))
    return SimulationRelation(kind, ctx.decode(ctx.greatest(kind, everything)))


def check_simulation(b: SimulationRelation, i: Interpretation, j: Interpretation) -> SimulationCheck:
    """Verify every clause of ``b.kind`` on every pair of ``b``.

    For ``combined``, a pair passes when it lies in the greatest left or the
    greatest right simulation contained in ``b``.
    """
    ctx = _Pairing(i, j)
    pairs = ctx.encode(b.pairs)
    violations: list[Violation] = []

    def report(p, fails):
        pair = (ctx.members(p[0]), p[1])
        violations.extend(Violation(pair, c, msg) for c, msg in fails)

    if b.kind == "combined":
        left = ctx.greatest("left", pairs)
        right = ctx.greatest("right", pairs)
        for p in sorted(pairs - left - right, key=lambda p: pair_key((ctx.members(p[0]), p[1]))):
            fails = ctx.left_failures(*p) + ctx.right_static_failures(*p)
            fails += ctx.demand_failures(*p, lambda y, e: (y, e) in right)
            report(p, fails)
    else:
        for p in sorted(pairs, key=lambda p: pair_key((ctx.members(p[0]), p[1]))):
            fails = ctx.static_failures(b.kind, *p)
            if b.kind != "left":
                fails += ctx.demand_failures(*p, lambda y, e: (y, e) in pairs)
            report(p, fails)
    return SimulationCheck(not violations, tuple(violations))


def dl_similar(i: Interpretation, j: Interpretation, kind: str = "combined", cap: int = DEFAULT_CAP) -> bool:
    return bool(maximal_simulation(i, j, kind, cap))


# -- closure -----------------------------------------------------------------------


def kind_for(c: Concept) -> str:
    """Simulation kind that preserves ``c``."""
    if is_left(c):
        return "left"
    if is_negative_only(c):
        return "right"
    return "full"


_ACCEPTS = {"left": {"left", "full"}, "right": {"right", "full"}, "full": {"full"}}


@dataclass(frozen=True)
class Counterexample:
    subject: str
    x: frozenset[str] | None
    target: str | None
    clause: str
    source: Interpretation | None = field(default=None, compare=False, repr=False)
    target_interpretation: Interpretation | None = field(default=None, compare=False, repr=False)

    def describe(self) -> str:
        if self.x is None:
            return f"{self.subject}: {self.clause}"
        return f"{self.subject}: X = {{{', '.join(sorted(self.x))}}}, target {self.target}: {self.clause}"


@dataclass(frozen=True)
class ClosureReport:
    verdict: bool
    failures: tuple[Counterexample, ...] = ()

    def __post_init__(self):
        if self.verdict == bool(self.failures):
            raise ValidationError("closure verdict must be false exactly when a counterexample exists")

    @property
    def counterexample(self) -> Counterexample | None:
        return self.failures[0] if self.failures else None

    def __bool__(self) -> bool:
        return self.verdict


def concept_preserved(c: Concept, i: Interpretation, j: Interpretation, b: SimulationRelation) -> ClosureReport:
    """For each pair ``(X, d')`` of ``b`` with ``X ⊆ C^I``, is ``d' ∈ C^J``?"""
    from .syntax.printer import print_concept

    need = kind_for(c)
    if b.kind not in _ACCEPTS[need]:
        raise ValidationError(f"{print_concept(c)} needs a {need} simulation, got a {b.kind} one")
    ci, cj = eval_concept(c, i), eval_concept(c, j)
    failures = tuple(
        Counterexample(print_concept(c), x, d, f"X is inside the concept in the source but {d} is not in the target", i, j)
        for x, d in b.sorted_pairs()
        if x <= ci and d not in cj
    )
    return ClosureReport(not failures, failures)


def fo_closed_under(f: Formula, i: Interpretation, j: Interpretation, b: SimulationRelation) -> ClosureReport:
    """Pointwise transfer of ``f`` along ``b``; sentences transfer whole-structure."""
    from .syntax.printer import print_formula

    fv = sorted(free_vars(f))
    text = print_formula(f)
    if len(fv) > 1:
        raise ValidationError(f"formula has free variables {', '.join(fv)}; at most one is allowed")
    if not fv:
        if b and fo_models(i, f) and not fo_models(j, f):
            return ClosureReport(False, (Counterexample(text, None, None, "source satisfies the sentence, target does not", i, j),))
        return ClosureReport(True)
    (x,) = fv
    failures = []
    for xs, d in b.sorted_pairs():
        if all(eval_fo(f, i, {x: e}) for e in xs) and not eval_fo(f, j, {x: d}):
            failures.append(Counterexample(text, xs, d, f"every element of X satisfies it but {d} does not", i, j))
    return ClosureReport(not failures, tuple(failures))


# -- bounded equivalence --------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    direction: str | None
    witness: Interpretation | None
    models_checked: int

    def __bool__(self) -> bool:
        return self.equivalent


def bounded_equivalence(
    f: Formula,
    c: Concept,
    signature: tuple[Sequence[str], Sequence[str]],
    max_domain: int,
    budget: int = 10**6,
) -> EquivalenceVerdict:
    """Look for a finite interpretation separating ``f`` from ``c``.

    ``f |= c`` fails on a model of ``f`` where ``c`` is empty; ``c |= f`` fails
    where ``c`` is non-empty and ``f`` is false. An open formula is read with
    its free variable existentially closed. Domains contain the constants of
    ``f`` plus fresh ``e1, e2, ...``. Finding nothing up to ``max_domain`` is
    evidence, not proof, of equivalence.
    """
    from .core.fo import constants_of
    from .generate import count_interpretations, interpretations_over

    concepts, roles = sorted(signature[0]), sorted(signature[1])
    consts = sorted(constants_of(f))
    sizes = range(max(1, len(consts)), max_domain + 1)
    total = sum(count_interpretations(len(concepts), len(roles), n) for n in sizes)
    if total > budget:
        raise BudgetExceeded(f"{total} interpretations to check exceed the budget of {budget}")
    checked = 0
    for n in sizes:
        elems = consts + [f"e{k}" for k in range(1, n - len(consts) + 1)]
        for i in interpretations_over(concepts, roles, elems):
            checked += 1
            sat_f = fo_models(i, f)
            nonempty = bool(eval_concept(c, i))
            if sat_f and not nonempty:
                return EquivalenceVerdict(False, "formula does not entail concept", i, checked)
            if nonempty and not sat_f:
                return EquivalenceVerdict(False, "concept does not entail formula", i, checked)
    return EquivalenceVerdict(True, None, None, checked)
