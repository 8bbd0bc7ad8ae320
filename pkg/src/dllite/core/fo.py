"""A small first-order fragment: atoms, connectives, and quantifiers over a finite domain.

No equality. Constants denote themselves, so an atom over a constant that is
not in the domain is simply false.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Mapping, Union

from ..errors import ValidationError
from .concepts import Atomic, Concept, Conj, Exists, ExistsQualified, NegAtomic, NegExists, Role
from .interpretation import Interpretation
from .query import Const, Term, Var


@dataclass(frozen=True)
class FoAtom:
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class FoNot:
    body: "Formula"


@dataclass(frozen=True)
class FoAnd:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class FoOr:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class FoImplies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class FoForall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class FoExists:
    var: str
    body: "Formula"


Formula = Union[FoAtom, FoNot, FoAnd, FoOr, FoImplies, FoForall, FoExists]


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, FoAtom):
        return {t.name for t in f.args if isinstance(t, Var)}
    if isinstance(f, FoNot):
        return free_vars(f.body)
    if isinstance(f, (FoAnd, FoOr, FoImplies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (FoForall, FoExists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def constants_of(f: Formula) -> set[str]:
    if isinstance(f, FoAtom):
        return {t.name for t in f.args if isinstance(t, Const)}
    if isinstance(f, FoNot):
        return constants_of(f.body)
    if isinstance(f, (FoAnd, FoOr, FoImplies)):
        return constants_of(f.left) | constants_of(f.right)
    return constants_of(f.body)


def predicates_of(f: Formula) -> dict[str, int]:
    """Predicate name -> arity."""
    if isinstance(f, FoAtom):
        return {f.pred: len(f.args)}
    if isinstance(f, FoNot):
        return predicates_of(f.body)
    if isinstance(f, (FoAnd, FoOr, FoImplies)):
        return {**predicates_of(f.left), **predicates_of(f.right)}
    return predicates_of(f.body)


def _holds(f: Formula, i: Interpretation, v: dict[str, str]) -> bool:
    if isinstance(f, FoAtom):
        vals = tuple(v[t.name] if isinstance(t, Var) else t.name for t in f.args)
        if len(vals) == 1:
            return vals[0] in i.concept(f.pred)
        return vals in i.role(f.pred)
    if isinstance(f, FoNot):
        return not _holds(f.body, i, v)
    if isinstance(f, FoAnd):
        return _holds(f.left, i, v) and _holds(f.right, i, v)
    if isinstance(f, FoOr):
        return _holds(f.left, i, v) or _holds(f.right, i, v)
    if isinstance(f, FoImplies):
        return (not _holds(f.left, i, v)) or _holds(f.right, i, v)
    if isinstance(f, (FoForall, FoExists)):
        test = all if isinstance(f, FoForall) else any
        return test(_holds(f.body, i, {**v, f.var: d}) for d in i.sorted_domain())
    raise TypeError(f"not a formula: {f!r}")


def eval_fo(f: Formula, i: Interpretation, v: Mapping[str, str]) -> bool:
    """Tarskian satisfaction ``i ⊨_v f``; ``v`` must cover every free variable."""
    missing = free_vars(f) - set(v)
    if missing:
        raise ValidationError(f"assignment leaves free variables unassigned: {', '.join(sorted(missing))}")
    return _holds(f, i, dict(v))


def satisfying_elements(f: Formula, i: Interpretation) -> frozenset[str]:
    """Elements satisfying a formula with exactly one free variable."""
    fv = free_vars(f)
    if len(fv) != 1:
        raise ValidationError(f"expected one free variable, found {len(fv)}")
    (x,) = fv
    return frozenset(d for d in i.domain if _holds(f, i, {x: d}))


def fo_models(i: Interpretation, f: Formula) -> bool:
    """``i ⊨ f``: some assignment of the free variables satisfies ``f``."""
    fv = sorted(free_vars(f))
    body = f
    for x in reversed(fv):
        body = FoExists(x, body)
    return _holds(body, i, {})


def _role_atom(r: Role, s: Term, t: Term) -> FoAtom:
    return FoAtom(r.name, (t, s) if r.inverted else (s, t))


def concept_to_fo(c: Concept, var: str = "x") -> Formula:
    """Standard translation into a formula whose only free variable is ``var``."""
    fresh = (f"y{k}" for k in count(1))
    return _translate(c, var, fresh)


def _translate(c: Concept, x: str, fresh) -> Formula:
    if isinstance(c, Atomic):
        return FoAtom(c.name, (Var(x),))
    if isinstance(c, NegAtomic):
        return FoNot(FoAtom(c.name, (Var(x),)))
    if isinstance(c, Exists):
        y = next(fresh)
        return FoExists(y, _role_atom(c.role, Var(x), Var(y)))
    if isinstance(c, NegExists):
        return FoNot(_translate(Exists(c.role), x, fresh))
    if isinstance(c, ExistsQualified):
        y = next(fresh)
        return FoExists(y, FoAnd(_role_atom(c.role, Var(x), Var(y)), _translate(c.filler, y, fresh)))
    if isinstance(c, Conj):
        return FoAnd(_translate(c.left, x, fresh), _translate(c.right, x, fresh))
    raise TypeError(f"not a concept: {c!r}")
