"""Pretty-printers; ``parse_x(print_x(v))`` is structurally equal to ``v``."""

from __future__ import annotations

from ..core.concepts import (
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
    conjuncts,
)
from ..core.fo import FoAnd, FoAtom, FoExists, FoForall, FoImplies, FoNot, FoOr, Formula
from ..core.graph import Graph
from ..core.interpretation import Interpretation
from ..core.kb import KnowledgeBase
from ..core.query import ConjunctiveQuery, Const, Term, UnionQuery


def print_role(r: Role) -> str:
    return f"inv({r.name})" if r.inverted else r.name


def print_concept(c: Concept) -> str:
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, Exists):
        return f"exists {print_role(c.role)}"
    if isinstance(c, NegAtomic):
        return f"not {c.name}"
    if isinstance(c, NegExists):
        return f"not exists {print_role(c.role)}"
    if isinstance(c, ExistsQualified):
        filler = print_concept(c.filler)
        if isinstance(c.filler, Conj):
            filler = f"({filler})"
        return f"exists {print_role(c.role)} . {filler}"
    if isinstance(c, Conj):
        return " and ".join(print_concept(x) for x in conjuncts(c))
    raise TypeError(f"not a concept: {c!r}")


def print_axiom(ax: Axiom) -> str:
    if isinstance(ax, ConceptInclusion):
        return f"{print_concept(ax.lhs)} subClassOf {print_concept(ax.rhs)}"
    return f"{print_role(ax.lhs)} subRoleOf {print_role(ax.rhs)}"


def print_kb(kb: KnowledgeBase) -> str:
    lines = [print_axiom(ax) for ax in kb.sorted_tbox()]
    loose = sorted(kb.constants - {c for a in kb.abox for c in a.args})
    if loose:
        lines.append("individuals: " + " ".join(loose))
    lines += [str(a) for a in sorted(kb.abox)]
    return "".join(line + "\n" for line in lines)


def print_term(t: Term) -> str:
    return f'"{t.name}"' if isinstance(t, Const) else t.name


def print_disjunct(d: ConjunctiveQuery, name: str = "q") -> str:
    head = ", ".join(print_term(t) for t in d.head)
    body = ", ".join(f"{a.pred}({', '.join(print_term(t) for t in a.args)})" for a in d.sorted_atoms())
    return f"{name}({head}) :- {body or 'true'}"


def print_query(q: UnionQuery) -> str:
    return "".join(print_disjunct(d, q.name) + "\n" for d in q.disjuncts)


def print_interpretation(i: Interpretation) -> str:
    lines = ["domain: " + " ".join(i.sorted_domain())]
    for name in sorted(i.concepts):
        lines.append(f"concept {name} = {{{', '.join(sorted(i.concepts[name]))}}}")
    for name in sorted(i.roles):
        pairs = ", ".join(f"({a}, {b})" for a, b in sorted(i.roles[name]))
        lines.append(f"role {name} = {{{pairs}}}")
    return "".join(line + "\n" for line in lines)


def print_relation(pairs) -> str:
    ordered = sorted(pairs, key=lambda p: (len(p[0]), sorted(p[0]), p[1]))
    return "".join(f"<{{{', '.join(sorted(x))}}}, {d}>\n" for x, d in ordered)


def print_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.sorted_vertices())]
    lines += [f"{a} {b}" for a, b in g.sorted_edges()]
    return "".join(line + "\n" for line in lines)


_PREC = {FoImplies: 1, FoOr: 2, FoAnd: 3, FoNot: 4, FoAtom: 4, FoForall: 0, FoExists: 0}


def print_formula(f: Formula, context: int = 0) -> str:
    if isinstance(f, FoAtom):
        text = f"{f.pred}({', '.join(print_term(t) for t in f.args)})"
    elif isinstance(f, FoNot):
        text = "not " + print_formula(f.body, 4)
    elif isinstance(f, FoAnd):
        text = f"{print_formula(f.left, 3)} and {print_formula(f.right, 4)}"
    elif isinstance(f, FoOr):
        text = f"{print_formula(f.left, 2)} or {print_formula(f.right, 3)}"
    elif isinstance(f, FoImplies):
        text = f"{print_formula(f.left, 2)} -> {print_formula(f.right, 1)}"
    elif isinstance(f, (FoForall, FoExists)):
        word = "forall" if isinstance(f, FoForall) else "exists"
        text = f"{word} {f.var} . {print_formula(f.body, 0)}"
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({text})" if _PREC[type(f)] < context else text
