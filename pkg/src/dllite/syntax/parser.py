"""Recursive-descent parsers for the four text formats and for formulas."""

from __future__ import annotations

import re

from ..core.concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Exists,
    ExistsQualified,
    NegAtomic,
    NegExists,
    Role,
    RoleInclusion,
    concept_names,
    conj,
    is_left,
    role_names,
)
from ..core.fo import FoAnd, FoAtom, FoExists, FoForall, FoImplies, FoNot, FoOr, Formula
from ..core.graph import Graph
from ..core.interpretation import Interpretation
from ..core.kb import Assertion, KnowledgeBase
from ..core.query import Atom, ConjunctiveQuery, Const, Term, UnionQuery, Var
from ..errors import ParseError, ValidationError
from .lexer import TokenStream, span_at


def _span_from(ts: TokenStream, first) -> object:
    last = ts.tokens[max(ts.pos - 1, 0)]
    return span_at(ts.text, first.span.start, max(last.span.end, first.span.end))


# -- concepts and roles ------------------------------------------------------


def _role(ts: TokenStream) -> Role:
    if ts.accept("kw", "inv"):
        ts.expect("punct", "(")
        name = ts.expect("upper", what="role name").text
        ts.expect("punct", ")")
        return Role(name, True)
    return Role(ts.expect("upper", what="role name or inv(...)").text)


def _unary_concept(ts: TokenStream) -> Concept:
    if ts.accept("punct", "("):
        c = _concept(ts)
        ts.expect("punct", ")")
        return c
    if ts.accept("kw", "not"):
        if ts.accept("kw", "exists"):
            return NegExists(_role(ts))
        return NegAtomic(ts.expect("upper", what="concept name or 'exists'").text)
    if ts.accept("kw", "exists"):
        r = _role(ts)
        if ts.accept("punct", "."):
            return ExistsQualified(r, _concept(ts))
        return Exists(r)
    return Atomic(ts.expect("upper", what="concept").text)


def _concept(ts: TokenStream) -> Concept:
    first = ts.peek()
    parts = [_unary_concept(ts)]
    while ts.accept("kw", "and"):
        parts.append(_unary_concept(ts))
    if len(parts) > 1 and not all(is_left(p) for p in parts):
        raise ParseError(
            "'and' may only join left concepts (names and unqualified exists)",
            _span_from(ts, first),
        )
    return conj(*parts)


def parse_concept(text: str) -> Concept:
    ts = TokenStream(text)
    ts.skip_newlines()
    c = _concept(ts)
    ts.skip_newlines()
    ts.expect("eof", what="end of concept")
    return c


def parse_role(text: str) -> Role:
    ts = TokenStream(text)
    r = _role(ts)
    ts.expect("eof", what="end of role")
    return r


# -- knowledge bases ---------------------------------------------------------


def _is_role_inclusion(ts: TokenStream) -> bool:
    if ts.at("upper"):
        return ts.peek(1).is_("kw", "subRoleOf")
    if ts.at("kw", "inv"):
        return ts.peek(4).is_("kw", "subRoleOf")
    return False


def _individual(ts: TokenStream) -> str:
    tok = ts.expect("lower", what="individual name")
    if tok.text.startswith("_"):
        raise ts.error("names starting with '_' are reserved for anonymous elements", tok)
    return tok.text


def parse_kb(text: str) -> KnowledgeBase:
    ts = TokenStream(text)
    tbox, abox, constants = [], [], set()
    arities: dict[str, tuple[int, object]] = {}

    def note(name, arity, tok):
        seen = arities.setdefault(name, (arity, tok))
        if seen[0] != arity:
            kind = "concept" if seen[0] == 1 else "role"
            raise ts.error(f"{name} was already used as a {kind}", tok)

    def note_concept(c, tok):
        for n in concept_names(c):
            note(n, 1, tok)
        for n in role_names(c):
            note(n, 2, tok)

    ts.skip_newlines()
    while not ts.at("eof"):
        first = ts.peek()
        if ts.accept("kw", "individuals"):
            ts.expect("punct", ":")
            while ts.at("lower"):
                constants.add(_individual(ts))
                ts.accept("punct", ",")
        elif ts.at("upper") and ts.peek(1).is_("punct", "("):
            pred = ts.next().text
            ts.expect("punct", "(")
            args = [_individual(ts)]
            if ts.accept("punct", ","):
                args.append(_individual(ts))
            ts.expect("punct", ")")
            note(pred, len(args), first)
            abox.append(Assertion(pred, tuple(args)))
        elif _is_role_inclusion(ts):
            lhs = _role(ts)
            ts.expect("kw", "subRoleOf")
            rhs = _role(ts)
            note(lhs.name, 2, first)
            note(rhs.name, 2, first)
            tbox.append(RoleInclusion(lhs, rhs))
        else:
            lhs = _concept(ts)
            lhs_span = _span_from(ts, first)
            if not is_left(lhs):
                why = "a qualified existential" if isinstance(lhs, ExistsQualified) else "a negation"
                raise ParseError(f"{why} is not a left concept and cannot appear before subClassOf", lhs_span)
            ts.expect("kw", "subClassOf")
            rhs = _concept(ts)
            note_concept(lhs, first)
            note_concept(rhs, first)
            tbox.append(ConceptInclusion(lhs, rhs))
        ts.end_statement()
        ts.skip_newlines()
    return KnowledgeBase.of(tbox, abox, constants)


# -- queries -----------------------------------------------------------------


def _term(ts: TokenStream) -> tuple[Term, object]:
    tok = ts.peek()
    if ts.accept("string"):
        return Const(tok.text), tok
    tok = ts.expect("lower", what="variable or quoted constant")
    return Var(tok.text), tok


def parse_query(text: str) -> UnionQuery:
    """Datalog-style rules ``q(x) :- A(x), P(x, y)``; rules sharing a head name form the union."""
    ts = TokenStream(text)
    name = None
    disjuncts = []
    arities: dict[str, int] = {}
    ts.skip_newlines()
    if ts.at("eof"):
        raise ts.error("empty query", expected="a rule 'q(...) :- ...'")
    while not ts.at("eof"):
        head_tok = ts.expect("lower", what="query name")
        if name is None:
            name = head_tok.text
        elif head_tok.text != name:
            raise ts.error(f"all rules must share the head name {name!r}", head_tok)
        ts.expect("punct", "(")
        head: list[tuple[Term, object]] = []
        if not ts.at("punct", ")"):
            head.append(_term(ts))
            while ts.accept("punct", ","):
                head.append(_term(ts))
        ts.expect("punct", ")")
        if disjuncts and len(head) != disjuncts[0].arity:
            raise ParseError(
                f"arity mismatch: this rule has {len(head)} answer terms, the first has {disjuncts[0].arity}",
                _span_from(ts, head_tok),
            )
        ts.expect("punct", ":-")
        atoms = []
        if not ts.accept("kw", "true"):
            while True:
                first = ts.peek()
                pred = ts.expect("upper", what="atom").text
                ts.expect("punct", "(")
                args = [_term(ts)[0]]
                if ts.accept("punct", ","):
                    args.append(_term(ts)[0])
                ts.expect("punct", ")")
                if arities.setdefault(pred, len(args)) != len(args):
                    raise ParseError(f"{pred} used with different arities", _span_from(ts, first))
                atoms.append(Atom(pred, tuple(args)))
                if not ts.accept("punct", ","):
                    break
        body_vars = {t for a in atoms for t in a.args if isinstance(t, Var)}
        for t, tok in head:
            if isinstance(t, Var) and t not in body_vars:
                raise ts.error(f"unsafe query: answer variable {t.name} does not occur in the body", tok)
        disjuncts.append(ConjunctiveQuery(tuple(t for t, _ in head), frozenset(atoms)))
        ts.end_statement()
        ts.skip_newlines()
    return UnionQuery(tuple(disjuncts), name)


# -- interpretations ---------------------------------------------------------


def _element(ts: TokenStream):
    return ts.expect("lower", what="element name")


def parse_interpretation(text: str) -> Interpretation:
    ts = TokenStream(text)
    domain: set[str] | None = None
    domain_tok = None
    concepts: dict[str, set[str]] = {}
    roles: dict[str, set[tuple[str, str]]] = {}
    uses: list = []  # (element, token) to check against the domain afterwards
    ts.skip_newlines()
    while not ts.at("eof"):
        first = ts.peek()
        if ts.accept("kw", "domain"):
            if domain is not None:
                raise ts.error("domain declared twice", first)
            domain_tok = first
            ts.expect("punct", ":")
            domain = set()
            while ts.at("lower"):
                domain.add(_element(ts).text)
                ts.accept("punct", ",")
        elif ts.accept("kw", "concept"):
            name_tok = ts.expect("upper", what="concept name")
            if name_tok.text in concepts or name_tok.text in roles:
                raise ts.error(f"{name_tok.text} declared twice", name_tok)
            ts.expect("punct", "=")
            ts.expect("punct", "{")
            ext = concepts.setdefault(name_tok.text, set())
            while not ts.at("punct", "}"):
                tok = _element(ts)
                ext.add(tok.text)
                uses.append((tok.text, tok))
                if not ts.accept("punct", ","):
                    break
            ts.expect("punct", "}")
        elif ts.accept("kw", "role"):
            name_tok = ts.expect("upper", what="role name")
            if name_tok.text in concepts or name_tok.text in roles:
                raise ts.error(f"{name_tok.text} declared twice", name_tok)
            ts.expect("punct", "=")
            ts.expect("punct", "{")
            ext = roles.setdefault(name_tok.text, set())
            while not ts.at("punct", "}"):
                ts.expect("punct", "(")
                a = _element(ts)
                ts.expect("punct", ",")
                b = _element(ts)
                ts.expect("punct", ")")
                ext.add((a.text, b.text))
                uses += [(a.text, a), (b.text, b)]
                if not ts.accept("punct", ","):
                    break
            ts.expect("punct", "}")
        else:
            raise ts.error("unexpected token", expected="'domain:', 'concept' or 'role'")
        ts.end_statement()
        ts.skip_newlines()
    if domain is None:
        raise ts.error("missing 'domain:' declaration")
    if not domain:
        raise ParseError("domain must be non-empty", domain_tok.span)
    for elem, tok in uses:
        if elem not in domain:
            raise ts.error(f"element {elem} is not in the domain", tok)
    return Interpretation(frozenset(domain), concepts, roles)


def parse_relation(text: str) -> frozenset[tuple[frozenset[str], str]]:
    """Lines ``<{d, e1}, d'>``; the angle brackets are optional."""
    ts = TokenStream(text)
    pairs = set()
    ts.skip_newlines()
    while not ts.at("eof"):
        first = ts.peek()
        closing = ts.accept("punct", "<")
        ts.expect("punct", "{")
        xs = set()
        while not ts.at("punct", "}"):
            xs.add(_element(ts).text)
            if not ts.accept("punct", ","):
                break
        ts.expect("punct", "}")
        if not xs:
            raise ts.error("a simulation pair needs a non-empty set", first)
        ts.expect("punct", ",")
        d = _element(ts).text
        if closing:
            ts.expect("punct", ">")
        pairs.add((frozenset(xs), d))
        ts.end_statement()
        ts.skip_newlines()
    return frozenset(pairs)


# -- graphs ------------------------------------------------------------------

_VERTEX = r"[A-Za-z0-9_]+"
_EDGE_LINE = re.compile(rf"\s*({_VERTEX})\s+({_VERTEX})\s*")
_HEADER_LINE = re.compile(rf"\s*vertices\s*:((?:\s*{_VERTEX})*)\s*")


def parse_graph(text: str) -> Graph:
    """One ``u v`` edge per line; ``vertices: a b c`` lines declare (isolated) vertices."""
    vertices: set[str] = set()
    edges: set[tuple[str, str]] = set()
    offset = 0
    for line in text.split("\n"):
        content = line.split("#", 1)[0]
        if content.strip():
            m = _HEADER_LINE.fullmatch(content)
            if m:
                vertices.update(m.group(1).split())
            else:
                m = _EDGE_LINE.fullmatch(content)
                if not m:
                    lead = len(content) - len(content.lstrip())
                    raise ParseError(
                        "malformed graph line",
                        span_at(text, offset + lead, offset + len(content.rstrip())),
                        expected="'u v' or 'vertices: ...'",
                    )
                edges.add((m.group(1), m.group(2)))
        offset += len(line) + 1
    try:
        return Graph.from_edges(edges, vertices)
    except ValidationError as exc:  # pragma: no cover - from_edges declares edge endpoints
        raise ParseError(str(exc), span_at(text, 0, len(text))) from exc


# -- formulas ----------------------------------------------------------------


def _fo_unary(ts: TokenStream) -> Formula:
    if ts.accept("kw", "not"):
        return FoNot(_fo_unary(ts))
    tok = ts.peek()
    if tok.is_("kw", "forall") or tok.is_("kw", "exists"):
        ts.next()
        var = ts.expect("lower", what="bound variable").text
        ts.accept("punct", ".")
        body = _fo_formula(ts)
        return (FoForall if tok.text == "forall" else FoExists)(var, body)
    if ts.accept("punct", "("):
        f = _fo_formula(ts)
        ts.expect("punct", ")")
        return f
    pred = ts.expect("upper", what="atom, 'not', quantifier or '('").text
    ts.expect("punct", "(")
    args = [_term(ts)[0]]
    while ts.accept("punct", ","):
        args.append(_term(ts)[0])
    ts.expect("punct", ")")
    return FoAtom(pred, tuple(args))


def _fo_and(ts):
    f = _fo_unary(ts)
    while ts.accept("kw", "and"):
        f = FoAnd(f, _fo_unary(ts))
    return f


def _fo_or(ts):
    f = _fo_and(ts)
    while ts.accept("kw", "or"):
        f = FoOr(f, _fo_and(ts))
    return f


def _fo_formula(ts):
    f = _fo_or(ts)
    if ts.accept("punct", "->"):
        return FoImplies(f, _fo_formula(ts))
    return f


def parse_formula(text: str) -> Formula:
    """``forall y . P(x, y) -> A(y)``; quantifier bodies extend as far right as possible."""
    ts = TokenStream(text)
    ts.skip_newlines()
    f = _fo_formula(ts)
    ts.skip_newlines()
    ts.expect("eof", what="end of formula")
    return f
