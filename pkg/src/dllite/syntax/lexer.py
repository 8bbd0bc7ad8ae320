"""Tokenizer shared by the KB, query, interpretation and formula grammars."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, SourceSpan

KEYWORDS = {
    "and", "or", "not", "exists", "forall", "inv", "subClassOf", "subRoleOf",
    "true", "domain", "concept", "role", "individuals",
}

# Unicode spellings accepted in formulas.
GLYPHS = {"∀": "forall", "∃": "exists", "¬": "not", "∧": "and", "∨": "or", "→": "->", "⊓": "and"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<upper>[A-Z][A-Za-z0-9_]*'*)
  | (?P<lower>[a-z_][A-Za-z0-9_]*'*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>:-|->|[(){},.=:<>])
  | (?P<glyph>[∀∃¬∧∨→⊓])
    """,
    re.VERBOSE,
)

_OPEN = {"(": ")", "{": "}"}


@dataclass(frozen=True)
class Token:
    kind: str  # upper, lower, string, kw, punct, newline, eof
    text: str
    span: SourceSpan

    def is_(self, kind: str, text: str | None = None) -> bool:
        return self.kind == kind and (text is None or self.text == text)


def span_at(text: str, start: int, end: int) -> SourceSpan:
    start = max(0, min(start, len(text)))
    end = max(start, min(end, len(text)))
    line = text.count("\n", 0, start) + 1
    column = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(line, column, start, end)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; newlines inside brackets are dropped."""
    tokens: list[Token] = []
    depth: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", span_at(text, pos, pos + 1))
        kind = m.lastgroup
        value = m.group()
        span = span_at(text, m.start(), m.end())
        pos = m.end()
        if kind in ("ws", "comment"):
            continue
        if kind == "newline":
            if not depth and not (tokens and tokens[-1].kind == "newline"):
                tokens.append(Token("newline", value, span))
            continue
        if kind == "glyph":
            word = GLYPHS[value]
            kind, value = ("punct", word) if word == "->" else ("kw", word)
        elif kind == "lower" and value in KEYWORDS:
            kind = "kw"
        elif kind == "string":
            value = value[1:-1]
            if not re.fullmatch(r"[a-z_][A-Za-z0-9_]*'*", value):
                raise ParseError(f"constant {value!r} is not a valid individual name", span)
        elif kind == "punct":
            if value in _OPEN:
                depth.append(_OPEN[value])
            elif value in (")", "}"):
                if not depth or depth[-1] != value:
                    raise ParseError(f"unbalanced {value!r}", span)
                depth.pop()
        tokens.append(Token(kind, value, span))
    if depth:
        raise ParseError(f"missing {depth[-1]!r} before end of input", span_at(text, len(text), len(text)))
    tokens.append(Token("eof", "", span_at(text, len(text), len(text))))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.peek().is_(kind, text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.peek()
        if not tok.is_(kind, text):
            wanted = what or (repr(text) if text else kind)
            found = "end of input" if tok.kind == "eof" else repr(tok.text) if tok.kind != "newline" else "end of line"
            raise ParseError(f"unexpected {found}", tok.span, expected=wanted)
        return self.next()

    def error(self, message: str, tok: Token | None = None, expected: str | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.span, expected)

    def skip_newlines(self):
        while self.accept("newline"):
            pass

    def end_statement(self):
        if not self.at("eof"):
            self.expect("newline", what="end of line")
