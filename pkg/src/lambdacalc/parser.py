"""Surface syntax: tokenizer, recursive-descent parser and pretty-printer.

Grammar::

    program  := ("let" REF "=" expr ";")* [expr]
    expr     := lambda | atom+ [lambda]
    lambda   := LAMBDA VAR+ "." expr
    atom     := VAR | REF | "(" expr ")"

Variables are one lowercase letter plus optional digits/primes, so ``xy``
is two variables.  References start with an uppercase letter or are digit
strings; they are expanded from the environment at parse time.  An
unbound run such as ``FT`` is split into known names (``F T``) by longest
prefix, so the juxtaposed style ``λx.xFT`` works.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .terms import Abs, App, Term, Var

LAMBDA, DOT, LPAREN, RPAREN, VAR, REF, LET, EQUALS, SEMICOLON, EOF = (
    "LAMBDA", "DOT", "LPAREN", "RPAREN", "VAR", "REF", "LET", "EQUALS",
    "SEMICOLON", "EOF",
)

VAR_RE = re.compile(r"[a-z][0-9']*")
REF_RE = re.compile(r"[A-Z][A-Z0-9_]*|[0-9]+")
_PUNCT = {"λ": LAMBDA, "\\": LAMBDA, ".": DOT, "(": LPAREN, ")": RPAREN,
          "=": EQUALS, ";": SEMICOLON}


@dataclass(frozen=True)
class SourceSpan:
    start: int  # byte offsets into the UTF-8 encoded input
    end: int


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected=()):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = list(expected)

    def __str__(self):
        return f"{self.message} at {self.span.start}..{self.span.end}"

    def render(self, text: str) -> str:
        """Message plus the offending line with a caret underline."""
        text = text.rstrip("\n") or text
        raw = text.encode("utf-8")
        before = raw[:self.span.start].decode("utf-8", errors="replace")
        marked = raw[self.span.start:self.span.end].decode("utf-8", errors="replace")
        line_start = before.rfind("\n") + 1
        line_end = text.find("\n", len(before))
        line = text[line_start:line_end if line_end >= 0 else len(text)]
        col = len(before) - line_start
        caret = " " * col + "^" * max(1, len(marked))
        return f"error: {self}\n  {line}\n  {caret}"


class UnboundReferenceError(ParseError):
    def __init__(self, name: str, span: SourceSpan):
        super().__init__(f"unbound reference {name!r}", span)
        self.name = name


class ForwardReferenceError(UnboundReferenceError):
    """A definition mentions a name that is not (yet) defined."""

    def __init__(self, name: str, span: SourceSpan, defined_later: bool = False):
        why = "used before its definition" if defined_later else "is not defined"
        ParseError.__init__(self, f"reference {name!r} {why}", span)
        self.name = name
        self.defined_later = defined_later


class DuplicateDefinitionError(ParseError):
    def __init__(self, name: str, span: SourceSpan):
        super().__init__(f"duplicate definition of {name!r}", span)
        self.name = name


# -- lexer ----------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<punct>[λ\\.()=;])
  | (?P<kw>(?<![A-Za-z0-9'_])(?:lambda|let)(?![A-Za-z0-9'_]))
  | (?P<var>[a-z][0-9']*)
  | (?P<ref>[A-Z][A-Z0-9_]*|[0-9]+)
""", re.VERBOSE)


def _byte_offsets(text: str):
    if text.isascii():
        return lambda i: i
    table = [0]
    for c in text:
        table.append(table[-1] + len(c.encode("utf-8")))
    return table.__getitem__


def tokenize(text: str) -> list:
    to_byte = _byte_offsets(text)
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            b = to_byte(pos)
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(b, to_byte(pos + 1)))
        kind, lexeme = m.lastgroup, m.group()
        if kind == "punct":
            kind = _PUNCT[lexeme]
        elif kind == "kw":
            kind = LAMBDA if lexeme == "lambda" else LET
        elif kind == "var":
            kind = VAR
        elif kind == "ref":
            kind = REF
        if kind != "ws":
            tokens.append(Token(kind, lexeme, SourceSpan(to_byte(pos), to_byte(m.end()))))
        pos = m.end()
    tokens.append(Token(EOF, "", SourceSpan(to_byte(n), to_byte(n))))
    return tokens


# -- parser ------------------------------------------------------------------------

_ATOM_START = (VAR, REF, LPAREN)


class _Parser:
    def __init__(self, tokens, env, resolve_ref=None):
        self.tokens = tokens
        self.pos = 0
        self.env = env
        self.resolve_ref = resolve_ref

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def expect(self, kind) -> Token:
        tok = self.peek
        if tok.kind != kind:
            found = "end of input" if tok.kind == EOF else repr(tok.text)
            raise ParseError(f"expected {kind}, found {found}", tok.span, [kind])
        return self.advance()

    def expr(self) -> Term:
        if self.peek.kind == LAMBDA:
            return self.abstraction()
        if self.peek.kind not in _ATOM_START:
            tok = self.peek
            found = "end of input" if tok.kind == EOF else repr(tok.text)
            raise ParseError(f"expected an expression, found {found}", tok.span,
                             [LAMBDA, *_ATOM_START])
        first, *rest = self.atoms()
        term = first
        for t in rest:
            term = App(term, t)
        while True:
            kind = self.peek.kind
            if kind in _ATOM_START:
                for t in self.atoms():
                    term = App(term, t)
            elif kind == LAMBDA:
                return App(term, self.abstraction())
            else:
                return term

    def abstraction(self) -> Term:
        self.expect(LAMBDA)
        binders = [self.expect(VAR).text]
        while self.peek.kind == VAR:
            binders.append(self.advance().text)
        self.expect(DOT)
        body = self.expr()
        for b in reversed(binders):
            body = Abs(b, body)
        return body

    def atoms(self) -> list:
        """One atom; a split reference yields several."""
        tok = self.advance()
        if tok.kind == VAR:
            return [Var(tok.text)]
        if tok.kind == REF:
            if self.resolve_ref is not None:
                return [self.resolve_ref(tok)]
            return [self.lookup(name) for name in split_reference(tok, self.env)]
        inner = self.expr()
        self.expect(RPAREN)
        return [inner]

    def lookup(self, name: str) -> Term:
        if name in self.env:
            return self.env[name]
        from .church import church_nat
        return church_nat(int(name))


def split_reference(tok: Token, known) -> list:
    """Names a REF token stands for: itself if bound, else a longest-prefix split.

    Raises UnboundReferenceError if no split into bound names exists.
    """
    text = tok.text
    if text in known or text.isdigit():
        return [text]
    parts = []
    i = 0
    while i < len(text):
        for j in range(len(text), i, -1):
            if text[i:j] in known:
                parts.append(text[i:j])
                i = j
                break
        else:
            raise UnboundReferenceError(text, tok.span)
    return parts


def parse_term(text: str, env: Optional[Mapping[str, Term]] = None) -> Term:
    """Parse one expression; references are replaced by ``env`` terms.

    Digit-string references not in ``env`` become Church numerals.
    """
    p = _Parser(tokenize(text), env or {})
    term = p.expr()
    if p.peek.kind != EOF:
        tok = p.peek
        kind = [RPAREN] if tok.kind == RPAREN else [EOF]
        raise ParseError(f"unexpected {tok.text!r}", tok.span, kind)
    return term


parse = parse_term


@dataclass(frozen=True)
class Binding:
    name: str
    source: str  # the expression text, sliced from the program
    span: SourceSpan = field(compare=False)


def parse_program(text: str, env: Optional[Mapping[str, Term]] = None):
    """Split a program into ``let`` bindings and an optional final expression.

    Returns ``(bindings, final_source)``.  Every reference in a binding must
    name something in ``env``, a numeral, or an earlier binding.  Only names
    defined twice within the program count as duplicates.
    """
    tokens = tokenize(text)
    raw = text.encode("utf-8")
    known = set(env or {})
    defined: dict = {}
    bindings = []
    p = _Parser(tokens, {})
    let_names = {tokens[k + 1].text for k, t in enumerate(tokens[:-1])
                 if t.kind == LET and tokens[k + 1].kind == REF}

    def check_refs(start, stop, in_let):
        for tok in tokens[start:stop]:
            if tok.kind != REF:
                continue
            try:
                split_reference(tok, known)
            except UnboundReferenceError:
                if in_let:
                    raise ForwardReferenceError(tok.text, tok.span,
                                                tok.text in let_names) from None
                raise

    # parse structure only; references resolve to placeholders
    p.resolve_ref = lambda tok: Var("_")
    while p.peek.kind == LET:
        p.advance()
        name_tok = p.expect(REF)
        p.expect(EQUALS)
        start = p.pos
        p.expr()
        stop = p.pos
        p.expect(SEMICOLON)
        if name_tok.text in defined:
            raise DuplicateDefinitionError(name_tok.text, name_tok.span)
        check_refs(start, stop, True)
        span = SourceSpan(tokens[start].span.start, tokens[stop - 1].span.end)
        bindings.append(Binding(name_tok.text, raw[span.start:span.end].decode("utf-8"), span))
        defined[name_tok.text] = True
        known.add(name_tok.text)
    final = None
    if p.peek.kind != EOF:
        start = p.pos
        p.expr()
        if p.peek.kind != EOF:
            tok = p.peek
            raise ParseError(f"unexpected {tok.text!r}", tok.span, [EOF])
        check_refs(start, p.pos, False)
        final = raw[tokens[start].span.start:tokens[p.pos - 1].span.end].decode("utf-8")
    return bindings, final


# -- pretty printer -------------------------------------------------------------------

def pretty_print(t: Term, sugar: bool = True, spaced: bool = True) -> str:
    """Render ``t`` with minimal parentheses.

    ``sugar`` fuses nested binders (``λsz.z``).  ``spaced`` puts a blank
    between adjacent atoms (``s z``); without it atoms are juxtaposed
    (``sz``), which still reparses because variables are single letters.
    """
    return "".join(_pp(t, sugar, spaced, tail=True))


def _pp(t, sugar, spaced, tail):
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Abs):
        binders = [t.binder]
        body = t.body
        while sugar and isinstance(body, Abs):
            binders.append(body.binder)
            body = body.body
        sep = "" if all(VAR_RE.fullmatch(b) for b in binders) else " "
        parts = ["λ", sep.join(binders), "."]
        parts.extend(_pp(body, sugar, spaced, tail=True))
        if not tail:
            return ["("] + parts + [")"]
        return parts
    spine = []
    node = t
    while isinstance(node, App):
        spine.append(node.arg)
        node = node.func
    spine.append(node)
    spine.reverse()
    pieces = []
    last = len(spine) - 1
    for i, part in enumerate(spine):
        if isinstance(part, Var):
            text = part.name
        elif isinstance(part, Abs):
            text = "".join(_pp(part, sugar, spaced, tail=(i == last and tail)))
        else:
            text = "(" + "".join(_pp(part, sugar, spaced, tail=True)) + ")"
        if pieces and _needs_space(pieces[-1], text, spaced):
            pieces.append(" ")
        pieces.append(text)
    return pieces


_WORD_END = re.compile(r"[A-Za-z0-9'_]+\Z")
_WORD_START = re.compile(r"[A-Za-z0-9'_]+")


def _needs_space(left: str, right: str, spaced: bool) -> bool:
    if left.endswith(")") or right.startswith("("):
        return False
    if spaced:
        return True
    a, b = _WORD_END.search(left), _WORD_START.match(right)
    if not a or not b:
        return False
    # juxtaposition is only safe when the lexer splits the two names again
    return not (VAR_RE.fullmatch(a.group()) and VAR_RE.fullmatch(b.group()))
