"""Textual clause format.

One clause per line, ``head :- lit1, lit2.`` with ``not(...)`` for negated
body literals, ``[e,x,o]`` ground lists, uppercase-initial identifiers as
variables and anything else as constants.  ``%`` starts a comment.  The
printer emits a canonical no-extra-whitespace form so parse/print round
trips are stable.
"""

from __future__ import annotations

import re

from .terms import Atom, Clause, Const, ListTerm, Program, Term, Var


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+|:-|[()\[\],.])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character at {text[pos:pos + 12]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Cursor:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, found {tok!r}")
        self.i += 1
        return tok


def _is_var(token: str) -> bool:
    return token[0].isupper() or token[0] == "_"


def _parse_term(cur: _Cursor) -> Term:
    tok = cur.peek()
    if tok == "[":
        cur.take("[")
        items: list[Term] = []
        if cur.peek() != "]":
            items.append(_parse_term(cur))
            while cur.peek() == ",":
                cur.take(",")
                items.append(_parse_term(cur))
        cur.take("]")
        return ListTerm(tuple(items))
    tok = cur.take()
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*|\d+", tok):
        raise ParseError(f"expected a term, found {tok!r}")
    return Var(tok) if _is_var(tok) else Const(tok)


def _parse_atom(cur: _Cursor, allow_negation: bool) -> Atom:
    name = cur.take()
    if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", name):
        raise ParseError(f"expected a predicate name, found {name!r}")
    if name == "not":
        if not allow_negation:
            raise ParseError("negation is only allowed on body literals")
        cur.take("(")
        inner = _parse_atom(cur, allow_negation=False)
        cur.take(")")
        return inner.negate()
    args: list[Term] = []
    if cur.peek() == "(":
        cur.take("(")
        args.append(_parse_term(cur))
        while cur.peek() == ",":
            cur.take(",")
            args.append(_parse_term(cur))
        cur.take(")")
    return Atom(name, tuple(args))


def parse_atom(text: str, allow_negation: bool = True) -> Atom:
    cur = _Cursor(_tokenize(text.rstrip().rstrip(".")))
    atom = _parse_atom(cur, allow_negation)
    if cur.peek() is not None:
        raise ParseError(f"trailing input after atom: {cur.peek()!r}")
    return atom


def parse_clause(text: str) -> Clause:
    line = text.strip()
    if not line.endswith("."):
        raise ParseError(f"clause must end with '.': {line!r}")
    cur = _Cursor(_tokenize(line[:-1]))
    head = _parse_atom(cur, allow_negation=False)
    body: list[Atom] = []
    if cur.peek() == ":-":
        cur.take(":-")
        body.append(_parse_atom(cur, allow_negation=True))
        while cur.peek() == ",":
            cur.take(",")
            body.append(_parse_atom(cur, allow_negation=True))
    if cur.peek() is not None:
        raise ParseError(f"trailing input in clause: {cur.peek()!r}")
    return Clause(head, tuple(body))


def parse_program(text: str, primitives: frozenset[str] | set[str] = frozenset()) -> Program:
    clauses = []
    for raw in text.splitlines():
        line = raw.split("%", 1)[0].strip()
        if line:
            clauses.append(parse_clause(line))
    return Program(tuple(clauses), frozenset(primitives))


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        return term.text
    return "[" + ",".join(format_term(i) for i in term.items) + "]"


def format_atom(atom: Atom) -> str:
    inner = atom.pred
    if atom.args:
        inner += "(" + ",".join(format_term(a) for a in atom.args) + ")"
    return f"not({inner})" if atom.negated else inner


def format_clause(clause: Clause) -> str:
    if not clause.body:
        return format_atom(clause.head) + "."
    return format_atom(clause.head) + ":-" + ",".join(format_atom(a) for a in clause.body) + "."


def format_program(program: Program) -> str:
    return "\n".join(format_clause(c) for c in program.clauses)
