"""Term, atom, clause and program representations for definite-clause
programs over constants and ground lists (no function symbols)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    text: str

    def __repr__(self):
        return self.text


@dataclass(frozen=True)
class ListTerm:
    items: tuple["Term", ...]

    def __repr__(self):
        return "[" + ",".join(map(repr, self.items)) + "]"


Term = Union[Var, Const, ListTerm]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]
    negated: bool = False

    def __repr__(self):
        inner = self.pred
        if self.args:
            inner += "(" + ",".join(map(repr, self.args)) + ")"
        return f"not({inner})" if self.negated else inner

    @property
    def arity(self) -> int:
        return len(self.args)

    def positive(self) -> "Atom":
        return Atom(self.pred, self.args) if self.negated else self

    def negate(self) -> "Atom":
        return Atom(self.pred, self.args, negated=True)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple[Atom, ...] = ()

    def __post_init__(self):
        if self.head.negated:
            raise ValueError("clause heads cannot be negated")

    def __repr__(self):
        if not self.body:
            return f"{self.head!r}."
        return f"{self.head!r}:-" + ",".join(map(repr, self.body)) + "."

    @property
    def is_fact(self) -> bool:
        return not self.body


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...]
    primitives: frozenset[str] = frozenset()
    _index: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        index: dict[str, list[Clause]] = {}
        for clause in self.clauses:
            index.setdefault(clause.head.pred, []).append(clause)
        object.__setattr__(self, "_index", index)

    def clauses_for(self, pred: str) -> list[Clause]:
        return self._index.get(pred, [])

    def defined(self) -> frozenset[str]:
        return frozenset(self._index)

    def with_clauses(self, extra: tuple[Clause, ...]) -> "Program":
        return Program(self.clauses + tuple(extra), self.primitives)

    def __repr__(self):
        return "\n".join(map(repr, self.clauses))


def term_vars(term: Term) -> Iterator[str]:
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, ListTerm):
        for item in term.items:
            yield from term_vars(item)


def atom_vars(atom: Atom) -> Iterator[str]:
    for arg in atom.args:
        yield from term_vars(arg)


def clause_vars(clause: Clause) -> list[str]:
    seen: dict[str, None] = {}
    for name in atom_vars(clause.head):
        seen.setdefault(name)
    for atom in clause.body:
        for name in atom_vars(atom):
            seen.setdefault(name)
    return list(seen)


def is_ground(term: Term) -> bool:
    return not any(True for _ in term_vars(term))


def rename_clause(clause: Clause, suffix: str) -> Clause:
    """Standardise a clause apart by suffixing every variable name."""
    mapping = {name: Var(f"{name}#{suffix}") for name in clause_vars(clause)}

    def on_term(term: Term) -> Term:
        if isinstance(term, Var):
            return mapping[term.name]
        if isinstance(term, ListTerm):
            return ListTerm(tuple(on_term(i) for i in term.items))
        return term

    def on_atom(atom: Atom) -> Atom:
        return Atom(atom.pred, tuple(on_term(a) for a in atom.args), atom.negated)

    return Clause(on_atom(clause.head), tuple(on_atom(a) for a in clause.body))
