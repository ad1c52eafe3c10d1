"""Most-general unification over vars, constants, and lists."""

from __future__ import annotations

from .terms import Atom, Const, ListTerm, Term, Var

Subst = dict[str, Term]


def walk(term: Term, subst: Subst) -> Term:
    while isinstance(term, Var) and term.name in subst:
        term = subst[term.name]
    return term


def resolve(term: Term, subst: Subst) -> Term:
    """Apply a substitution all the way down."""
    term = walk(term, subst)
    if isinstance(term, ListTerm):
        return ListTerm(tuple(resolve(i, subst) for i in term.items))
    return term


def resolve_atom(atom: Atom, subst: Subst) -> Atom:
    return Atom(atom.pred, tuple(resolve(a, subst) for a in atom.args), atom.negated)


def occurs(name: str, term: Term, subst: Subst) -> bool:
    term = walk(term, subst)
    if isinstance(term, Var):
        return term.name == name
    if isinstance(term, ListTerm):
        return any(occurs(name, i, subst) for i in term.items)
    return False


def unify_terms(a: Term, b: Term, subst: Subst) -> Subst | None:
    """Extend subst so a and b match, or None.  Does not mutate subst."""
    a, b = walk(a, subst), walk(b, subst)
    if isinstance(a, Var):
        if isinstance(b, Var) and b.name == a.name:
            return subst
        if occurs(a.name, b, subst):
            return None
        return {**subst, a.name: b}
    if isinstance(b, Var):
        return unify_terms(b, a, subst)
    if isinstance(a, Const) and isinstance(b, Const):
        return subst if a.text == b.text else None
    if isinstance(a, ListTerm) and isinstance(b, ListTerm):
        if len(a.items) != len(b.items):
            return None
        for x, y in zip(a.items, b.items):
            next_subst = unify_terms(x, y, subst)
            if next_subst is None:
                return None
            subst = next_subst
        return subst
    return None


def unify(a: Atom, b: Atom, subst: Subst | None = None) -> Subst | None:
    """Most general unifier of two non-negated atoms, or None."""
    if a.negated or b.negated:
        raise ValueError("unification is defined on positive atoms")
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    out: Subst = dict(subst) if subst else {}
    for x, y in zip(a.args, b.args):
        step = unify_terms(x, y, out)
        if step is None:
            return None
        out = step
    return out
