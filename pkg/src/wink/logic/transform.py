"""Clause reduction: duplicate-literal removal, semantic literal removal
checked over a supplied query domain, alias inlining of invented
predicates, and dependency-closure accounting.

The literal-removal test is semantic: a literal goes only if every root's
answer set over the whole query domain is unchanged.  The domain for game
strategies is every reachable position, so the check is an exhaustive
equivalence proof rather than a syntactic subsumption heuristic.
"""

from __future__ import annotations

from .evaluate import Evaluator
from .solve import PrimitiveMap, SolveError
from .terms import Atom, Clause, Program
from .unify import Subst

AnswerSets = dict[Atom, frozenset]


class UnfoldBlockedError(SolveError):
    """Inlining would have to rewrite a negated call site."""

    def __init__(self, pred: str, site: Atom):
        self.pred = pred
        self.site = site
        super().__init__(f"cannot inline {pred} through negated literal {site!r}")


def answer_sets(program: Program, primitives: PrimitiveMap,
                domain: list[Atom], max_nodes: int = 5_000_000) -> AnswerSets:
    evaluator = Evaluator(program, primitives, max_nodes=max_nodes)
    return {q: frozenset(evaluator.answers(q)) for q in domain}


def _dedupe_body(clause: Clause) -> Clause:
    seen: dict[Atom, None] = {}
    for lit in clause.body:
        seen.setdefault(lit)
    return Clause(clause.head, tuple(seen))


def dedupe_literals(program: Program) -> Program:
    return Program(tuple(_dedupe_body(c) for c in program.clauses), program.primitives)


def _references(program: Program) -> dict[str, list[tuple[int, int, Atom]]]:
    """pred -> [(clause index, literal index, literal)] across all bodies."""
    refs: dict[str, list[tuple[int, int, Atom]]] = {}
    for ci, clause in enumerate(program.clauses):
        for li, lit in enumerate(clause.body):
            refs.setdefault(lit.pred, []).append((ci, li, lit))
    return refs


def inline_predicate(program: Program, pred: str) -> Program:
    """Inline a single-clause predicate at its call sites and drop it.

    Raises UnfoldBlockedError when a call site is negated: replacing one
    negated literal with a conjunction would change finite-failure
    semantics.
    """
    defs = program.clauses_for(pred)
    if len(defs) != 1:
        raise ValueError(f"{pred} must have exactly one clause to inline")
    definition = defs[0]
    for _, _, lit in _references(program).get(pred, []):
        if lit.negated:
            raise UnfoldBlockedError(pred, lit)
    out: list[Clause] = []
    counter = 0
    for clause in program.clauses:
        if clause.head.pred == pred:
            continue
        body: list[Atom] = []
        for lit in clause.body:
            if lit.pred != pred:
                body.append(lit)
                continue
            counter += 1
            fresh = _rename_for_inline(definition, f"u{counter}")
            binding = _match_args(fresh.head, lit)
            body.extend(_apply(b, binding) for b in fresh.body)
        out.append(_dedupe_body(Clause(clause.head, tuple(body))))
    return Program(tuple(out), program.primitives)


def _rename_for_inline(clause: Clause, suffix: str) -> Clause:
    from .terms import rename_clause
    return rename_clause(clause, suffix)


def _match_args(head: Atom, call: Atom) -> Subst:
    from .unify import unify
    binding = unify(head, call.positive())
    if binding is None:
        raise SolveError(f"definition head {head!r} does not match call {call!r}")
    return binding


def _apply(atom: Atom, binding: Subst) -> Atom:
    from .unify import resolve_atom
    return resolve_atom(atom, binding)


def _alias_target(program: Program, clause: Clause, roots: set[str]) -> str | None:
    """An alias clause is p(Xs) :- q(Xs): same argument tuple, q invented."""
    if len(clause.body) != 1:
        return None
    lit = clause.body[0]
    if lit.negated or lit.args != clause.head.args:
        return None
    q = lit.pred
    if q in roots or q in program.primitives or len(program.clauses_for(q)) != 1:
        return None
    return q


def _drop_orphans(program: Program, roots: set[str]) -> Program:
    reachable: set[str] = set()
    frontier = [r for r in roots]
    while frontier:
        pred = frontier.pop()
        if pred in reachable:
            continue
        reachable.add(pred)
        for clause in program.clauses_for(pred):
            for lit in clause.body:
                if lit.pred not in program.primitives:
                    frontier.append(lit.pred)
    keep = tuple(c for c in program.clauses if c.head.pred in reachable)
    return Program(keep, program.primitives)


def unfold_reduce(program: Program, roots: set[str], primitives: PrimitiveMap,
                  domain: list[Atom], max_nodes: int = 5_000_000) -> Program:
    """Reduce a learned program without changing any root's success set.

    Passes, iterated to fixpoint: drop duplicate body literals; drop body
    literals whose removal provably preserves every root answer over the
    domain; inline alias clauses of invented predicates; drop unreachable
    clauses.  Single-clause invented predicates referenced only under
    negation are left in place (see inline_predicate).
    """
    for root in roots:
        if not program.clauses_for(root):
            raise ValueError(f"root {root} is not defined")
    current = dedupe_literals(program)
    baseline = answer_sets(current, primitives, domain, max_nodes)

    def preserved(candidate: Program) -> bool:
        try:
            return answer_sets(candidate, primitives, domain, max_nodes) == baseline
        except SolveError:
            return False

    changed = True
    while changed:
        changed = False
        # semantic literal removal, first eligible literal per sweep
        for ci, clause in enumerate(current.clauses):
            if len(clause.body) < 2:
                continue
            for li in range(len(clause.body)):
                slim = Clause(clause.head, clause.body[:li] + clause.body[li + 1:])
                candidate = Program(
                    current.clauses[:ci] + (slim,) + current.clauses[ci + 1:],
                    current.primitives)
                if preserved(candidate):
                    current = candidate
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        # alias inlining
        for clause in current.clauses:
            target = _alias_target(current, clause, roots)
            if target is None:
                continue
            try:
                candidate = _drop_orphans(inline_predicate(current, target), roots)
            except UnfoldBlockedError:
                continue
            if preserved(candidate):
                current = candidate
                changed = True
                break
    current = _drop_orphans(current, roots)
    assert preserved(current)
    return current


def dependency_closure_size(program: Program, root: str) -> int:
    """Clauses reachable from a root, counting reused definitions once each."""
    if not program.clauses_for(root):
        raise ValueError(f"unknown root {root}")
    visited: set[str] = set()
    frontier = [root]
    count = 0
    while frontier:
        pred = frontier.pop()
        if pred in visited or pred in program.primitives:
            continue
        visited.add(pred)
        clauses = program.clauses_for(pred)
        count += len(clauses)
        for clause in clauses:
            for lit in clause.body:
                if lit.pred not in visited and lit.pred not in program.primitives:
                    frontier.append(lit.pred)
    return count
