"""Memoized ground evaluation of program goals.

A tabled companion to the tracing SLD solver for bulk semantic checks
(success-set comparison, convergence sweeps): same answers, no traces,
answers cached per call pattern.  Self-recursion on an identical call
pattern is treated as finite failure; recursion that changes the call
pattern (boards filling up) bottoms out naturally.
"""

from __future__ import annotations

import itertools

from .solve import PrimitiveMap, SolveError, StepBudgetExceeded
from .terms import Atom, ListTerm, Program, Term, Var, is_ground, rename_clause
from .unify import Subst, resolve, unify, unify_terms


class Evaluator:
    def __init__(self, program: Program, primitives: PrimitiveMap,
                 max_nodes: int = 5_000_000):
        self.program = program
        self.primitives = primitives
        self.max_nodes = max_nodes
        self.nodes = 0
        self._memo: dict[tuple, tuple[tuple[Term, ...], ...]] = {}
        self._running: set[tuple] = set()
        self._rename = itertools.count()

    def _key(self, pred: str, args: tuple[Term, ...]) -> tuple:
        slots: dict[str, int] = {}
        normal = []
        for arg in args:
            if is_ground(arg):
                normal.append(arg)
            elif isinstance(arg, Var):
                normal.append(("?", slots.setdefault(arg.name, len(slots))))
            else:
                raise SolveError(f"partially ground list argument: {arg!r}")
        return (pred, tuple(normal))

    def answers(self, atom: Atom, subst: Subst | None = None) -> list[tuple[Term, ...]]:
        """Ground argument tuples satisfying a positive goal."""
        if atom.negated:
            raise ValueError("answers() takes positive goals")
        args = tuple(resolve(a, subst or {}) for a in atom.args)
        key = self._key(atom.pred, args)
        if key in self._memo:
            return [row for row in self._memo[key]]
        if key in self._running:
            return []
        self._running.add(key)
        try:
            rows = self._compute(atom.pred, args)
        finally:
            self._running.discard(key)
        self._memo[key] = tuple(rows)
        return rows

    def holds(self, atom: Atom, subst: Subst | None = None) -> bool:
        found = bool(self.answers(atom.positive(), subst))
        return not found if atom.negated else found

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise StepBudgetExceeded(f"evaluator budget of {self.max_nodes} nodes")

    def _compute(self, pred: str, args: tuple[Term, ...]) -> list[tuple[Term, ...]]:
        self._tick()
        out: dict[tuple[Term, ...], None] = {}
        call = Atom(pred, args)
        if pred in self.primitives:
            for row in self.primitives[pred].solutions(args):
                bound = unify(call, Atom(pred, row), {})
                if bound is not None:
                    out.setdefault(tuple(resolve(a, bound) for a in row))
            return list(out)
        for clause in self.program.clauses_for(pred):
            fresh = rename_clause(clause, f"t{next(self._rename)}")
            start = unify(call, fresh.head, {})
            if start is None:
                continue
            for subst in self._body(fresh.body, start):
                row = tuple(resolve(a, subst) for a in fresh.head.args)
                if all(is_ground(t) for t in row):
                    out.setdefault(row)
                else:
                    raise SolveError(f"non-ground answer for {pred}: {row!r}")
        return list(out)

    def _body(self, goals: tuple[Atom, ...], subst: Subst):
        if not goals:
            yield subst
            return
        goal, rest = goals[0], goals[1:]
        self._tick()
        if goal.negated:
            if not self.answers(goal.positive(), subst):
                yield from self._body(rest, subst)
            return
        resolved = tuple(resolve(a, subst) for a in goal.args)
        for row in self.answers(Atom(goal.pred, resolved)):
            bound: Subst | None = dict(subst)
            for have, want in zip(resolved, row):
                bound = unify_terms(have, want, bound)
                if bound is None:
                    break
            if bound is not None:
                yield from self._body(rest, bound)
