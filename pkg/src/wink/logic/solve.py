"""SLD resolution with negation as failure and full execution traces.

Clause and body-literal order drive the trace; the success set does not
depend on them.  Negated goals succeed by finite failure, with any fresh
variables inside the negation read existentially (the negation fails as
soon as one solution exists).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .terms import Atom, Program, Term, rename_clause
from .unify import Subst, resolve, resolve_atom, unify


class SolveError(Exception):
    pass


class DepthCapExceeded(SolveError):
    """A branch (or a negation that needed finite failure) hit the depth cap."""


class StepBudgetExceeded(SolveError):
    """The resolution-step budget ran out."""


class InstantiationError(SolveError):
    """A primitive was called with an unbound argument it needs ground."""


class Primitive:
    """Built-in predicate: yields ground argument tuples for a call."""

    name: str
    arity: int

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        raise NotImplementedError


class ExtensionalPrimitive(Primitive):
    """Primitive backed by an explicit table of ground tuples."""

    def __init__(self, name: str, arity: int, rows: Iterable[tuple[Term, ...]]):
        self.name = name
        self.arity = arity
        self.rows = tuple(rows)
        if any(len(r) != arity for r in self.rows):
            raise ValueError(f"{name}/{arity} rows with wrong arity")

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        return self.rows


PrimitiveMap = dict[str, Primitive]


@dataclass(frozen=True)
class SolveLimits:
    max_depth: int = 400
    max_solutions: int | None = None
    max_steps: int = 10_000_000


@dataclass(frozen=True)
class TraceEvent:
    kind: str       # call | exit | fail
    goal: Atom      # resolved against the bindings current at the event
    depth: int


@dataclass(frozen=True)
class Solution:
    bindings: Subst                 # query variables only, fully resolved
    trace_length: int               # trace prefix that produced this answer


@dataclass
class SolveResult:
    solutions: list[Solution] = field(default_factory=list)
    trace: list[TraceEvent] = field(default_factory=list)
    steps: int = 0
    depth_capped: bool = False

    @property
    def succeeded(self) -> bool:
        return bool(self.solutions)


class _Engine:
    def __init__(self, program: Program, primitives: PrimitiveMap, limits: SolveLimits):
        self.program = program
        self.primitives = primitives
        self.limits = limits
        self.trace: list[TraceEvent] = []
        self.steps = 0
        self.depth_capped = False
        self._rename = itertools.count()

    def _tick(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise StepBudgetExceeded(f"exceeded {self.limits.max_steps} resolution steps")

    def _note(self, kind: str, goal: Atom, subst: Subst, depth: int):
        self.trace.append(TraceEvent(kind, resolve_atom(goal, subst), depth))

    def prove(self, goals: tuple[Atom, ...], subst: Subst, depth: int) -> Iterator[Subst]:
        if not goals:
            yield subst
            return
        goal, rest = goals[0], goals[1:]
        if goal.negated:
            yield from self._prove_negation(goal, rest, subst, depth)
        else:
            yield from self._prove_positive(goal, rest, subst, depth)

    def _prove_negation(self, goal: Atom, rest: tuple[Atom, ...], subst: Subst,
                        depth: int) -> Iterator[Subst]:
        self._tick()
        self._note("call", goal, subst, depth)
        inner_capped_before = self.depth_capped
        self.depth_capped = False
        found = False
        for _ in self.prove((goal.positive(),), subst, depth + 1):
            found = True
            break
        if not found and self.depth_capped:
            raise DepthCapExceeded(
                f"cannot establish finite failure of {resolve_atom(goal, subst)!r}")
        self.depth_capped = self.depth_capped or inner_capped_before
        if found:
            self._note("fail", goal, subst, depth)
            return
        self._note("exit", goal, subst, depth)
        yield from self.prove(rest, subst, depth)

    def _prove_positive(self, goal: Atom, rest: tuple[Atom, ...], subst: Subst,
                        depth: int) -> Iterator[Subst]:
        if depth >= self.limits.max_depth:
            self.depth_capped = True
            return
        self._note("call", goal, subst, depth)
        delivered = False
        if goal.pred in self.primitives:
            primitive = self.primitives[goal.pred]
            call_args = tuple(resolve(a, subst) for a in goal.args)
            for row in primitive.solutions(call_args):
                self._tick()
                bound = unify(Atom(goal.pred, call_args), Atom(goal.pred, row), subst)
                if bound is None:
                    continue
                delivered = True
                self._note("exit", goal, bound, depth)
                yield from self.prove(rest, bound, depth)
        else:
            for clause in self.program.clauses_for(goal.pred):
                self._tick()
                fresh = rename_clause(clause, str(next(self._rename)))
                bound = unify(goal.positive(), fresh.head, subst)
                if bound is None:
                    continue
                for body_subst in self.prove(fresh.body, bound, depth + 1):
                    delivered = True
                    self._note("exit", goal, body_subst, depth)
                    yield from self.prove(rest, body_subst, depth)
        if not delivered:
            self._note("fail", goal, subst, depth)


def solve(program: Program, query: Atom, primitives: PrimitiveMap,
          limits: SolveLimits = SolveLimits()) -> SolveResult:
    """Enumerate SLD solutions of query in clause order, with the trace."""
    if query.negated:
        raise ValueError("top-level queries must be positive")
    engine = _Engine(program, primitives, limits)
    result = SolveResult()
    query_vars = sorted({v.name for a in query.args for v in _vars_of(a)})
    try:
        for subst in engine.prove((query,), {}, 0):
            bindings = {name: resolve(subst[name], subst)
                        for name in query_vars if name in subst}
            result.solutions.append(Solution(bindings, len(engine.trace)))
            if (limits.max_solutions is not None
                    and len(result.solutions) >= limits.max_solutions):
                break
    finally:
        result.trace = engine.trace
        result.steps = engine.steps
        result.depth_capped = engine.depth_capped
    return result


def _vars_of(term):
    from .terms import ListTerm, Var
    if isinstance(term, Var):
        yield term
    elif isinstance(term, ListTerm):
        for item in term.items:
            yield from _vars_of(item)
