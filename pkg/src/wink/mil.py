"""Meta-interpretive learning: hypothesis search over metarule
instantiations with predicate invention and currying.

The search proves the positive examples with a meta-interpreter that may,
at an open predicate, either reuse a clause built so far or instantiate a
fresh metarule (binding its predicate variables and freezing its curried
slots to constants).  Iterative deepening on clause count makes returned
hypotheses minimal; fixed choice orders make them deterministic.  Every
complete candidate is re-verified against positives and negatives with the
ordinary solver before it is surfaced.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field, replace

from .logic.parser import ParseError, format_program, parse_atom, parse_program
from .logic.solve import (
    PrimitiveMap,
    SolveError,
    SolveLimits,
    solve,
)
from .logic.terms import Atom, Clause, Const, ListTerm, Program, Term, Var, is_ground
from .logic.unify import Subst, resolve, resolve_atom, unify, unify_terms


class LearnBudgetExceeded(SolveError):
    """Search node budget ran out before the space was exhausted."""


# --- metarules -------------------------------------------------------------

@dataclass(frozen=True)
class MetaArg:
    kind: str   # "var" universally quantified | "slot" existential constant
    name: str


@dataclass(frozen=True)
class MetaLiteral:
    pred_var: str
    args: tuple[MetaArg, ...]
    negated: bool = False

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Metarule:
    id: str
    head: MetaLiteral
    body: tuple[MetaLiteral, ...]

    def __post_init__(self):
        if self.head.negated:
            raise ValueError("metarule heads cannot be negated")

    @property
    def max_body(self) -> int:
        return len(self.body)


UNIVERSAL_ARGS = frozenset("ABCDE")


def parse_metarule(text: str) -> Metarule:
    """``id: P(A,B) :- Q(A,S,T), not(R(B,C)).``

    Identifiers in predicate position are predicate variables; argument
    identifiers in A..E are universally quantified, any other uppercase
    name is an existentially quantified constant slot.
    """
    if ":" not in text:
        raise ParseError(f"metarule needs an 'id:' prefix: {text!r}")
    rule_id, clause_text = text.split(":", 1)
    rule_id = rule_id.strip()
    raw = clause_text.strip()
    if not raw.endswith("."):
        raw += "."
    # reuse the clause parser by lower-casing predicate-position names
    pred_positions: list[str] = []

    def lower_preds(match: re.Match) -> str:
        name = match.group(1)
        pred_positions.append(name)
        return f"predvar_{name.lower()}("

    mangled = re.sub(r"\b([A-Z][A-Za-z0-9_]*)\s*\(", lower_preds, raw)
    parsed = parse_program(mangled)
    if len(parsed.clauses) != 1:
        raise ParseError(f"metarule must be a single clause: {text!r}")
    clause = parsed.clauses[0]

    def to_literal(atom: Atom) -> MetaLiteral:
        if not atom.pred.startswith("predvar_"):
            raise ParseError(f"metarule literals need predicate variables: {atom!r}")
        args = []
        for arg in atom.args:
            if not isinstance(arg, Var):
                raise ParseError(f"metarule arguments must be identifiers: {arg!r}")
            kind = "var" if arg.name in UNIVERSAL_ARGS else "slot"
            args.append(MetaArg(kind, arg.name))
        return MetaLiteral(atom.pred.removeprefix("predvar_").upper(),
                           tuple(args), atom.negated)

    return Metarule(rule_id, to_literal(clause.head),
                    tuple(to_literal(b) for b in clause.body))


POSTCON2 = parse_metarule("postcon2: P(A,B) :- Q(A,B), R(B).")
POSTCON1 = parse_metarule("postcon1: P(A) :- Q(A,B), R(B).")
CURRY1 = parse_metarule("curry1: P(A) :- Q(A,S,T), R(A).")
CURRY2 = parse_metarule("curry2: P(A) :- Q(A,S,T), R(A,U,V).")
NEG_LOOKAHEAD = parse_metarule("neg_lookahead: P(A,B) :- Q(A,B), not(R(B,C)).")

STANDARD_METARULES = (POSTCON2, POSTCON1, CURRY1, CURRY2)
NEGATION_METARULES = (POSTCON2, NEG_LOOKAHEAD)


def format_metarule(rule: Metarule) -> str:
    def fmt(lit: MetaLiteral) -> str:
        inner = lit.pred_var
        if lit.args:
            inner += "(" + ",".join(a.name for a in lit.args) + ")"
        return f"not({inner})" if lit.negated else inner

    return f"{rule.id}: {fmt(rule.head)} :- " + ", ".join(map(fmt, rule.body)) + "."


# --- tasks and hypotheses ----------------------------------------------------

@dataclass
class LearningTask:
    positives: list[Atom]
    negatives: list[Atom]
    background: Program
    primitives: PrimitiveMap
    metarules: tuple[Metarule, ...]
    max_clauses: int = 4
    constant_pool: tuple[str, ...] = ("x", "o", "0", "1", "2")
    node_budget: int = 10_000_000
    proof_depth: int = 16
    target: str = ""

    def __post_init__(self):
        if self.max_clauses < 1:
            raise ValueError("max_clauses must be at least 1")
        overlap = {a for a in self.positives} & {a for a in self.negatives}
        if overlap:
            raise ValueError(f"examples appear as both signs: {overlap}")
        for example in itertools.chain(self.positives, self.negatives):
            if not all(is_ground(arg) for arg in example.args):
                raise ValueError(f"examples must be ground: {example!r}")
        if not self.target and self.positives:
            self.target = self.positives[0].pred


@dataclass(frozen=True)
class Hypothesis:
    program: Program
    metarule_trace: tuple[str, ...]
    invented: frozenset[str]

    @property
    def size(self) -> int:
        return len(self.program.clauses)

    def text(self) -> str:
        return format_program(self.program)


# --- the search ----------------------------------------------------------------

@dataclass
class _Search:
    task: LearningTask
    nodes: int = 0
    renames: itertools.count = field(default_factory=itertools.count)

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.task.node_budget:
            raise LearnBudgetExceeded(f"exceeded {self.task.node_budget} search nodes")

    def _fresh(self, name: str) -> Var:
        return Var(f"{name}#m{next(self.renames)}")

    # candidate predicates for a body literal, in deterministic order
    def _body_preds(self, arity: int, prog: list[tuple[Clause, str]],
                    can_invent: bool, negated: bool) -> list[str]:
        out: list[str] = []
        for name, prim in self.task.primitives.items():
            if prim.arity == arity:
                out.append(name)
        seen = set(out)
        for clause in self.task.background.clauses:
            name = clause.head.pred
            if name not in seen and clause.head.arity == arity:
                seen.add(name)
                out.append(name)
        for clause, _ in prog:
            name = clause.head.pred
            if name not in seen and clause.head.arity == arity:
                seen.add(name)
                out.append(name)
        if can_invent and not negated:
            out.append(_INVENT)
        return out

    def prove_examples(self, examples: list[Atom], prog: list[tuple[Clause, str]],
                       size: int):
        if not examples:
            yield prog
            return
        first, rest = examples[0], examples[1:]
        seen: set[tuple] = set()
        for subst, prog2 in self.prove_goal(first, {}, prog, size, depth=0):
            # alternative proofs of one example through identical programs
            # add nothing downstream
            key = tuple(c for c, _ in prog2)
            if key in seen:
                continue
            seen.add(key)
            yield from self.prove_examples(rest, prog2, size)

    def prove_goal(self, goal: Atom, subst: Subst, prog: list[tuple[Clause, str]],
                   size: int, depth: int):
        self._tick()
        if depth > self.task.proof_depth:
            return
        if goal.negated:
            yield from self._prove_negation(goal, subst, prog, size)
            return
        pred = goal.pred
        if pred in self.task.primitives:
            call = tuple(resolve(a, subst) for a in goal.args)
            try:
                rows = list(self.task.primitives[pred].solutions(call))
            except SolveError:
                return
            for row in rows:
                self._tick()
                bound = unify(Atom(pred, call), Atom(pred, row), subst)
                if bound is not None:
                    yield bound, prog
            return
        background = self.task.background.clauses_for(pred)
        if background:
            for clause in background:
                yield from self._prove_with_clause(goal, clause, subst, prog, size, depth)
            return
        # open predicate: reuse constructed clauses, then extend the program
        for clause, _ in list(prog):
            if clause.head.pred == pred:
                yield from self._prove_with_clause(goal, clause, subst, prog, size, depth)
        if len(prog) < size:
            yield from self._construct(goal, subst, prog, size, depth)

    def _prove_with_clause(self, goal: Atom, clause: Clause, subst: Subst,
                           prog: list[tuple[Clause, str]], size: int, depth: int):
        from .logic.terms import rename_clause
        fresh = rename_clause(clause, f"r{next(self.renames)}")
        bound = unify(goal.positive(), fresh.head, subst)
        if bound is None:
            return
        yield from self._prove_body(fresh.body, bound, prog, size, depth + 1)

    def _prove_body(self, body: tuple[Atom, ...], subst: Subst,
                    prog: list[tuple[Clause, str]], size: int, depth: int):
        if not body:
            yield subst, prog
            return
        for subst2, prog2 in self.prove_goal(body[0], subst, prog, size, depth):
            yield from self._prove_body(body[1:], subst2, prog2, size, depth)

    def _prove_negation(self, goal: Atom, subst: Subst, prog: list[tuple[Clause, str]],
                        size: int):
        """Execute a negation against the program built so far (no invention
        inside a negation); candidates are re-verified once complete."""
        program = self._assemble(prog)
        query = resolve_atom(goal.positive(), subst)
        try:
            result = solve(program, query, self.task.primitives,
                           SolveLimits(max_depth=120, max_solutions=1, max_steps=200_000))
        except SolveError:
            return
        self.nodes += result.steps
        if not result.solutions and not result.depth_capped:
            yield subst, prog

    def _assemble(self, prog: list[tuple[Clause, str]]) -> Program:
        return Program(self.task.background.clauses + tuple(c for c, _ in prog),
                       self.task.background.primitives)

    def _construct(self, goal: Atom, subst: Subst, prog: list[tuple[Clause, str]],
                   size: int, depth: int):
        pred = goal.pred
        for rule in self.task.metarules:
            if rule.head.arity != len(goal.args):
                continue
            var_map = {a.name: self._fresh(a.name) for lit in (rule.head, *rule.body)
                       for a in lit.args}
            head = Atom(pred, tuple(var_map[a.name] for a in rule.head.args))
            bound = unify(goal.positive(), head, subst)
            if bound is None:
                continue
            yield from self._construct_body(rule, list(rule.body), [], head, var_map,
                                            bound, prog, size, depth, [])

    def _construct_body(self, rule: Metarule, remaining: list[MetaLiteral],
                        chosen: list[Atom], head: Atom, var_map: dict[str, Var],
                        subst: Subst, prog: list[tuple[Clause, str]], size: int,
                        depth: int, invented_here: list[str]):
        if not remaining:
            clause = Clause(head, tuple(chosen))
            frozen = self._freeze_slots(rule, clause, subst)
            if frozen is None:
                return
            yield subst, prog + [(frozen, rule.id)]
            return
        literal, rest = remaining[0], remaining[1:]
        args = tuple(var_map[a.name] for a in literal.args)
        can_invent = len(prog) + 1 < size
        for pred in self._body_preds(literal.arity, prog, can_invent, literal.negated):
            self._tick()
            if pred is _INVENT:
                pred = self._invent_name(prog)
            body_atom = Atom(pred, args, literal.negated)
            if not body_atom.negated and body_atom.pred == head.pred and args == head.args:
                continue    # direct self-loop can never contribute a proof
            for subst2, prog2 in self.prove_goal(body_atom, subst, prog, size, depth + 1):
                yield from self._construct_body(rule, rest, chosen + [body_atom], head,
                                                var_map, subst2, prog2, size, depth,
                                                invented_here)

    def _invent_name(self, prog: list[tuple[Clause, str]]) -> str:
        existing = {c.head.pred for c, _ in prog}
        existing |= {lit.pred for c, _ in prog for lit in c.body}
        i = 1
        while f"{self.task.target}_aux{i}" in existing:
            i += 1
        return f"{self.task.target}_aux{i}"

    def _freeze_slots(self, rule: Metarule, clause: Clause, subst: Subst) -> Clause | None:
        """Slots must resolve to constants drawn from the pool."""
        slot_names = {a.name for lit in (rule.head, *rule.body)
                      for a in lit.args if a.kind == "slot"}

        def freeze(term: Term) -> Term | None:
            value = resolve(term, subst)
            if isinstance(value, Var):
                return None
            return value

        def on_atom(atom: Atom, lit: MetaLiteral) -> Atom | None:
            out = []
            for term, meta in zip(atom.args, lit.args):
                if meta.kind == "slot":
                    value = freeze(term)
                    if not isinstance(value, Const) or value.text not in self.task.constant_pool:
                        return None
                    out.append(value)
                else:
                    out.append(term)
            return Atom(atom.pred, tuple(out), atom.negated)

        if not slot_names:
            return clause
        head = on_atom(clause.head, rule.head)
        if head is None:
            return None
        body = []
        for atom, lit in zip(clause.body, rule.body):
            frozen = on_atom(atom, lit)
            if frozen is None:
                return None
            body.append(frozen)
        return Clause(head, tuple(body))


_INVENT = object()


# --- public operations -------------------------------------------------------

def _canonical(task: LearningTask, prog: list[tuple[Clause, str]]) -> Hypothesis:
    """Normalise variable names and invented predicate names for output."""
    clauses = [c for c, _ in prog]
    trace = tuple(m for _, m in prog)
    known = set(task.background.defined()) | set(task.primitives) | {task.target}
    rename: dict[str, str] = {}
    counter = itertools.count(1)
    for clause in clauses:
        for atom in (clause.head, *clause.body):
            if atom.pred not in known and atom.pred not in rename:
                rename[atom.pred] = f"{task.target}_{next(counter)}"

    def fix_atom(atom: Atom, var_map: dict[str, str]) -> Atom:
        args = []
        for arg in atom.args:
            args.append(_pretty_term(arg, var_map))
        return Atom(rename.get(atom.pred, atom.pred), tuple(args), atom.negated)

    fixed = []
    for clause in clauses:
        var_map: dict[str, str] = {}
        fixed.append(Clause(fix_atom(clause.head, var_map),
                            tuple(fix_atom(b, var_map) for b in clause.body)))
    program = Program(tuple(fixed), task.background.primitives)
    return Hypothesis(program, trace, frozenset(rename.values()))


_VAR_NAMES = "ABCDEFGH"


def _pretty_term(term: Term, var_map: dict[str, str]) -> Term:
    if isinstance(term, Var):
        if term.name not in var_map:
            i = len(var_map)
            var_map[term.name] = _VAR_NAMES[i] if i < len(_VAR_NAMES) else f"V{i}"
        return Var(var_map[term.name])
    if isinstance(term, ListTerm):
        return ListTerm(tuple(_pretty_term(i, var_map) for i in term.items))
    return term


def verify_hypothesis(hypothesis: Hypothesis, task: LearningTask,
                      limits: SolveLimits | None = None) -> bool:
    """Post-hoc soundness check with the ordinary solver."""
    program = Program(task.background.clauses + hypothesis.program.clauses,
                      task.background.primitives)
    limits = limits or SolveLimits(max_depth=120, max_solutions=1, max_steps=500_000)
    try:
        for example in task.positives:
            if not solve(program, example, task.primitives, limits).succeeded:
                return False
        for example in task.negatives:
            if solve(program, example, task.primitives, limits).succeeded:
                return False
    except SolveError:
        return False
    return True


def learn_candidates(task: LearningTask, collect: int = 1) -> list[Hypothesis]:
    """Verified hypotheses at the smallest attainable clause count.

    Deepens on clause count from 1 to task.max_clauses and stops at the
    first count yielding any verified hypothesis, returning up to
    ``collect`` of them in search order.
    """
    if not task.positives:
        return [Hypothesis(Program((), task.background.primitives), (), frozenset())]
    search = _Search(task)
    for size in range(1, task.max_clauses + 1):
        found: list[Hypothesis] = []
        seen: set[str] = set()
        for prog in search.prove_examples(list(task.positives), [], size):
            if len(prog) != size:
                continue
            hypothesis = _canonical(task, prog)
            text = hypothesis.text()
            if text in seen:
                continue
            seen.add(text)
            if verify_hypothesis(hypothesis, task):
                found.append(hypothesis)
                if len(found) >= collect:
                    return found
        if found:
            return found
    return []


def learn(task: LearningTask) -> Hypothesis | None:
    """First verified hypothesis by the deterministic search order, or None."""
    found = learn_candidates(task, collect=1)
    return found[0] if found else None


def count_resolution_steps(program: Program, probes: list[Atom],
                           primitives: PrimitiveMap,
                           limits: SolveLimits | None = None) -> int:
    limits = limits or SolveLimits(max_depth=200, max_solutions=1, max_steps=2_000_000)
    total = 0
    for probe in probes:
        total += solve(program, probe, primitives, limits).steps
    return total


def select_efficient(candidates: list[Hypothesis], probes: list[Atom],
                     background: Program, primitives: PrimitiveMap) -> Hypothesis:
    """Candidate with the fewest resolution steps over the probes; ties fall
    to fewer clauses, then to program text, then to input order."""
    if not candidates:
        raise ValueError("no candidates to select from")

    def score(item: tuple[int, Hypothesis]):
        index, hypothesis = item
        program = Program(background.clauses + hypothesis.program.clauses,
                          background.primitives)
        steps = count_resolution_steps(program, probes, primitives)
        return (steps, hypothesis.size, hypothesis.text(), index)

    return min(enumerate(candidates), key=score)[1]


# --- task files ------------------------------------------------------------------

def format_task(task: LearningTask) -> str:
    lines = [f"max_clauses: {task.max_clauses}",
             f"node_budget: {task.node_budget}",
             f"target: {task.target}"]
    lines.append("[metarules]")
    lines.extend(format_metarule(m) for m in task.metarules)
    lines.append("[primitives]")
    lines.append(", ".join(f"{p.name}/{p.arity}" for p in task.primitives.values()))
    lines.append("[constants]")
    lines.append(", ".join(task.constant_pool))
    lines.append("[background]")
    lines.extend(format_program(task.background).splitlines())
    lines.append("[positives]")
    lines.extend(f"{a!r}." for a in task.positives)
    lines.append("[negatives]")
    lines.extend(f"{a!r}." for a in task.negatives)
    return "\n".join(lines) + "\n"


def parse_task(text: str, primitives: PrimitiveMap) -> LearningTask:
    sections: dict[str, list[str]] = {"": []}
    current = ""
    header: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            sections[current] = []
            continue
        if current == "" and ":" in line and not line.endswith("."):
            key, value = line.split(":", 1)
            header[key.strip()] = value.strip()
            continue
        sections[current].append(line)
    metarules = tuple(parse_metarule(l) for l in sections.get("metarules", []))
    wanted = []
    for entry in ", ".join(sections.get("primitives", [])).split(","):
        entry = entry.strip()
        if entry:
            wanted.append(entry.split("/")[0])
    missing = [w for w in wanted if w not in primitives]
    if missing:
        raise ParseError(f"unknown primitives: {missing}")
    chosen = {w: primitives[w] for w in wanted}
    pool = tuple(c.strip() for c in ", ".join(sections.get("constants", [])).split(",")
                 if c.strip())
    background = parse_program("\n".join(sections.get("background", [])),
                               frozenset(chosen))
    positives = [parse_atom(l) for l in sections.get("positives", [])]
    negatives = [parse_atom(l) for l in sections.get("negatives", [])]
    return LearningTask(
        positives=positives,
        negatives=negatives,
        background=background,
        primitives=chosen,
        metarules=metarules,
        max_clauses=int(header.get("max_clauses", 4)),
        constant_pool=pool or ("x", "o", "0", "1", "2"),
        node_budget=int(header.get("node_budget", 10_000_000)),
        target=header.get("target", ""),
    )
