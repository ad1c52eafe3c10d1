from .terms import Atom, Clause, Const, ListTerm, Program, Term, Var
from .unify import Subst, resolve, resolve_atom, unify, unify_terms
from .parser import (
    ParseError,
    format_atom,
    format_clause,
    format_program,
    format_term,
    parse_atom,
    parse_clause,
    parse_program,
)
from .solve import (
    DepthCapExceeded,
    ExtensionalPrimitive,
    InstantiationError,
    Primitive,
    PrimitiveMap,
    SolveError,
    SolveLimits,
    SolveResult,
    StepBudgetExceeded,
    solve,
)
from .evaluate import Evaluator
from .transform import (
    UnfoldBlockedError,
    answer_sets,
    dependency_closure_size,
    inline_predicate,
    unfold_reduce,
)

__all__ = [
    "Atom", "Clause", "Const", "ListTerm", "Program", "Term", "Var",
    "Subst", "resolve", "resolve_atom", "unify", "unify_terms",
    "ParseError", "parse_atom", "parse_clause", "parse_program",
    "format_atom", "format_clause", "format_program", "format_term",
    "DepthCapExceeded", "ExtensionalPrimitive", "InstantiationError",
    "Primitive", "PrimitiveMap", "SolveError", "SolveLimits", "SolveResult",
    "StepBudgetExceeded", "solve", "Evaluator",
    "UnfoldBlockedError", "answer_sets", "dependency_closure_size",
    "inline_predicate", "unfold_reduce",
]
