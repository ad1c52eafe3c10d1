"""Unification, SLD solving, and the textual format."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wink.logic import (
    Atom,
    Clause,
    Const,
    DepthCapExceeded,
    ListTerm,
    Program,
    SolveLimits,
    Var,
    format_clause,
    format_program,
    parse_atom,
    parse_clause,
    parse_program,
    resolve_atom,
    solve,
    unify,
)
from wink.primitives import GAME_PRIMITIVE_NAMES, board_term, game_primitives, term_board


def atom(text):
    return parse_atom(text)


# --- unification -----------------------------------------------------------

def test_unify_binds_variable():
    got = unify(atom("move(s1,B)"), atom("move(s1,s2)"))
    assert got == {"B": Const("s2")}


def test_unify_identity_yields_empty_substitution():
    assert unify(atom("won(X)"), atom("won(X)")) == {}


def test_unify_predicate_mismatch():
    assert unify(atom("move(s1,B)"), atom("won(s1)")) is None


def test_unify_occurs_check():
    a = Atom("p", (Var("X"),))
    b = Atom("p", (ListTerm((Var("X"),)),))
    assert unify(a, b) is None


_terms = st.recursive(
    st.one_of(
        st.sampled_from("ABCXYZ").map(Var),
        st.sampled_from(["a", "b", "s1", "s2", "e", "x", "o"]).map(Const),
    ),
    lambda leaf: st.lists(leaf, max_size=3).map(lambda xs: ListTerm(tuple(xs))),
    max_leaves=6,
)
_atoms = st.builds(
    lambda name, args: Atom(name, tuple(args)),
    st.sampled_from(["p", "q", "move"]),
    st.lists(_terms, min_size=0, max_size=3),
)


@given(_atoms, _atoms)
def test_unifier_makes_atoms_identical(a, b):
    subst = unify(a, b)
    if subst is not None:
        assert resolve_atom(a, subst) == resolve_atom(b, subst)


@given(_atoms)
def test_atom_unifies_with_itself(a):
    assert unify(a, a) is not None


# --- solving -----------------------------------------------------------------

WIN1 = parse_program("win_1(A,B):-move(A,B),won(B).", GAME_PRIMITIVE_NAMES)


def test_solve_finds_the_single_winning_move():
    board = "xxeooeeee"
    result = solve(WIN1, Atom("win_1", (board_term(board), Var("B"))), game_primitives())
    boards = {term_board(s.bindings["B"]) for s in result.solutions}
    assert boards == {"xxxooeeee"}


def test_solve_ground_success_has_empty_bindings():
    result = solve(WIN1, atom("won([x,x,x,o,o,e,e,e,e])"), game_primitives())
    assert len(result.solutions) == 1
    assert result.solutions[0].bindings == {}


def test_solve_no_win_from_empty_board():
    result = solve(WIN1, Atom("win_1", (board_term("e" * 9), Var("B"))), game_primitives())
    assert result.solutions == []
    assert not result.depth_capped


def test_solve_enumerates_in_clause_order():
    program = parse_program("p(a).\np(b).\np(c).")
    result = solve(program, atom("p(X)"), {})
    assert [s.bindings["X"].text for s in result.solutions] == ["a", "b", "c"]


def test_negation_as_failure_with_fresh_variable():
    # q(b) has no successor via r, so not(r(B,C)) succeeds only for B=b.
    program = parse_program("r(a,c).\np(B):-q(B),not(r(B,C)).\nq(a).\nq(b).")
    result = solve(program, atom("p(X)"), {})
    assert [s.bindings["X"].text for s in result.solutions] == ["b"]


def test_depth_cap_reported_distinctly():
    looping = parse_program("p(X):-p(X).")
    result = solve(looping, atom("p(a)"), {}, SolveLimits(max_depth=32))
    assert result.solutions == []
    assert result.depth_capped


def test_depth_cap_inside_negation_raises():
    looping = parse_program("p(X):-p(X).\nq(A):-not(p(A)).")
    with pytest.raises(DepthCapExceeded):
        solve(looping, atom("q(a)"), {}, SolveLimits(max_depth=32))


def test_trace_records_calls_and_exits():
    result = solve(WIN1, Atom("win_1", (board_term("xxeooeeee"), Var("B"))),
                   game_primitives())
    kinds = [e.kind for e in result.trace]
    assert kinds[0] == "call"
    assert "exit" in kinds
    assert result.steps > 0


def test_solution_cap():
    program = parse_program("p(a).\np(b).\np(c).")
    result = solve(program, atom("p(X)"), {}, SolveLimits(max_solutions=2))
    assert len(result.solutions) == 2


# --- textual format -----------------------------------------------------------

ROUND_TRIPS = [
    "win_1(A,B):-move(A,B),won(B).",
    "win_2(A,B):-win_2_1(A,B),not(win_2_1(B,C)).",
    "win_2_1(A):-number_of_pairs(A,x,2),number_of_pairs(A,o,0).",
    "won([x,x,x,o,o,e,e,e,e]).",
    "p.",
    "q(X):-p.",
]


@pytest.mark.parametrize("text", ROUND_TRIPS)
def test_clause_round_trip(text):
    assert format_clause(parse_clause(text)) == text


def test_round_trip_is_whitespace_insensitive():
    spaced = "win_1( A , B ) :- move(A, B), won( B )."
    assert format_clause(parse_clause(spaced)) == "win_1(A,B):-move(A,B),won(B)."


def test_program_round_trip_with_comments():
    text = "% strategy\nwin_1(A,B):-move(A,B),won(B).\n\nwin_2(A,B):-move(A,B),win_2_1(B).\n"
    program = parse_program(text)
    assert format_program(program) == (
        "win_1(A,B):-move(A,B),won(B).\nwin_2(A,B):-move(A,B),win_2_1(B).")
    assert format_program(parse_program(format_program(program))) == format_program(program)


def test_parser_rejects_negated_heads():
    with pytest.raises(Exception):
        parse_clause("not(p(X)):-q(X).")


def test_negated_head_construction_rejected():
    with pytest.raises(ValueError):
        Clause(Atom("p", (), negated=True), ())
