"""Shared fixtures: reference strategy programs and query domains."""

import pytest

from wink import game
from wink.logic import parse_program
from wink.primitives import GAME_PRIMITIVE_NAMES, game_primitives, win_query

# Pairs-based strategy: executes with a single ply of search per depth by
# testing pair counts on the resulting position.
PAIRS_THEORY_TEXT = """\
win_1(A,B):-move(A,B),won(B).
win_2(A,B):-move(A,B),win_2_1(B).
win_2_1(A):-number_of_pairs(A,x,2),number_of_pairs(A,o,0).
win_3(A,B):-move(A,B),win_3_1(B).
win_3_1(A):-number_of_pairs(A,x,1),win_3_2(A).
win_3_2(A):-move(A,B),win_3_3(B).
win_3_3(A):-number_of_pairs(A,x,0),win_3_4(A).
win_3_4(A):-win_2(A,B),win_2_1(B).
"""

# Lookahead strategy over move/won only: win in k by keeping the opponent
# out of safe replies, via negated search.
LOOKAHEAD_THEORY_TEXT = """\
win_1(A,B):-win_1_1(A,B),won(B).
win_1_1(A,B):-move(A,B),won(B).
win_2(A,B):-win_2_1(A,B),not(win_2_1(B,C)).
win_2_1(A,B):-move(A,B),not(win_1(B,C)).
win_3(A,B):-win_3_1(A,B),not(win_3_1(B,C)).
win_3_1(A,B):-win_2_1(A,B),not(win_2(B,C)).
"""


@pytest.fixture(scope="session")
def primitives():
    return game_primitives()


@pytest.fixture(scope="session")
def pairs_theory():
    return parse_program(PAIRS_THEORY_TEXT, GAME_PRIMITIVE_NAMES)


@pytest.fixture(scope="session")
def lookahead_theory():
    return parse_program(LOOKAHEAD_THEORY_TEXT, GAME_PRIMITIVE_NAMES)


@pytest.fixture(scope="session")
def x_states():
    """Reachable non-terminal positions with x to move, sorted."""
    return game.reachable_nonterminal("x")


@pytest.fixture(scope="session")
def win_domain(x_states):
    """Success-set query domain: win_k(s, V) over every x-to-move state."""
    return [win_query(k, board) for k in (1, 2, 3) for board in x_states]
