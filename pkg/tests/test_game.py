"""Game semantics against an independently written exhaustive oracle."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wink import game
from wink.game import (
    EMPTY_BOARD,
    SYMMETRIES,
    SYMMETRY_BY_NAME,
    Board,
    classify_win_k,
    default_island_map,
    deislandize,
    drawn,
    islandize,
    minimax,
    number_of_pairs,
    opponent_policy,
    optimal_moves,
    reachable_states,
    successors,
    to_move,
    won,
)

# --- independent oracle ---------------------------------------------------
# Deliberately written in a different style from wink.game: list boards,
# negamax scores encoding depth, and its own traversal.

_ORACLE_LINES = [
    [0, 1, 2], [3, 4, 5], [6, 7, 8],
    [0, 3, 6], [1, 4, 7], [2, 5, 8],
    [0, 4, 8], [2, 4, 6],
]


def _oracle_winner(cells):
    for a, b, c in _ORACLE_LINES:
        if cells[a] != "e" and cells[a] == cells[b] == cells[c]:
            return cells[a]
    return None


_oracle_memo = {}


def oracle_negamax(cells, player):
    """Score for `player` to move: +(10 - moves_used) win, 0 draw, negative loss.

    Larger is better; the magnitude encodes distance so optimal play is
    fastest-win / slowest-loss.
    """
    key = ("".join(cells), player)
    if key in _oracle_memo:
        return _oracle_memo[key]
    other = "x" if player == "o" else "o"
    if _oracle_winner(cells) == other:
        return -10
    if "e" not in cells:
        return 0
    best = -999
    for i, c in enumerate(cells):
        if c != "e":
            continue
        cells[i] = player
        score = -oracle_negamax(cells, other)
        cells[i] = "e"
        if score > best:
            best = score
    if best > 0:
        best -= 1
    elif best < 0:
        best += 1
    _oracle_memo[key] = best
    return best


def oracle_label(board: Board):
    """(value, plies) for the player to move, mirroring MinimaxLabel."""
    score = oracle_negamax(list(board), to_move(board))
    if score == 0:
        return ("draw", None)
    plies = 10 - abs(score)
    return ("win" if score > 0 else "loss", plies)


def oracle_reachable():
    seen = set()
    layer = {EMPTY_BOARD}
    while layer:
        seen |= layer
        nxt = set()
        for b in layer:
            if _oracle_winner(list(b)) or "e" not in b:
                continue
            p = to_move(b)
            for i, c in enumerate(b):
                if c == "e":
                    child = b[:i] + p + b[i + 1:]
                    if child not in seen:
                        nxt.add(child)
        layer = nxt
    return seen


# --- moves / terminal tests -----------------------------------------------

def test_empty_board_has_nine_successors():
    assert len(successors(EMPTY_BOARD)) == 9


def test_full_board_has_no_successors():
    assert successors("xoxxoooxx") == []


def test_mid_game_successor_count():
    board = "exoeexoeo"
    assert to_move(board) == "x"
    assert len(successors(board)) == 4


def test_won_top_row():
    assert won("xxxooeeee", "x")
    assert not won("xxxooeeee", "o")


def test_empty_board_not_won_not_drawn():
    assert not won(EMPTY_BOARD, "x")
    assert not won(EMPTY_BOARD, "o")
    assert not drawn(EMPTY_BOARD)


def test_drawn_board():
    board = "xoxxoooxx"
    for line in game.LINES:
        marks = {board[i] for i in line}
        assert len(marks) > 1, f"line {line} not blocked"
    assert drawn(board)


# --- pairs ------------------------------------------------------------------

def test_pair_counts_on_reference_board():
    board = "exoeexoeo"
    assert number_of_pairs(board, "o") == 2
    assert number_of_pairs(board, "x") == 0


def test_pair_counts_empty_board():
    assert number_of_pairs(EMPTY_BOARD, "x") == 0
    assert number_of_pairs(EMPTY_BOARD, "o") == 0


def test_pair_count_bounds_across_reachable_states():
    few_marks = 0
    for board in reachable_states():
        for p in "xo":
            n = number_of_pairs(board, p)
            assert 0 <= n <= 8
            if board.count(p) < 2:
                assert n == 0
                few_marks += 1
    assert few_marks > 0


# --- minimax ----------------------------------------------------------------

def test_empty_board_is_draw():
    assert minimax(EMPTY_BOARD).value == "draw"


def test_immediate_win_depth_one():
    label = minimax("xxeooeeee")
    assert (label.value, label.depth) == ("win", 1)


def test_terminal_won_board_depth_zero():
    label = minimax("xxxooeeee")
    assert (label.value, label.depth) == ("win", 0)


def test_reachable_state_count():
    assert len(reachable_states()) == 5478


def test_reachable_matches_oracle():
    assert reachable_states() == frozenset(oracle_reachable())


def test_minimax_agrees_with_oracle_everywhere():
    for board in reachable_states():
        if game.won_any(board):
            continue
        label = minimax(board)
        assert (label.value, label.depth) == oracle_label(board), board


def test_optimal_moves_preserve_oracle_value():
    board = "xeeexeeoo"
    for child in optimal_moves(board):
        assert oracle_label(board)[0] == {"win": "loss", "loss": "win", "draw": "draw"}[
            oracle_label(child)[0]
        ]


def test_opponent_policy_lowest_cell_tiebreak():
    chosen = opponent_policy(EMPTY_BOARD)
    others = optimal_moves(EMPTY_BOARD)
    assert chosen in others
    assert game.moved_cell(EMPTY_BOARD, chosen) == min(
        game.moved_cell(EMPTY_BOARD, c) for c in others
    )


# --- win-in-k classification -------------------------------------------------

def test_classify_immediate_completion():
    assert classify_win_k("xxeooeeee") == 1


def test_classify_double_threat_board():
    # x can move to create two simultaneous pairs: forced win in 2.
    board = "xeeexeeoo"
    assert to_move(board) == "x"
    assert classify_win_k(board) == 2


def test_classify_empty_board_absent():
    assert classify_win_k(EMPTY_BOARD) is None


def test_classify_matches_oracle_depth():
    for board in reachable_states():
        if game.is_terminal(board):
            continue
        value, plies = oracle_label(board)
        expect = (plies + 1) // 2 if value == "win" else None
        assert classify_win_k(board) == expect


# --- symmetries ---------------------------------------------------------------

def test_rot90_four_times_is_identity():
    g = SYMMETRY_BY_NAME["rot90"]
    board = "exoeexoeo"
    out = board
    for _ in range(4):
        out = g.apply(out)
    assert out == board


def test_symmetry_inverse_round_trip():
    board = "exoeexoeo"
    for g in SYMMETRIES:
        assert g.inverse().apply(g.apply(board)) == board


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(reachable_states())), st.sampled_from(range(8)))
def test_classify_is_symmetry_invariant(board, gi):
    g = SYMMETRIES[gi]
    if game.is_terminal(board) or to_move(board) != "x":
        return
    assert classify_win_k(g.apply(board)) == classify_win_k(board)


def test_symmetry_cell_images_follow_boards():
    g = SYMMETRY_BY_NAME["flip_main"]
    for cell in range(9):
        board = game.place(EMPTY_BOARD, cell, "x")
        assert g.apply(board).index("x") == g.apply_cell(cell)


# --- island skin ----------------------------------------------------------------

def test_island_round_trip():
    m = default_island_map(seed=7)
    board = "exoeexoeo"
    assert deislandize(islandize(board, m), m) == board


def test_island_lines_partition():
    m = default_island_map(seed=3)
    islands = {}
    for cell in range(9):
        islands.setdefault(m.island_of(cell), []).append(cell)
    assert len(islands) == 3
    assert sorted(itertools.chain.from_iterable(islands.values())) == list(range(9))


def test_island_preserves_win_k():
    m = default_island_map(seed=1)
    board = "xeeexeeoo"
    view = islandize(board, m)
    assert classify_win_k(deislandize(view, m)) == classify_win_k(board)


def test_bad_board_rejected():
    with pytest.raises(game.InvalidBoard):
        game.check_board("xxxxxxxxx")
    with pytest.raises(game.InvalidBoard):
        game.check_board("abc")
