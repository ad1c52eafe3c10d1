"""Kernel primitives for the game: move/2, won/1, drawn/1,
number_of_pairs/3, and board <-> term conversion.

Boards travel through the logic kernel as nine-element lists of
one-character constants.
"""

from __future__ import annotations

from typing import Iterable

from . import game
from .logic.solve import InstantiationError, Primitive, PrimitiveMap
from .logic.terms import Atom, Const, ListTerm, Term, Var


def board_term(board: game.Board) -> ListTerm:
    return ListTerm(tuple(Const(c) for c in board))


def term_board(term: Term) -> game.Board:
    if not isinstance(term, ListTerm) or len(term.items) != 9:
        raise InstantiationError(f"not a board term: {term!r}")
    cells = []
    for item in term.items:
        if not isinstance(item, Const) or item.text not in "exo":
            raise InstantiationError(f"not a board cell: {item!r}")
        cells.append(item.text)
    return "".join(cells)


def _require_board(term: Term, pred: str) -> game.Board:
    if isinstance(term, Var):
        raise InstantiationError(f"{pred} needs its board argument ground")
    return term_board(term)


class MovePrimitive(Primitive):
    name, arity = "move", 2

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        board = _require_board(args[0], "move/2")
        for child in game.successors(board):
            yield (args[0], board_term(child))


class WonPrimitive(Primitive):
    name, arity = "won", 1

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        board = _require_board(args[0], "won/1")
        if game.won_any(board):
            yield (args[0],)


class DrawnPrimitive(Primitive):
    name, arity = "drawn", 1

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        board = _require_board(args[0], "drawn/1")
        if game.drawn(board):
            yield (args[0],)


class PairsPrimitive(Primitive):
    name, arity = "number_of_pairs", 3

    def solutions(self, args: tuple[Term, ...]) -> Iterable[tuple[Term, ...]]:
        board = _require_board(args[0], "number_of_pairs/3")
        for player in ("x", "o"):
            count = game.number_of_pairs(board, player)
            yield (args[0], Const(player), Const(str(count)))


def game_primitives() -> PrimitiveMap:
    prims = [MovePrimitive(), WonPrimitive(), DrawnPrimitive(), PairsPrimitive()]
    return {p.name: p for p in prims}


GAME_PRIMITIVE_NAMES = frozenset(("move", "won", "drawn", "number_of_pairs"))


def win_query(k: int, board: game.Board, var: str = "B") -> Atom:
    return Atom(f"win_{k}", (board_term(board), Var(var)))
