"""Noughts and crosses semantics, the exact game-tree oracle, board
symmetries, and the island re-skin.

Boards are 9-character strings over ``e`` (empty), ``x`` and ``o``,
row-major, cell 1 at the top left.  Cell numbers in public interfaces are
1-based; string indices are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

Board = str

EMPTY_BOARD: Board = "e" * 9

LINES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),   # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),   # columns
    (0, 4, 8), (2, 4, 6),              # diagonals
)

WIN, DRAW, LOSS = "win", "draw", "loss"


class InvalidBoard(ValueError):
    pass


def check_board(board: Board) -> Board:
    if len(board) != 9 or any(c not in "exo" for c in board):
        raise InvalidBoard(f"not a board: {board!r}")
    if abs(board.count("x") - board.count("o")) > 1:
        raise InvalidBoard(f"impossible mark counts in {board!r}")
    if won(board, "x") and won(board, "o"):
        raise InvalidBoard(f"both players have lines in {board!r}")
    return board


def to_move(board: Board) -> str:
    """The player with fewer marks moves next; x on even counts.

    Either player may have opened the game, so a one-mark deficit for
    either side is a valid position.
    """
    nx, no = board.count("x"), board.count("o")
    return "o" if nx > no else "x"


def last_mover(board: Board) -> str | None:
    return None if board == EMPTY_BOARD else ("o" if to_move(board) == "x" else "x")


def won(board: Board, player: str) -> bool:
    return any(all(board[i] == player for i in line) for line in LINES)


def won_any(board: Board) -> bool:
    return won(board, "x") or won(board, "o")


def winning_line(board: Board, player: str) -> tuple[int, int, int] | None:
    for line in LINES:
        if all(board[i] == player for i in line):
            return line
    return None


def is_full(board: Board) -> bool:
    return "e" not in board


def drawn(board: Board) -> bool:
    return is_full(board) and not won_any(board)


def is_terminal(board: Board) -> bool:
    return won_any(board) or is_full(board)


def empty_cells(board: Board) -> list[int]:
    """0-based indices of empty cells."""
    return [i for i in range(9) if board[i] == "e"]


def place(board: Board, cell: int, player: str) -> Board:
    if board[cell] != "e":
        raise ValueError(f"cell {cell + 1} occupied in {board}")
    return board[:cell] + player + board[cell + 1:]


def successors(board: Board) -> list[Board]:
    """All positions the player to move can reach; empty for terminal boards."""
    if is_terminal(board):
        return []
    mover = to_move(board)
    return [place(board, i, mover) for i in empty_cells(board)]


def is_move(before: Board, after: Board) -> bool:
    return after in successors(before)


def moved_cell(before: Board, after: Board) -> int:
    """0-based cell filled between two consecutive positions."""
    diffs = [i for i in range(9) if before[i] != after[i]]
    if len(diffs) != 1 or before[diffs[0]] != "e":
        raise ValueError("positions do not differ by one placed mark")
    return diffs[0]


def pair_lines(board: Board, player: str) -> list[tuple[int, int, int]]:
    """Lines holding exactly two of player's marks and one empty cell."""
    out = []
    for line in LINES:
        marks = [board[i] for i in line]
        if marks.count(player) == 2 and marks.count("e") == 1:
            out.append(line)
    return out


def number_of_pairs(board: Board, player: str) -> int:
    return len(pair_lines(board, player))


# --- exact game-tree labels ---------------------------------------------

@dataclass(frozen=True)
class MinimaxLabel:
    """Game-theoretic value for the player to move; for terminal won boards
    the label is the winner's (win at depth 0).  depth counts plies to the
    outcome under optimal play and is None for draws."""
    value: str
    depth: int | None

    def __post_init__(self):
        if self.value not in (WIN, DRAW, LOSS):
            raise ValueError(self.value)


@lru_cache(maxsize=None)
def _search(board: Board) -> tuple[str, int | None]:
    mover = to_move(board)
    other = "o" if mover == "x" else "x"
    if won(board, other):
        return LOSS, 0
    if is_full(board):
        return DRAW, None
    best: tuple[str, int | None] | None = None
    for child in successors(board):
        value, depth = _search(child)
        # child label is from the opponent's perspective
        mine = {WIN: LOSS, LOSS: WIN, DRAW: DRAW}[value]
        label = (mine, None if depth is None else depth + 1)
        if best is None or _better(label, best):
            best = label
    assert best is not None
    return best


def _better(a: tuple[str, int | None], b: tuple[str, int | None]) -> bool:
    """Order for the mover: quick wins, then draws, then slow losses."""
    rank = {WIN: 2, DRAW: 1, LOSS: 0}
    if rank[a[0]] != rank[b[0]]:
        return rank[a[0]] > rank[b[0]]
    if a[0] == WIN:
        return (a[1] or 0) < (b[1] or 0)
    if a[0] == LOSS:
        return (a[1] or 0) > (b[1] or 0)
    return False


def minimax(board: Board) -> MinimaxLabel:
    check_board(board)
    if won_any(board):
        return MinimaxLabel(WIN, 0)
    value, depth = _search(board)
    return MinimaxLabel(value, depth)


def optimal_moves(board: Board) -> list[Board]:
    """Value-preserving, depth-optimal successors for the player to move."""
    if is_terminal(board):
        return []
    value, depth = _search(board)
    out = []
    for child in successors(board):
        cv, cd = _search(child)
        mine = {WIN: LOSS, LOSS: WIN, DRAW: DRAW}[cv]
        d = None if cd is None else cd + 1
        if (mine, d) == (value, depth):
            out.append(child)
    return out


def opponent_policy(board: Board) -> Board:
    """Deterministic optimal move: among value-preserving depth-optimal
    successors, the one filling the lowest cell index."""
    choices = optimal_moves(board)
    if not choices:
        raise ValueError(f"terminal board {board}")
    return min(choices, key=lambda child: moved_cell(board, child))


def classify_win_k(board: Board) -> int | None:
    """Number of own moves to a forced win for the player to move, or None.

    A depth of 2k-1 plies corresponds to k of the mover's own moves.
    """
    if is_terminal(board):
        return None
    value, depth = _search(board)
    if value != WIN:
        return None
    assert depth is not None and depth % 2 == 1
    return (depth + 1) // 2


@lru_cache(maxsize=1)
def reachable_states() -> frozenset[Board]:
    """Every position reachable from the empty board, terminals included."""
    seen: set[Board] = set()
    frontier = [EMPTY_BOARD]
    while frontier:
        board = frontier.pop()
        if board in seen:
            continue
        seen.add(board)
        frontier.extend(s for s in successors(board) if s not in seen)
    return frozenset(seen)


def reachable_nonterminal(mover: str | None = None) -> list[Board]:
    out = [b for b in reachable_states() if not is_terminal(b)]
    if mover is not None:
        out = [b for b in out if to_move(b) == mover]
    return sorted(out)


# --- symmetries ----------------------------------------------------------

def _perm_from(fn) -> tuple[int, ...]:
    # permutation p with apply(board)[i] = board[p[i]]
    grid = [[r, c] for r in range(3) for c in range(3)]
    out = []
    for r, c in grid:
        sr, sc = fn(r, c)
        out.append(sr * 3 + sc)
    return tuple(out)


@dataclass(frozen=True)
class Symmetry:
    """One of the eight rigid transforms of the 3x3 grid."""
    name: str
    perm: tuple[int, ...]

    def apply(self, board: Board) -> Board:
        return "".join(board[self.perm[i]] for i in range(9))

    def apply_cell(self, cell: int) -> int:
        """Image of a 0-based cell index under the transform."""
        return self.perm.index(cell)

    def compose(self, other: "Symmetry") -> "Symmetry":
        perm = tuple(other.perm[self.perm[i]] for i in range(9))
        return SYMMETRY_BY_PERM[perm]

    def inverse(self) -> "Symmetry":
        inv = tuple(self.perm.index(i) for i in range(9))
        return SYMMETRY_BY_PERM[inv]


SYMMETRIES: tuple[Symmetry, ...] = (
    Symmetry("identity", _perm_from(lambda r, c: (r, c))),
    Symmetry("rot90", _perm_from(lambda r, c: (2 - c, r))),
    Symmetry("rot180", _perm_from(lambda r, c: (2 - r, 2 - c))),
    Symmetry("rot270", _perm_from(lambda r, c: (c, 2 - r))),
    Symmetry("flip_h", _perm_from(lambda r, c: (r, 2 - c))),
    Symmetry("flip_v", _perm_from(lambda r, c: (2 - r, c))),
    Symmetry("flip_main", _perm_from(lambda r, c: (c, r))),
    Symmetry("flip_anti", _perm_from(lambda r, c: (2 - c, 2 - r))),
)

SYMMETRY_BY_NAME = {s.name: s for s in SYMMETRIES}
SYMMETRY_BY_PERM = {s.perm: s for s in SYMMETRIES}


def apply_symmetry(board: Board, g: Symmetry) -> Board:
    return g.apply(board)


def canonical_form(board: Board) -> Board:
    return min(g.apply(board) for g in SYMMETRIES)


# --- island re-skin ------------------------------------------------------

ISLAND_NAMES = ("North Isle", "East Isle", "South Isle")
RESOURCE_NAMES = ("wood", "wheat", "sheep", "ore", "clay")


@dataclass(frozen=True)
class IslandMap:
    """Bijection from board cells to named territories plus a decoration of
    the eight win lines as islands (three disjoint territory triples) or
    shared resources (the remaining five lines)."""
    territories: tuple[str, ...]            # index = 0-based cell
    line_decoration: tuple[tuple[str, str], ...]   # per LINES entry: (kind, name)

    def __post_init__(self):
        if len(self.territories) != 9 or len(set(self.territories)) != 9:
            raise ValueError("territories must name all nine cells uniquely")
        if len(self.line_decoration) != 8:
            raise ValueError("all eight win lines need a decoration")
        islands = [i for i, (kind, _) in enumerate(self.line_decoration) if kind == "island"]
        covered = [c for i in islands for c in LINES[i]]
        if len(islands) != 3 or sorted(covered) != list(range(9)):
            raise ValueError("island lines must partition the board")

    def territory_of(self, cell: int) -> str:
        return self.territories[cell]

    def cell_of(self, territory: str) -> int:
        return self.territories.index(territory)

    def island_of(self, cell: int) -> str:
        for i, (kind, name) in enumerate(self.line_decoration):
            if kind == "island" and cell in LINES[i]:
                return name
        raise AssertionError("island lines partition the board")

    def resources_of(self, cell: int) -> list[str]:
        return [name for i, (kind, name) in enumerate(self.line_decoration)
                if kind == "resource" and cell in LINES[i]]

    def line_name(self, line: tuple[int, int, int]) -> tuple[str, str]:
        return self.line_decoration[LINES.index(line)]


def default_island_map(seed: int = 0) -> IslandMap:
    """Deterministic island skin: rows become islands, the other five lines
    become resources, and territory names are shuffled by seed."""
    rng = random.Random(seed)
    letters = [f"territory {ch}" for ch in "ABCDEFGHI"]
    rng.shuffle(letters)
    decoration = []
    islands = iter(ISLAND_NAMES)
    resources = iter(RESOURCE_NAMES)
    for line in LINES:
        if line in ((0, 1, 2), (3, 4, 5), (6, 7, 8)):
            decoration.append(("island", next(islands)))
        else:
            decoration.append(("resource", next(resources)))
    return IslandMap(tuple(letters), tuple(decoration))


def islandize(board: Board, island_map: IslandMap) -> dict[str, str]:
    """Territory-labelled view of a position: territory name -> mark."""
    return {island_map.territory_of(i): board[i] for i in range(9)}


def deislandize(view: dict[str, str], island_map: IslandMap) -> Board:
    cells = ["e"] * 9
    for territory, mark in view.items():
        cells[island_map.cell_of(territory)] = mark
    return "".join(cells)
