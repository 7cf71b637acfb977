"""Board and move model for the number rotation puzzle.

The puzzle lives on an ``n x m`` grid filled with the values ``1 .. n*m``.
In the solved position the value ``(i-1)*m + j`` sits at row ``i``, column
``j`` (both 1-based).  A move selects a ``b x b`` sub-block by its top-left
anchor cell and rotates the block's contents counterclockwise by one, two or
three quarter turns.  The block size ``b`` is fixed per puzzle, so a puzzle
is described by the triple ``(n, m, b)``.

One counterclockwise quarter turn sends the value at block offset
``(oi, oj)`` (0-based within the block) to offset ``(b-1-oj, oi)``; columns
rise to become rows.  Everything else in this package is built on top of
that single rule.

Boards are immutable; applying moves returns new boards.  Move sequences
are plain tuples of :class:`Move` and compose left to right: the first
element of the sequence is performed first.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


class Coord(tuple):
    """A 1-based (row, column) grid coordinate."""

    __slots__ = ()

    def __new__(cls, i, j):
        return super().__new__(cls, (int(i), int(j)))

    @property
    def i(self):
        return self[0]

    @property
    def j(self):
        return self[1]

    def __repr__(self):
        return f"({self[0]},{self[1]})"


class Move(tuple):
    """A block rotation: ``anchor`` is the block's top-left cell, ``quarters``
    counts counterclockwise quarter turns (1, 2 or 3)."""

    __slots__ = ()

    def __new__(cls, anchor, quarters):
        return super().__new__(cls, (Coord(*anchor), int(quarters)))

    @property
    def anchor(self):
        return self[0]

    @property
    def quarters(self):
        return self[1]

    def __repr__(self):
        return f"({self[0][0]},{self[0][1]}):{self[1]}"


MoveSequence = tuple  # tuple of Move, first move applied first


@dataclass(frozen=True)
class PuzzleSpec:
    """Puzzle shape: ``n`` rows, ``m`` columns, rotated blocks of size ``b``."""

    n: int
    m: int
    b: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"board must be at least 1x1, got {self.n}x{self.m}")
        if self.b < 1:
            raise ValueError(f"block size must be positive, got {self.b}")
        if self.b > min(self.n, self.m):
            raise ValueError(
                f"block size {self.b} does not fit a {self.n}x{self.m} board"
            )

    @property
    def cells(self):
        return self.n * self.m

    def cell_index(self, cell):
        """Row-major 0-based index of a 1-based coordinate."""
        return (cell[0] - 1) * self.m + (cell[1] - 1)

    def index_cell(self, k):
        """Inverse of :meth:`cell_index`."""
        return Coord(k // self.m + 1, k % self.m + 1)

    def all_cells(self):
        """All coordinates in row-major order."""
        return tuple(
            Coord(i, j) for i in range(1, self.n + 1) for j in range(1, self.m + 1)
        )

    def in_bounds(self, cell):
        return 1 <= cell[0] <= self.n and 1 <= cell[1] <= self.m

    def anchor_legal(self, anchor):
        """True if a ``b x b`` block anchored here stays on the board."""
        return 1 <= anchor[0] <= self.n - self.b + 1 and 1 <= anchor[1] <= self.m - self.b + 1


@dataclass(frozen=True)
class Board:
    """An arrangement of the values ``1 .. n*m``, stored row-major."""

    spec: PuzzleSpec
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.spec.cells:
            raise ValueError(
                f"board needs {self.spec.cells} values, got {len(self.values)}"
            )
        if set(self.values) != set(range(1, self.spec.cells + 1)):
            raise ValueError("board values must be a permutation of 1..n*m")

    def value_at(self, cell):
        return self.values[self.spec.cell_index(cell)]

    def position_of(self, value):
        """Coordinate currently holding ``value``."""
        return self.spec.index_cell(self.values.index(value))

    @property
    def grid(self):
        """Values as a tuple of row tuples."""
        m = self.spec.m
        return tuple(
            self.values[r * m : (r + 1) * m] for r in range(self.spec.n)
        )

    def is_solved(self):
        return self.values == solved_board(self.spec).values


@lru_cache(maxsize=None)
def solved_board(spec):
    """The board with value ``(i-1)*m + j`` at every cell ``(i, j)``."""
    return Board(spec, tuple(range(1, spec.cells + 1)))


def _check_move(spec, move):
    anchor, q = move
    if spec.b < 2:
        raise ValueError("no rotations exist when b=1")
    if q not in (1, 2, 3):
        raise ValueError(f"quarters must be 1, 2 or 3, got {q}")
    if not spec.anchor_legal(anchor):
        raise ValueError(f"anchor {anchor} is illegal on a {spec.n}x{spec.m} board with b={spec.b}")


@lru_cache(maxsize=None)
def move_position_map(spec, move):
    """Where each cell's content lands: a tuple ``pi`` with ``pi[src] = dst``
    over row-major cell indices."""
    _check_move(spec, move)
    (ar, ac), q = move
    b = spec.b
    pi = list(range(spec.cells))
    for oi in range(b):
        for oj in range(b):
            di, dj = oi, oj
            for _ in range(q):
                di, dj = b - 1 - dj, di
            src = spec.cell_index((ar + oi, ac + oj))
            dst = spec.cell_index((ar + di, ac + dj))
            pi[src] = dst
    return tuple(pi)


@lru_cache(maxsize=None)
def move_gather_index(spec, move):
    """Gather form of the same map: ``new[k] = old[g[k]]``.  Returned as a
    read-only numpy index array for fast repeated application."""
    pi = move_position_map(spec, move)
    g = np.empty(len(pi), dtype=np.int32)
    for src, dst in enumerate(pi):
        g[dst] = src
    g.setflags(write=False)
    return g


def apply_move(board, move):
    """Apply one block rotation and return the resulting board."""
    move = Move(*move)
    pi = move_position_map(board.spec, move)
    new = [0] * len(pi)
    for src, v in enumerate(board.values):
        new[pi[src]] = v
    return Board(board.spec, tuple(new))


def apply_sequence(board, seq):
    """Apply a move sequence left to right.

    Raises ``ValueError`` identifying the offending index if any move in the
    sequence is illegal; the board is unchanged in that case (boards are
    immutable, so no partial application can leak out).
    """
    seq = tuple(Move(*mv) for mv in seq)
    for k, mv in enumerate(seq):
        try:
            _check_move(board.spec, mv)
        except ValueError as e:
            raise ValueError(f"illegal move at index {k}: {e}") from None
    if not seq:
        return board
    arr = np.array(board.values, dtype=np.int32)
    for mv in seq:
        arr = arr[move_gather_index(board.spec, mv)]
    return Board(board.spec, tuple(int(v) for v in arr))


def sequence_position_map(spec, seq):
    """Composite position map of a sequence: ``pi[src] = dst`` after all moves."""
    pi = list(range(spec.cells))
    for mv in seq:
        step = move_position_map(spec, Move(*mv))
        pi = [step[d] for d in pi]
    return tuple(pi)


def invert_sequence(seq):
    """The sequence undoing ``seq``: reversed order, each rotation mirrored
    (``q`` becomes ``4 - q``)."""
    return tuple(Move(mv[0], 4 - mv[1]) for mv in reversed(tuple(Move(*m) for m in seq)))


@lru_cache(maxsize=None)
def legal_moves(spec):
    """All legal moves: anchors in row-major order, quarters ascending.

    Empty for ``b = 1`` (rotating a single cell does nothing, so such moves
    are not legal at all).
    """
    if spec.b < 2:
        return ()
    return tuple(
        Move((i, j), q)
        for i in range(1, spec.n - spec.b + 2)
        for j in range(1, spec.m - spec.b + 2)
        for q in (1, 2, 3)
    )


def scramble(spec, k, seed):
    """Board reached from solved by ``k`` uniformly drawn legal moves.

    Returns ``(board, moves)``; deterministic for a given seed.
    """
    if k < 0:
        raise ValueError("scramble length must be >= 0")
    pool = legal_moves(spec)
    if k > 0 and not pool:
        raise ValueError(f"no legal moves exist for {spec}")
    rng = random.Random(seed)
    seq = tuple(rng.choice(pool) for _ in range(k))
    return apply_sequence(solved_board(spec), seq), seq


# ---------------------------------------------------------------------------
# permutation and parity tools
# ---------------------------------------------------------------------------

def as_permutation(board):
    """The permutation taking each value's solved position index to its
    current position index (0-based row-major indices)."""
    pi = [0] * board.spec.cells
    for pos, v in enumerate(board.values):
        pi[v - 1] = pos
    return tuple(pi)


def permutation_sign(perm):
    """Sign via cycle counting: ``(-1) ** (size - number_of_cycles)``."""
    size = len(perm)
    seen = [False] * size
    cycles = 0
    for start in range(size):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return 1 if (size - cycles) % 2 == 0 else -1


def cell_parity(cell):
    """Checkerboard class of a cell: 0 when ``i + j`` is even, else 1."""
    return (cell[0] + cell[1]) % 2


def parity_respecting(board):
    """True when every value sits on a cell of the same checkerboard class
    as its solved home."""
    spec = board.spec
    for pos, v in enumerate(board.values):
        if cell_parity(spec.index_cell(pos)) != cell_parity(spec.index_cell(v - 1)):
            return False
    return True


def parity_class_cells(spec, parity):
    """Row-major indices of the cells in one checkerboard class."""
    return tuple(
        k for k in range(spec.cells) if cell_parity(spec.index_cell(k)) == parity
    )


def within_parity_sign(board, parity):
    """Sign of the permutation restricted to one checkerboard class.

    Only defined for parity-respecting boards; raises ``ValueError``
    otherwise.
    """
    if not parity_respecting(board):
        raise ValueError("within-class sign undefined: board is not parity-respecting")
    spec = board.spec
    cells = parity_class_cells(spec, parity)
    rank = {k: r for r, k in enumerate(cells)}
    full = as_permutation(board)
    restricted = tuple(rank[full[k]] for k in cells)
    return permutation_sign(restricted)


# ---------------------------------------------------------------------------
# whole-board symmetries
# ---------------------------------------------------------------------------

def transpose(board):
    """Swap rows and columns; values are carried along unrelabelled."""
    spec = board.spec
    new_spec = PuzzleSpec(spec.m, spec.n, spec.b)
    vals = [0] * spec.cells
    for i in range(1, spec.n + 1):
        for j in range(1, spec.m + 1):
            vals[new_spec.cell_index((j, i))] = board.value_at((i, j))
    return Board(new_spec, tuple(vals))


def reflect_horizontal(board):
    """Mirror left-right; values are carried along unrelabelled."""
    spec = board.spec
    vals = [0] * spec.cells
    for i in range(1, spec.n + 1):
        for j in range(1, spec.m + 1):
            vals[spec.cell_index((i, spec.m + 1 - j))] = board.value_at((i, j))
    return Board(spec, tuple(vals))


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------
#
# Board:  first line "n m b", then n lines of m space-separated values.
# Moves:  whitespace-separated tokens "(r,c):k" with k in {1,2,3}.

class BoardFormatError(ValueError):
    pass


def serialize_board(board):
    spec = board.spec
    lines = [f"{spec.n} {spec.m} {spec.b}"]
    for row in board.grid:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_board(text):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise BoardFormatError("empty board text")
    head = lines[0].split()
    if len(head) != 3:
        raise BoardFormatError(f"header must be 'n m b', got {lines[0]!r}")
    try:
        n, m, b = (int(x) for x in head)
        spec = PuzzleSpec(n, m, b)
    except ValueError as e:
        raise BoardFormatError(f"bad header: {e}") from None
    if len(lines) - 1 != n:
        raise BoardFormatError(f"expected {n} rows, got {len(lines) - 1}")
    vals = []
    for r, ln in enumerate(lines[1:], start=1):
        parts = ln.split()
        if len(parts) != m:
            raise BoardFormatError(f"row {r} has {len(parts)} entries, expected {m}")
        try:
            vals.extend(int(p) for p in parts)
        except ValueError:
            raise BoardFormatError(f"row {r} has a non-integer entry") from None
    try:
        return Board(spec, tuple(vals))
    except ValueError as e:
        raise BoardFormatError(str(e)) from None


_MOVE_TOKEN = re.compile(r"^\((\d+),(\d+)\):([123])$")


def serialize_moves(seq):
    return " ".join(f"({mv[0][0]},{mv[0][1]}):{mv[1]}" for mv in (Move(*m) for m in seq))


def parse_moves(text):
    seq = []
    for tok in text.split():
        m = _MOVE_TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad move token {tok!r}, expected '(r,c):k' with k in 1..3")
        seq.append(Move((int(m.group(1)), int(m.group(2))), int(m.group(3))))
    return tuple(seq)
