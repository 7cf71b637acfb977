"""Move words with small, precisely known effects.

A macro is a fixed sequence of moves on a small "window" board whose net
permutation has been measured once and is relied on forever after: a swap
of two cells here, a three-cycle there, everything else fixed.  The solver
conjugates and translates these words to act anywhere on a larger board.

Two families live here:

* fixed-window words for the small-block puzzles (b = 2, 3, 4), each tied
  to a specific window shape;
* parametric words on the (n, n+1) board with b = n — the belt cycle ``C``,
  the belt-escape conjugator ``A``, the hidden three-cycle ``phi`` and the
  column evacuation words — which power the wide-block placement engine.

Local coordinates are always 1-based within the window; an
:class:`Embedding` transports local cells and moves into a host board,
optionally mirrored left-right (mirroring maps a counterclockwise word to
its clockwise twin, which is how odd-block machinery reaches the other
checkerboard class).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    Coord,
    Move,
    PuzzleSpec,
    cell_parity,
    invert_sequence,
    sequence_position_map,
)


@dataclass(frozen=True)
class Embedding:
    """Placement of a rows x cols window inside a host board.

    ``origin`` is the host cell carrying local (1,1).  With ``reflected``
    set, local coordinates are mirrored left-right before translation, so
    local column ``j`` lands on host column ``origin.j + cols - j``; anchors
    of ``b x b`` blocks shift accordingly and quarter turns flip direction.
    """

    origin: Coord
    rows: int
    cols: int
    reflected: bool = False

    def host_cell(self, cell):
        i, j = cell
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"local cell {cell} outside {self.rows}x{self.cols} window")
        if self.reflected:
            j = self.cols + 1 - j
        return Coord(self.origin[0] + i - 1, self.origin[1] + j - 1)

    def local_cell(self, cell):
        i = cell[0] - self.origin[0] + 1
        j = cell[1] - self.origin[1] + 1
        if self.reflected:
            j = self.cols + 1 - j
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"host cell {cell} outside embedded window")
        return Coord(i, j)

    def host_move(self, move, b):
        (r, c), q = move
        if self.reflected:
            c = self.cols - b + 2 - c
            q = 4 - q
        return Move((self.origin[0] + r - 1, self.origin[1] + c - 1), q)

    def host_sequence(self, seq, b):
        return tuple(self.host_move(mv, b) for mv in seq)

    def fits(self, spec):
        return (
            self.origin[0] >= 1
            and self.origin[1] >= 1
            and self.origin[0] + self.rows - 1 <= spec.n
            and self.origin[1] + self.cols - 1 <= spec.m
        )


def identity_embedding(spec):
    return Embedding(Coord(1, 1), spec.n, spec.m)


# ---------------------------------------------------------------------------
# word notation
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"([A-Z])([0-9]?)('?)(?![0-9'])")


def parse_word(word, anchors):
    """Parse ``"X Y2 Z'"``-style notation into local moves.

    Each letter names an anchor; an optional digit is the quarter-turn
    count and a prime inverts (``X'`` is three quarters, ``Y2'`` is ``Y2``).
    """
    stripped = word.replace(" ", "")
    moves = []
    consumed = 0
    for m in _TOKEN.finditer(stripped):
        if m.start() != consumed:
            raise ValueError(f"bad word syntax near {stripped[consumed:]!r}")
        consumed = m.end()
        letter, digit, prime = m.groups()
        if letter not in anchors:
            raise ValueError(f"unknown anchor letter {letter!r}")
        q = int(digit) if digit else 1
        if not 1 <= q <= 3:
            raise ValueError(f"quarter count must be 1..3, got {q}")
        if prime:
            q = 4 - q
        moves.append(Move(anchors[letter], q))
    if consumed != len(stripped):
        raise ValueError(f"bad word syntax near {stripped[consumed:]!r}")
    return tuple(moves)


def seq_power(seq, k):
    if k < 0:
        return invert_sequence(seq) * (-k)
    return tuple(seq) * k


# ---------------------------------------------------------------------------
# macros: measured words on fixed windows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Macro:
    """A move word on a window board, with its net effect cached."""

    name: str
    window: PuzzleSpec
    moves: tuple

    @property
    def position_map(self):
        return sequence_position_map(self.window, self.moves)

    @property
    def footprint(self):
        """Local cells whose content the macro changes."""
        pi = self.position_map
        return frozenset(
            self.window.index_cell(k) for k, dst in enumerate(pi) if dst != k
        )

    def cycles(self):
        """Nontrivial cycles of the net permutation, as coordinate tuples.

        Each cycle lists positions in content-flow order: the content of
        the first cell moves to the second, and so on around.
        """
        pi = self.position_map
        seen = set()
        out = []
        for start in range(self.window.cells):
            if start in seen or pi[start] == start:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(self.window.index_cell(x))
                x = pi[x]
            out.append(tuple(cyc))
        return tuple(out)

    def embedded(self, emb, host):
        """The same macro transported into a host board via an embedding."""
        if emb.rows != self.window.n or emb.cols != self.window.m:
            raise ValueError(
                f"embedding window {emb.rows}x{emb.cols} does not match "
                f"macro window {self.window.n}x{self.window.m}"
            )
        if not emb.fits(host):
            raise ValueError(f"window at {emb.origin} does not fit {host}")
        return Macro(
            self.name,
            host,
            emb.host_sequence(self.moves, self.window.b),
        )


def _macro(name, n, m, b, word, anchors):
    return Macro(name, PuzzleSpec(n, m, b), parse_word(word, anchors))


def _maybe_embed(macro, emb, host):
    if emb is None:
        return macro
    if host is None:
        raise ValueError("embedding a macro requires the host spec")
    return macro.embedded(emb, host)


@lru_cache(maxsize=None)
def _swap_2n2_local():
    return _macro(
        "pair-swap-2x4",
        2, 4, 2,
        "X Y Z' Y2 X' Z' Y Z2 Y'",
        {"X": Coord(1, 1), "Y": Coord(1, 2), "Z": Coord(1, 3)},
    )


def swap_2n2(emb=None, host=None):
    """b=2 word on a 2x4 window: exchanges exactly two cells — the window's
    last column — leaving the other six in place."""
    return _maybe_embed(_swap_2n2_local(), emb, host)


@lru_cache(maxsize=None)
def _swap_b2_local():
    return _macro(
        "pair-swap-3x3",
        3, 3, 2,
        "X Y' X' Y Z",
        {"X": Coord(2, 1), "Y": Coord(1, 2), "Z": Coord(2, 2)},
    )


def swap_b2(emb=None, host=None):
    """b=2 word on a 3x3 window: exchanges exactly the cells (2,3) and
    (3,3), leaving the other seven in place."""
    return _maybe_embed(_swap_b2_local(), emb, host)


@lru_cache(maxsize=None)
def swap_343_p0():
    """b=3 word on the 3x4 window whose class-0 action is the bare
    transposition {(2,4),(3,3)}; the class-1 side effect is the matched
    triple transposition (the outer-automorphism image of a 2-cycle), so
    no other class-0 cell moves."""
    return _macro(
        "class0-swap-3x4",
        3, 4, 3,
        "X Y X' Y' X Y' X Y X Y X",
        {"X": Coord(1, 1), "Y": Coord(1, 2)},
    )


@lru_cache(maxsize=None)
def macros_3n3():
    """The three 3x5-window words for b=3 boards.

    Measured effects (classes by local coordinate sum, (1,1) in class 0):

    * ``p0_swap``  — one bare class-1 transposition {(2,5),(3,4)}; side
      effects are three disjoint transpositions on class 0.
    * ``p1_cycle`` — a clean class-1 three-cycle fixing class 0 pointwise.
    * ``p1_swap``  — the same word as ``p0_swap`` translated one anchor
      left, so the roles flip: one bare class-0 transposition
      {(2,4),(3,3)} with the side effects on class 1.

    The original writeup names the swaps after the class it uses them on,
    which is the class carrying the *side effects*; the names are kept but
    the cycle structure above (and in the tests) is the measured truth.
    """
    anchors = {"X": Coord(1, 1), "Y": Coord(1, 2), "Z": Coord(1, 3)}
    return {
        "p0_swap": _macro("class1-swap-3x5", 3, 5, 3, "Y Z Y' Z' Y Z2 Y' Z'", anchors),
        "p1_cycle": _macro("class1-cycle-3x5", 3, 5, 3, "X Z X' Z' X Z X' Z'", anchors),
        "p1_swap": _macro("class0-swap-3x5", 3, 5, 3, "X Y X' Y' X Y2 X' Y'", anchors),
    }


@lru_cache(maxsize=None)
def _three_cycle_b3_local():
    return _macro(
        "triple-cycle-4x4",
        4, 4, 3,
        "A D A' D' C' D A' D' A C",
        {"A": Coord(1, 1), "B": Coord(1, 2), "C": Coord(2, 1), "D": Coord(2, 2)},
    )


def three_cycle_b3(emb=None, host=None):
    """b=3 word on a 4x4 window: a clean three-cycle of the class-1 cells
    (1,2) -> (3,4) -> (2,3), fixing everything else in the window.  Reach
    the other checkerboard class by reflecting or translating the window."""
    return _maybe_embed(_three_cycle_b3_local(), emb, host)


@lru_cache(maxsize=None)
def _three_cycle_b4_local():
    base = parse_word(
        "X Y2 X' Y X' Y2", {"X": Coord(1, 1), "Y": Coord(1, 2)}
    )
    return Macro("triple-cycle-4x5", PuzzleSpec(4, 5, 4), seq_power(base, 35))


def three_cycle_b4(emb=None, host=None):
    """b=4 word on a 4x5 window: a six-move pattern repeated 35 times whose
    net effect is the single three-cycle (1,2) -> (3,3) -> (2,1)."""
    return _maybe_embed(_three_cycle_b4_local(), emb, host)


# ---------------------------------------------------------------------------
# parametric words on the (n, n+1) board with b = n
# ---------------------------------------------------------------------------

def gen_XY(n):
    """The two block moves of the (n, n+1) board: X anchored at column 1,
    Y at column 2, both one counterclockwise quarter."""
    return Move((1, 1), 1), Move((1, 2), 1)


def belt(n):
    """The boundary belt: down the first column, along the bottom row,
    up the last column — 3n - 1 cells."""
    cells = [Coord(i, 1) for i in range(1, n + 1)]
    cells += [Coord(n, j) for j in range(2, n + 1)]
    cells += [Coord(n - t, n + 1) for t in range(0, n)]
    return tuple(cells)


@lru_cache(maxsize=None)
def cycle(n):
    """The belt cycle C = (YX)^4: shifts belt contents forward n-3 places
    (in belt order) and scrambles the interior."""
    X, Y = gen_XY(n)
    return (Y, X) * 4


@lru_cache(maxsize=None)
def conjugator_A(n):
    """The belt-escape word A: moves all belt cells except (n, n+1) off
    the belt (for n >= 5), so C-conjugates of interior effects stay clean."""
    X, Y = gen_XY(n)
    Xi, Yi = Move((1, 1), 3), Move((1, 2), 3)
    return (X, Y, Y, X, Yi, Xi)


@lru_cache(maxsize=None)
def phi_three_cycle(n):
    """The hidden three-cycle phi = C (A C A') C' (A C' A'): 56 moves whose
    net effect is a single three-cycle of interior cells."""
    C = cycle(n)
    A = conjugator_A(n)
    Ci, Ai = invert_sequence(C), invert_sequence(A)
    return C + A + C + Ai + Ci + A + Ci + Ai


@lru_cache(maxsize=None)
def phi_support(n):
    """The three cells phi cycles, in content-flow order (the content of
    the first moves to the second)."""
    spec = PuzzleSpec(n, n + 1, n)
    pi = sequence_position_map(spec, phi_three_cycle(n))
    moved = [k for k, dst in enumerate(pi) if dst != k]
    if len(moved) != 3:
        raise AssertionError(f"phi on n={n} moved {len(moved)} cells, expected 3")
    a = moved[0]
    b = pi[a]
    c = pi[b]
    if pi[c] != a:
        raise AssertionError("phi support is not a three-cycle")
    return tuple(spec.index_cell(k) for k in (a, b, c))


@lru_cache(maxsize=None)
def evacuate_word(n):
    """Column-evacuation word: fixes the first-column cells the placement
    engine cares about and clears the rest of column 1 out of the way.

    Even n: fixes (1,1) and (2,1), sends (i,1) to (i,3) for 3 <= i <= n.
    Odd n:  fixes (1,1) and (3,1), sends (2,1) to (n-2, n+1) and (i,1) to
    (i-1, 4) for 4 <= i <= n.
    """
    anchors = {"X": Coord(1, 1), "Y": Coord(1, 2)}
    if n % 2 == 0:
        return parse_word("X Y2 X' Y' X Y' X'", anchors)
    return parse_word("X Y2 X Y X Y' X2 Y' X Y' X'", anchors)


def translate_macro(mac, emb, host=None):
    """Transport a macro into a host board through an embedding.

    Without an explicit host spec, the smallest board containing the
    embedded window is used.
    """
    if host is None:
        host = PuzzleSpec(
            emb.origin[0] + emb.rows - 1,
            emb.origin[1] + emb.cols - 1,
            mac.window.b,
        )
    return mac.embedded(emb, host)


def catalog(n=5):
    """All fixed-window macros plus the parametric family instantiated at
    one n, as Macro objects (used by the CLI dump)."""
    spec = PuzzleSpec(n, n + 1, n)
    entries = [
        swap_2n2(),
        swap_b2(),
        swap_343_p0(),
        *macros_3n3().values(),
        three_cycle_b3(),
        three_cycle_b4(),
        Macro(f"belt-cycle-n{n}", spec, cycle(n)),
        Macro(f"belt-escape-n{n}", spec, conjugator_A(n)),
        Macro(f"hidden-three-cycle-n{n}", spec, phi_three_cycle(n)),
        Macro(f"column-evacuation-n{n}", spec, evacuate_word(n)),
    ]
    return entries
