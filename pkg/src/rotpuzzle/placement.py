"""Constructive placement engine for the (n, n+1) board with block size n.

Everything here is purely positional: the word generators consume cell
coordinates, never board contents, so a word computed for three cells can be
applied to any board where the values of interest sit on those cells.

The pieces, bottom up:

* ``spiral_word`` drives one cell to the board's center square; the squared
  distance from the cell to the Y-block's rotation center strictly decreases
  at every X step (``trace`` exposes the sequence for the property tests).
* ``send_to_word`` sends one cell to an arbitrary square (same checkerboard
  class when n is odd) by composing a spiral with a reversed phantom spiral
  computed from the goal square.
* ``spiral_cycle_word`` parks three cells on the fixed parking squares.
  While the second and third travel, the already-parked ones sit in the
  first column; whenever the traveling spiral needs an X move, the guards
  are first hidden in the last column by a belt cycle, and they are restored
  before any Y move.  Every hide/unhide asserts the traveling cell is off
  the belt, so a violated invariant fails loudly instead of corrupting the
  word.
* ``cycle3_word`` produces a net three-cycle of any three cells (same class
  when n is odd): park the cells, splice in the 56-move hidden three-cycle
  conjugated onto the parking squares, and unwind.
"""
from functools import lru_cache

from .core import (
    Coord,
    Move,
    PuzzleSpec,
    cell_parity,
    invert_sequence,
    move_position_map,
    sequence_position_map,
)
from .macros import (
    Embedding,
    belt,
    cycle,
    evacuate_word,
    parse_word,
    phi_support,
    phi_three_cycle,
)

_X_ANCHOR = Coord(1, 1)
_Y_ANCHOR = Coord(1, 2)
_ANCHORS = {"X": _X_ANCHOR, "Y": _Y_ANCHOR}


@lru_cache(maxsize=None)
def board_spec(n):
    """The (n, n+1) board with block size n — the arena for this module."""
    return PuzzleSpec(n, n + 1, n)


def center_square(n):
    """The spiral's terminal square: nearest to the Y block's center."""
    if n % 2:
        return Coord((n + 1) // 2, (n + 1) // 2)
    return Coord(n // 2, n // 2 + 1)


def parking_squares(n):
    """Where the three-cycle machinery parks its cells (one class for odd n)."""
    if n % 2:
        return (Coord(1, 1), Coord(3, 1), center_square(n))
    return (Coord(1, 1), Coord(2, 1), center_square(n))


def corner_target(n):
    """The belt square the second traveler is staged on before parking."""
    return Coord(n - 1, n + 1) if n % 2 else Coord(n, n + 1)


def mirror_cell(n, cell):
    """Reflect a cell across the board's vertical axis (swaps classes for odd n)."""
    return Coord(cell[0], n + 2 - cell[1])


@lru_cache(maxsize=None)
def _mirror_embedding(n):
    return Embedding(Coord(1, 1), n, n + 1, reflected=True)


def mirror_word(n, word):
    """Conjugate a word by the horizontal reflection of the (n, n+1) board."""
    return _mirror_embedding(n).host_sequence(tuple(word), n)


def center_distance_sq(n, cell):
    """Exact squared distance from a cell to the Y block's rotation center,
    in doubled coordinates (so half-integer centers stay integral)."""
    di = 2 * cell[0] - (n + 1)
    dj = 2 * cell[1] - (n + 3)
    return di * di + dj * dj


@lru_cache(maxsize=None)
def _min_ring(n):
    # the squares of minimum positive distance to the Y center: the four
    # orthogonal neighbors (odd n) or the central 2x2 of the Y block (even n)
    if n % 2:
        ci, cj = (n + 1) // 2, (n + 3) // 2
        return frozenset(
            {Coord(ci - 1, cj), Coord(ci + 1, cj), Coord(ci, cj - 1), Coord(ci, cj + 1)}
        )
    r, c = n // 2, n // 2 + 1
    return frozenset({Coord(r, c), Coord(r, c + 1), Coord(r + 1, c), Coord(r + 1, c + 1)})


def _in_pre_turn_quadrant(n, cell, star):
    # where the traveler must sit before the X turn: the lower-left quadrant
    # of the Y block for the plain spiral, the upper-left for the star variant
    i, j = cell
    if not 2 <= j <= (n + 3) // 2:
        return False
    if star:
        return 1 <= i <= (n + 1) // 2
    return n // 2 + 1 <= i <= n


@lru_cache(maxsize=None)
def _belt_set(n):
    return frozenset(belt(n))


@lru_cache(maxsize=None)
def _hide_word(n):
    # park the first-column guards in the last column: one inverse belt
    # cycle shifts them n-3 places back, enough for n >= 6; n = 5 needs two
    word = invert_sequence(cycle(n))
    return word + word if n == 5 else word


@lru_cache(maxsize=None)
def _unhide_word(n):
    return invert_sequence(_hide_word(n))


def _drive_to_center(n, pos, emit, *, star, trace=None):
    """Run the spiral loop, sending moves through ``emit`` (which returns the
    traveler's updated position).  Returns with the traveler on the center
    square."""
    u = center_square(n)
    ring = _min_ring(n)
    turn = Move(_X_ANCHOR, 3 if star else 1)
    y = Move(_Y_ANCHOR, 1)
    budget = 8 * (n + 1) * (n + 1)
    steps = 0

    def step(mv, current):
        nonlocal steps
        steps += 1
        if steps > budget:
            raise RuntimeError(f"spiral exceeded its {budget}-move budget on n={n}")
        return emit(mv)

    while True:
        if pos in ring:
            while pos != u:
                pos = step(y, pos)
            return pos
        while not _in_pre_turn_quadrant(n, pos, star):
            pos = step(y, pos)
        before = center_distance_sq(n, pos)
        if trace is not None:
            trace.append(before)
        pos = step(turn, pos)
        if center_distance_sq(n, pos) >= before:
            raise RuntimeError(
                f"spiral distance failed to drop across an X turn on n={n}"
            )


def spiral_word(n, start, *, star=False, trace=None):
    """Word driving the content of ``start`` to the center square.

    Returns ``(moves, end)`` with ``end == center_square(n)``.  For odd n the
    start must share the center's checkerboard class.  ``trace``, if a list,
    collects the squared center distance before each X turn — a strictly
    decreasing sequence.
    """
    if trace is None and isinstance(start, Coord):
        return _spiral_cached(n, start, star)
    return _spiral_uncached(n, Coord(*start), star, trace)


@lru_cache(maxsize=None)
def _spiral_cached(n, start, star):
    return _spiral_uncached(n, start, star, None)


def _spiral_uncached(n, start, star, trace):
    spec = board_spec(n)
    if n < 5:
        raise ValueError("the spiral machinery needs n >= 5")
    if not spec.in_bounds(start):
        raise ValueError(f"start {start} outside the {n}x{n + 1} board")
    if n % 2 and cell_parity(start) != cell_parity(center_square(n)):
        raise ValueError(
            f"start {start} and the center square lie in different classes on odd n"
        )
    moves = []
    pos = start

    def emit(mv):
        nonlocal pos
        moves.append(mv)
        pi = move_position_map(spec, mv)
        pos = spec.index_cell(pi[spec.cell_index(pos)])
        return pos

    if pos.j == 1:
        emit(Move(_X_ANCHOR, 2))
    end = _drive_to_center(n, pos, emit, star=star, trace=trace)
    return tuple(moves), end


@lru_cache(maxsize=None)
def _phantom_from(n, cell, star):
    # the fixed word a phantom starting on ``cell`` would spiral along;
    # its inverse carries the center square's content out to ``cell``
    word, _ = spiral_word(n, cell, star=star)
    return word


def send_to_word(n, start, goal):
    """Word carrying the content of ``start`` to ``goal`` (unguarded).

    Composes a spiral into the center with the reverse of the goal's phantom
    spiral.  For odd n both cells must share a checkerboard class; class-1
    cells are handled by mirroring.
    """
    start, goal = Coord(*start), Coord(*goal)
    if start == goal:
        return ()
    if n % 2:
        if cell_parity(start) != cell_parity(goal):
            raise ValueError("cannot move a cell across classes on an odd board")
        if cell_parity(start) == 1:
            inner = send_to_word(n, mirror_cell(n, start), mirror_cell(n, goal))
            return mirror_word(n, inner)
    forward, _ = spiral_word(n, start)
    return forward + invert_sequence(_phantom_from(n, goal, False))


@lru_cache(maxsize=None)
def _corner_approach(n):
    # W: the star spiral a phantom runs from the corner target to the center.
    # Its inverse stages the second traveler onto the corner target.  W must
    # open with two Y moves — the guards rely on ending the reversed word
    # unhidden, with the traveler crossing the belt only after the final
    # guard cycle.
    word = _phantom_from(n, corner_target(n), True)
    if word[0].anchor != _Y_ANCHOR or word[1].anchor != _Y_ANCHOR:
        raise AssertionError(f"corner approach on n={n} does not open with Y moves")
    return word


@lru_cache(maxsize=None)
def _first_cell_exit(n):
    # R: the phantom spiral from (1,1); its inverse parks the first traveler
    return _phantom_from(n, Coord(1, 1), False)


@lru_cache(maxsize=None)
def _column_takeout():
    # lifts a traveler out of the first column; net effect on (1,1) is none
    return parse_word("X Y X'", _ANCHORS)


@lru_cache(maxsize=None)
def _corner_parking():
    # carries the staged corner target into the first column; (1,1) returns home
    return parse_word("X Y' X'", _ANCHORS)


class _GuardedPhase:
    """One traversal of the guarded spiral machinery.

    Tracks a set of cells through every emitted move.  ``protected`` keys
    must sit on their parking squares whenever the phase is at rest;
    ``routed`` is the traveling cell.  X moves hide the guards in the last
    column via a belt cycle first, Y moves restore them, and every guard
    cycle asserts the traveler is off the belt.
    """

    def __init__(self, n, moves, tracked, protected, routed):
        self.n = n
        self.spec = board_spec(n)
        self.moves = moves
        self.tracked = tracked
        self.protected = tuple(protected)
        self.routed = routed
        self.homes = {k: tracked[k] for k in protected}
        self.hidden = False

    def advance(self, mv):
        pi = move_position_map(self.spec, mv)
        for key, cell in self.tracked.items():
            self.tracked[key] = self.spec.index_cell(pi[self.spec.cell_index(cell)])
        self.moves.append(mv)

    def raw(self, word):
        """Emit a self-contained word (guards must not be hidden)."""
        if self.hidden:
            raise AssertionError("raw word emitted while guards are hidden")
        for mv in word:
            self.advance(mv)

    def assert_parked(self):
        for key in self.protected:
            if self.tracked[key] != self.homes[key]:
                raise AssertionError(
                    f"guard {self.homes[key]} displaced to {self.tracked[key]}"
                )

    def _guard_cycle(self, word):
        if self.tracked[self.routed] in _belt_set(self.n):
            raise AssertionError(
                f"guard cycle would displace the traveler at {self.tracked[self.routed]}"
            )
        for mv in word:
            self.advance(mv)

    def emit(self, mv):
        if mv.anchor == _X_ANCHOR:
            if not self.hidden:
                self._guard_cycle(_hide_word(self.n))
                self.hidden = True
                last = self.spec.m
                for key in self.protected:
                    if self.tracked[key].j != last:
                        raise AssertionError("guard not hidden in the last column")
        else:
            if self.hidden:
                self._guard_cycle(_unhide_word(self.n))
                self.hidden = False
                self.assert_parked()
        self.advance(mv)
        return self.tracked[self.routed]

    def finish(self):
        if self.hidden:
            self._guard_cycle(_unhide_word(self.n))
            self.hidden = False
        self.assert_parked()


def spiral_cycle_word(n, triple):
    """Word parking the three given cells on ``parking_squares(n)``, in order.

    Pure position routing: content of ``triple[k]`` ends on the k-th parking
    square.  For odd n all three cells must lie in the even class (the class
    of the parking squares); ``cycle3_word`` mirrors the odd class before
    calling in here.
    """
    spec = board_spec(n)
    cells = tuple(Coord(*c) for c in triple)
    if n < 5:
        raise ValueError("the parking machinery needs n >= 5")
    if len(set(cells)) != 3:
        raise ValueError("parking needs three distinct cells")
    for c in cells:
        if not spec.in_bounds(c):
            raise ValueError(f"cell {c} outside the {n}x{n + 1} board")
    u1, u2, u3 = parking_squares(n)
    if n % 2 and any(cell_parity(c) != cell_parity(u1) for c in cells):
        raise ValueError("odd boards park even-class cells; mirror the odd class")

    moves = []
    tracked = {1: cells[0], 2: cells[1], 3: cells[2]}

    def advance_word(word):
        for mv in word:
            pi = move_position_map(spec, mv)
            for key, cell in tracked.items():
                tracked[key] = spec.index_cell(pi[spec.cell_index(cell)])
            moves.append(mv)

    # First traveler: plain spiral to the center, then ride the reversed
    # (1,1) phantom out.  Nothing is parked yet, so no guards.
    if tracked[1] != u1:
        word, _ = spiral_word(n, tracked[1])
        advance_word(word)
        advance_word(invert_sequence(_first_cell_exit(n)))
        if tracked[1] != u1:
            raise AssertionError("first traveler missed its parking square")

    # Second traveler: guarded star spiral to the center, reversed corner
    # phantom out to the staging corner, then a fixed three-move parking.
    if tracked[2] != u2:
        phase = _GuardedPhase(n, moves, tracked, (1,), 2)
        if tracked[2] != corner_target(n):
            if tracked[2].j == 1:
                phase.raw(_column_takeout())
                phase.assert_parked()
            _drive_to_center(n, tracked[2], phase.emit, star=True)
            for mv in invert_sequence(_corner_approach(n)):
                phase.emit(mv)
            if tracked[2] != corner_target(n):
                raise AssertionError("second traveler missed the staging corner")
        phase.finish()
        phase.raw(_corner_parking())
        phase.assert_parked()
        if tracked[2] != u2:
            raise AssertionError("second traveler missed its parking square")

    # Third traveler: evacuate the first column if needed, then a guarded
    # star spiral straight to the center, which is its parking square.
    if tracked[3] != u3:
        phase = _GuardedPhase(n, moves, tracked, (1, 2), 3)
        if tracked[3].j == 1:
            phase.raw(evacuate_word(n))
            phase.assert_parked()
            if tracked[3].j == 1:
                raise AssertionError("column evacuation left the traveler in place")
        _drive_to_center(n, tracked[3], phase.emit, star=True)
        phase.finish()
        if tracked[3] != u3:
            raise AssertionError("third traveler missed its parking square")

    return tuple(moves)


@lru_cache(maxsize=None)
def parking_cycle_word(n):
    """Fixed word three-cycling the parking squares' contents (u1 -> u2 ->
    u3 -> u1) and fixing every other cell.

    Built by conjugating the hidden belt three-cycle onto the parking
    squares.  For odd n the belt three-cycle's support lies in the odd
    class while the parking squares are even, so the mirrored word (whose
    support is the mirrored, even-class triple) is conjugated instead.
    """
    support = phi_support(n)
    word = phi_three_cycle(n)
    if n % 2:
        support = tuple(mirror_cell(n, c) for c in support)
        word = mirror_word(n, word)
    staging = spiral_cycle_word(n, support)
    combined = invert_sequence(staging) + word + staging

    spec = board_spec(n)
    pi = sequence_position_map(spec, combined)
    u1, u2, u3 = parking_squares(n)
    expect = {u1: u2, u2: u3, u3: u1}
    for k, dst in enumerate(pi):
        src = spec.index_cell(k)
        if spec.index_cell(dst) != expect.get(src, src):
            raise AssertionError(f"parking cycle on n={n} is not the bare three-cycle")
    return combined


def cycle3_word(n, cells):
    """Word whose net effect is the bare three-cycle of ``cells``: content of
    the first lands on the second, second on third, third on first; every
    other cell is fixed.  For odd n the cells must share a checkerboard
    class."""
    cells = tuple(Coord(*c) for c in cells)
    if len(set(cells)) != 3:
        raise ValueError("three-cycle needs three distinct cells")
    if n % 2:
        classes = {cell_parity(c) for c in cells}
        if len(classes) != 1:
            raise ValueError(
                "three-cycles on odd boards stay within one checkerboard class"
            )
        if classes == {1}:
            inner = cycle3_word(n, tuple(mirror_cell(n, c) for c in cells))
            return mirror_word(n, inner)
    staging = spiral_cycle_word(n, cells)
    return staging + parking_cycle_word(n) + invert_sequence(staging)


# ---------------------------------------------------------------------------
# board-level wrappers: locate values on a host board, emit host moves
# ---------------------------------------------------------------------------

def _window_of(board, emb):
    if emb.rows + 1 != emb.cols:
        raise ValueError("placement ops need an (n, n+1) window")
    if not emb.fits(board.spec):
        raise ValueError(f"window at {emb.origin} does not fit {board.spec}")
    return emb.rows


def spiral(board, a, emb, variant="normal"):
    """Host moves driving value ``a`` to the window's center square.

    ``variant`` selects the turn direction: ``"normal"`` approaches through
    the lower-left quadrant with X turns, ``"star"`` through the upper-left
    with X' turns.  Odd windows require ``a`` to sit on the center square's
    checkerboard class.
    """
    if variant not in ("normal", "star"):
        raise ValueError(f"unknown spiral variant {variant!r}")
    n = _window_of(board, emb)
    start = emb.local_cell(board.position_of(a))
    word, _ = spiral_word(n, start, star=variant == "star")
    return emb.host_sequence(word, n)


def evacuate_column(board, emb):
    """Host moves clearing the window's first column (below the two fixed
    cells) into other columns; the fixed cells keep their contents."""
    n = _window_of(board, emb)
    return emb.host_sequence(evacuate_word(n), n)


def place_three(board, a1, a2, a3, emb):
    """Host moves parking values ``a1``, ``a2``, ``a3`` on the window's
    three parking squares, in that order."""
    n = _window_of(board, emb)
    triple = tuple(emb.local_cell(board.position_of(a)) for a in (a1, a2, a3))
    return emb.host_sequence(spiral_cycle_word(n, triple), n)


def cycle3(board, sources, emb):
    """Host moves three-cycling the contents of the three ``sources`` host
    cells (first -> second -> third -> first), fixing every other cell."""
    n = _window_of(board, emb)
    local = tuple(emb.local_cell(Coord(*c)) for c in sources)
    return emb.host_sequence(cycle3_word(n, local), n)
