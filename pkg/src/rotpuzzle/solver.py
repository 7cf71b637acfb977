"""Constructive solver: classify, dispatch per branch, emit a move sequence.

Every branch reduces the board with net-effect-certified building blocks —
bare transpositions or bare three-cycles conjugated into position — so each
step provably fixes at least one value without disturbing solved ones.  The
final board is checked by re-application before a result is returned.

Branch map (after orienting so n <= m):

* single block            — zero to three quarter turns
* b = 1                   — already solved or unsolvable
* (2,3,2)                 — path through the 120-state reachability tree
* b = 2 elsewhere         — greedy transposition placement (conjugated
                            pair-swap macro; 2x4 window on two-row hosts,
                            3x3 window otherwise)
* (3,4,3)                 — sort the even class by conjugated transpositions;
                            the odd class is then forced solved (the two
                            classes solve together on this board)
* (3,m,3), m >= 5         — even class by transpositions, odd class by
                            conjugated three-cycles
* b = 3 with n,m >= 4     — greedy three-cycles in 4x4 windows
* b = 4                   — greedy three-cycles in 4x5 windows
* b >= 5                  — greedy three-cycles in (b,b+1) windows via the
                            placement engine, with cross-window routing

Odd b preserves checkerboard classes, so those branches work class by class;
a sign-fixing quarter turn is applied up front when the relevant permutation
sign is odd.
"""
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    Coord,
    Move,
    apply_sequence,
    as_permutation,
    cell_parity,
    invert_sequence,
    legal_moves,
    move_position_map,
    parity_class_cells,
    permutation_sign,
    solved_board,
    within_parity_sign,
)
from .macros import (
    Embedding,
    macros_3n3,
    swap_2n2,
    swap_343_p0,
    swap_b2,
    three_cycle_b3,
    three_cycle_b4,
)
from .placement import cycle3_word
from .solvability import (
    B2_SMALL,
    B2_GENERAL,
    B3_SMALL,
    B3_GENERAL,
    BLOCK_ONE,
    BMOD8_04,
    BMOD8_17,
    BMOD8_26,
    BMOD8_35,
    SINGLE_BLOCK,
    SolvabilityReport,
    classify_spec,
    is_solvable,
    normalize_board,
)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve: a move sequence, or the failed solvability report."""

    solvable: bool
    moves: tuple | None
    report: SolvabilityReport
    stats: dict = field(default_factory=dict)

    @property
    def solved(self):
        return self.solvable


def simplify(seq):
    """Merge adjacent same-anchor moves mod 4, dropping identities.

    Merging cascades (removing a cancelled pair can bring two more same-anchor
    moves together); the result is permutation-equivalent to the input.
    """
    out = []
    for mv in seq:
        anchor, q = mv.anchor, mv.quarters
        while out and out[-1].anchor == anchor:
            q = (q + out.pop().quarters) % 4
            if q == 0:
                break
        if q:
            out.append(Move(anchor, q))
    return tuple(out)


# ---------------------------------------------------------------------------
# conjugator search: BFS over pair / ordered-triple placements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _move_maps(spec):
    return tuple((mv, move_position_map(spec, mv)) for mv in legal_moves(spec))


@lru_cache(maxsize=None)
def _pair_tree(spec, s1, s2):
    """BFS predecessor tree over unordered cell-index pairs from {s1, s2}."""
    start = frozenset((s1, s2))
    pred = {start: None}
    queue = deque([start])
    maps = _move_maps(spec)
    while queue:
        node = queue.popleft()
        for mv, pi in maps:
            nxt = frozenset(pi[k] for k in node)
            if nxt not in pred:
                pred[nxt] = (node, mv)
                queue.append(nxt)
    return pred


@lru_cache(maxsize=None)
def _triple_tree(spec, s1, s2, s3):
    """BFS predecessor tree over ordered cell-index triples from (s1,s2,s3)."""
    start = (s1, s2, s3)
    pred = {start: None}
    queue = deque([start])
    maps = _move_maps(spec)
    while queue:
        node = queue.popleft()
        for mv, pi in maps:
            nxt = (pi[node[0]], pi[node[1]], pi[node[2]])
            if nxt not in pred:
                pred[nxt] = (node, mv)
                queue.append(nxt)
    return pred


def _tree_word(pred, node):
    # word carrying the tree's root placement onto ``node``
    out = []
    while pred[node] is not None:
        node, mv = pred[node]
        out.append(mv)
    out.reverse()
    return tuple(out)


def _conjugated(word_to_target, effect):
    # net effect of ``effect`` transported onto the target placement
    return invert_sequence(word_to_target) + effect + word_to_target


# ---------------------------------------------------------------------------
# working state
# ---------------------------------------------------------------------------

class _Work:
    def __init__(self, board):
        self.board = board
        self.spec = board.spec
        self.moves = []
        self.macro_calls = 0
        self.cycle_calls = 0
        self.prefix_moves = 0

    def emit(self, word):
        if word:
            self.board = apply_sequence(self.board, word)
            self.moves.extend(word)

    def wrong_cells(self):
        solved = solved_board(self.spec)
        return [
            self.spec.index_cell(k)
            for k in range(self.spec.cells)
            if self.board.values[k] != solved.values[k]
        ]


def _sign_prefix(work, *, per_class):
    """Apply the lexicographically first quarter turn when the relevant
    permutation sign is odd (per class for odd b, global otherwise)."""
    if per_class:
        s0 = within_parity_sign(work.board, 0)
        s1 = within_parity_sign(work.board, 1)
        if (s0, s1) == (1, 1):
            return
        if (s0, s1) != (-1, -1):
            raise AssertionError("class signs diverged on a solvable board")
    else:
        if permutation_sign(as_permutation(work.board)) == 1:
            return
    work.emit((legal_moves(work.spec)[0],))
    work.prefix_moves += 1


# ---------------------------------------------------------------------------
# branch: tiny state spaces
# ---------------------------------------------------------------------------

def _solve_single_block(work):
    for q in (1, 2, 3):
        mv = Move((1, 1), q)
        if apply_sequence(work.board, (mv,)).is_solved():
            work.emit((mv,))
            return
    raise AssertionError("single-block board declared solvable but no turn solves it")


@lru_cache(maxsize=None)
def _gather_maps(spec):
    # per move: gather index g with new[k] = old[g[k]]
    out = []
    for mv, pi in _move_maps(spec):
        g = [0] * len(pi)
        for src, dst in enumerate(pi):
            g[dst] = src
        out.append((mv, tuple(g)))
    return tuple(out)


@lru_cache(maxsize=None)
def _state_tree(spec):
    # full reachability tree from the solved state (only used for (2,3,2))
    start = solved_board(spec).values
    pred = {start: None}
    queue = deque([start])
    maps = _gather_maps(spec)
    while queue:
        vals = queue.popleft()
        for mv, g in maps:
            nxt = tuple(vals[i] for i in g)
            if nxt not in pred:
                pred[nxt] = (vals, mv)
                queue.append(nxt)
    return pred


def _solve_by_path(work):
    pred = _state_tree(work.spec)
    node = work.board.values
    if node not in pred:
        raise AssertionError("board declared solvable but missing from the state tree")
    word = _tree_word(pred, node)
    # the tree word builds this board from solved, so its inverse solves it
    work.emit(invert_sequence(word))


# ---------------------------------------------------------------------------
# branch: b = 2 transposition placement
# ---------------------------------------------------------------------------

def _swap_engine(spec):
    if spec.n == 2:
        macro = swap_2n2()
    else:
        macro = swap_b2()
    emb = Embedding(Coord(1, 1), macro.window.n, macro.window.m)
    hosted = macro.embedded(emb, spec)
    (c1, c2), = hosted.cycles()
    return hosted, spec.cell_index(c1), spec.cell_index(c2)


def _solve_b2(work):
    spec = work.spec
    hosted, s1, s2 = _swap_engine(spec)
    pred = _pair_tree(spec, s1, s2)
    solved = solved_board(spec)
    for k in range(spec.cells):
        want = solved.values[k]
        if work.board.values[k] == want:
            continue
        p = spec.cell_index(work.board.position_of(want))
        target = frozenset((p, k))
        word = _tree_word(pred, target)
        work.emit(_conjugated(word, hosted.moves))
        work.macro_calls += 1
        if work.board.values[k] != want:
            raise AssertionError("transposition failed to place its value")
    if not work.board.is_solved():
        raise AssertionError("b=2 placement finished with an unsolved board")


# ---------------------------------------------------------------------------
# branch: b = 3 on three-row hosts
# ---------------------------------------------------------------------------

def _hosted_macro(macro, spec):
    emb = Embedding(Coord(1, 1), macro.window.n, macro.window.m)
    return macro.embedded(emb, spec)


def _sort_class0_by_swaps(work, hosted):
    """Selection-sort the even class with a conjugated bare transposition."""
    spec = work.spec
    bare = [cyc for cyc in hosted.cycles() if cell_parity(cyc[0]) == 0]
    (pair,) = bare
    s1, s2 = (spec.cell_index(c) for c in pair)
    pred = _pair_tree(spec, s1, s2)
    solved = solved_board(spec)
    for cell in parity_class_cells(spec, 0):
        want = solved.values[cell]
        if work.board.values[cell] == want:
            continue
        p = spec.cell_index(work.board.position_of(want))
        word = _tree_word(pred, frozenset((p, cell)))
        work.emit(_conjugated(word, hosted.moves))
        work.macro_calls += 1
        if work.board.values[cell] != want:
            raise AssertionError("class-0 transposition failed to place its value")


def _solve_343(work):
    # sorting the even class forces the odd class solved on this board;
    # a failure here would falsify that linkage, so fail loudly
    hosted = _hosted_macro(swap_343_p0(), work.spec)
    _sort_class0_by_swaps(work, hosted)
    if not work.board.is_solved():
        raise AssertionError(
            "(3,4,3): even class sorted but odd class unsolved — linkage violated"
        )


def _solve_3m3(work):
    spec = work.spec
    _sign_prefix(work, per_class=True)
    trio = macros_3n3()
    _sort_class0_by_swaps(work, _hosted_macro(trio["p1_swap"], spec))
    # odd class: greedy conjugated three-cycles
    hosted = _hosted_macro(trio["p1_cycle"], spec)
    (sup,) = hosted.cycles()
    s = tuple(spec.cell_index(c) for c in sup)
    pred = _triple_tree(spec, *s)
    solved = solved_board(spec)
    for cell in parity_class_cells(spec, 1):
        want = solved.values[cell]
        if work.board.values[cell] == want:
            continue
        p = spec.cell_index(work.board.position_of(want))
        scratch = [
            k
            for k in parity_class_cells(spec, 1)
            if k not in (p, cell) and work.board.values[k] != solved.values[k]
        ]
        if not scratch:
            raise AssertionError("odd class left a lone transposition")
        word = _tree_word(pred, (p, cell, scratch[0]))
        work.emit(_conjugated(word, hosted.moves))
        work.cycle_calls += 1
        if work.board.values[cell] != want:
            raise AssertionError("three-cycle failed to place its value")
    if not work.board.is_solved():
        raise AssertionError("(3,m,3) placement finished with an unsolved board")


# ---------------------------------------------------------------------------
# windowed three-cycles: b = 3 (n,m >= 4), b = 4, b >= 5
# ---------------------------------------------------------------------------

def _window_shape(b):
    if b == 3:
        return 4, 4
    if b == 4:
        return 4, 5
    return b, b + 1


@lru_cache(maxsize=None)
def _window_cycle_table(b):
    """In-window three-cycle machinery for b in (3, 4): the macro plus a BFS
    tree over the placements its support can be carried to."""
    if b == 3:
        macro = three_cycle_b3()
    elif b == 4:
        macro = three_cycle_b4()
    else:
        raise ValueError("table only covers b = 3 and b = 4")
    wspec = macro.window
    (sup,) = macro.cycles()
    s = tuple(wspec.cell_index(c) for c in sup)
    return macro, _triple_tree(wspec, *s)


@lru_cache(maxsize=None)
def _window_cycle_word_cached(b, triple):
    return _window_cycle_word(b, triple)


def _window_cycle_word(b, triple):
    """Word (in window-local moves) whose net effect is the bare three-cycle
    of the three local cells, content flowing first -> second -> third."""
    rows, cols = _window_shape(b)
    if b >= 5:
        return cycle3_word(b, triple)
    macro, pred = _window_cycle_table(b)
    wspec = macro.window
    if b == 3 and cell_parity(triple[0]) == 0:
        # the 4x4 macro's support is odd-class; mirroring the window flips
        # classes (width 4 is even), so even-class triples go through the
        # reflected embedding
        mirror = Embedding(Coord(1, 1), rows, cols, reflected=True)
        mirrored = tuple(Coord(c[0], cols + 1 - c[1]) for c in triple)
        word = _window_cycle_word_cached(b, mirrored)
        return mirror.host_sequence(word, b)
    node = tuple(wspec.cell_index(Coord(*c)) for c in triple)
    if node not in pred:
        raise AssertionError(f"window triple {triple} unreachable for b={b}")
    return _conjugated(_tree_word(pred, node), macro.moves)


class _Router:
    """Move tracked cells between (rows x cols) windows of a host board by
    in-window three-cycles, so a triple can be cycled anywhere."""

    def __init__(self, spec, b):
        self.spec = spec
        self.b = b
        self.rows, self.cols = _window_shape(b)
        if spec.n < self.rows or spec.m < self.cols:
            raise ValueError(
                f"host {spec.n}x{spec.m} cannot fit the {self.rows}x{self.cols} window"
            )
        self.max_oi = spec.n - self.rows + 1
        self.max_oj = spec.m - self.cols + 1

    def _clamp(self, oi, oj):
        return (
            min(max(oi, 1), self.max_oi),
            min(max(oj, 1), self.max_oj),
        )

    def target_origin(self, cells):
        ci = sum(c[0] for c in cells) / len(cells)
        cj = sum(c[1] for c in cells) / len(cells)
        return self._clamp(round(ci) - self.rows // 2, round(cj) - self.cols // 2)

    def _window_distance(self, origin, cell):
        oi, oj = origin
        di = max(0, oi - cell[0], cell[0] - (oi + self.rows - 1))
        dj = max(0, oj - cell[1], cell[1] - (oj + self.cols - 1))
        return di + dj

    def in_window(self, origin, cell):
        return self._window_distance(origin, cell) == 0

    def window_cells(self, origin):
        oi, oj = origin
        return [
            Coord(i, j)
            for i in range(oi, oi + self.rows)
            for j in range(oj, oj + self.cols)
        ]

    def _cycle_at(self, origin, triple):
        emb = Embedding(Coord(*origin), self.rows, self.cols)
        local = tuple(emb.local_cell(c) for c in triple)
        return emb.host_sequence(_window_cycle_word_cached(self.b, local), self.b)

    def _class_ok(self, a, cell):
        return self.b % 2 == 0 or cell_parity(a) == cell_parity(cell)

    def _hop(self, target, pos, avoid):
        """One in-window three-cycle carrying ``pos`` strictly closer to the
        target window.  Returns (word, new_pos)."""
        oi = min(max(target[0], pos[0] - self.rows + 1), pos[0])
        oj = min(max(target[1], pos[1] - self.cols + 1), pos[1])
        origin = self._clamp(oi, oj)
        here = self._window_distance(target, pos)
        options = [
            c
            for c in self.window_cells(origin)
            if c != pos
            and c not in avoid
            and self._class_ok(pos, c)
            and self._window_distance(target, c) < here
        ]
        if not options:
            raise AssertionError("routing hop found no forward cell")
        dest = min(options, key=lambda c: (self._window_distance(target, c), c))
        scratch = [
            c
            for c in self.window_cells(origin)
            if c not in (pos, dest) and c not in avoid and self._class_ok(pos, c)
        ]
        if not scratch:
            raise AssertionError("routing hop found no scratch cell")
        word = self._cycle_at(origin, (pos, dest, scratch[0]))
        return word, dest

    def route(self, cells):
        """Word bringing the three tracked cells into one window.

        Returns (word, final_cells, window_origin).  Cells already inside the
        chosen window do not move; the others hop toward it one window at a
        time.  Each hop's net effect touches three cells only, and never the
        other tracked cells.
        """
        cells = [Coord(*c) for c in cells]
        target = self.target_origin(cells)
        moves = []
        for idx in range(len(cells)):
            while not self.in_window(target, cells[idx]):
                others = {c for k, c in enumerate(cells) if k != idx}
                word, dest = self._hop(target, cells[idx], others)
                moves.extend(word)
                cells[idx] = dest
        return tuple(moves), tuple(cells), target

    def cycle(self, triple):
        """Word three-cycling the triple's contents (first -> second -> third)
        anywhere on the host: route into a window, cycle, unroute."""
        route, placed, origin = self.route(triple)
        inner = self._cycle_at(origin, placed)
        return route + inner + invert_sequence(route)


def route_three(board, values):
    """Word bringing three values' cells into a common (b,b+1) window.

    The b >= 5 reduction: each value hops between overlapping windows via
    in-window three-cycles until all three lie in one window.  Composing with
    an in-window cycle and the inverse routing yields a bare three-cycle.
    """
    spec = board.spec
    if spec.b < 5:
        raise ValueError("route_three serves the b >= 5 branch")
    router = _Router(spec, spec.b)
    cells = tuple(board.position_of(v) for v in values)
    word, _, _ = router.route(cells)
    return word


def _solve_windowed(work, b):
    spec = work.spec
    router = _Router(spec, b)
    _sign_prefix(work, per_class=b % 2 == 1)
    solved = solved_board(spec)
    for k in range(spec.cells):
        want = solved.values[k]
        if work.board.values[k] == want:
            continue
        home = spec.index_cell(k)
        p = work.board.position_of(want)
        wrong = [
            c
            for c in work.wrong_cells()
            if c not in (p, home) and router._class_ok(home, c)
        ]
        if not wrong:
            raise AssertionError("no scratch cell available; sign bookkeeping broken")
        scratch = min(
            wrong, key=lambda c: abs(c[0] - home[0]) + abs(c[1] - home[1])
        )
        work.emit(router.cycle((p, home, scratch)))
        work.cycle_calls += 1
        if work.board.values[k] != want:
            raise AssertionError("windowed three-cycle failed to place its value")
    if not work.board.is_solved():
        raise AssertionError("windowed placement finished with an unsolved board")


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------

def _solve_normalized(board):
    work = _Work(board)
    branch = classify_spec(board.spec)
    if branch == BLOCK_ONE:
        pass  # solvable b=1 boards are already solved
    elif branch == SINGLE_BLOCK:
        if not work.board.is_solved():
            _solve_single_block(work)
    elif branch == B2_SMALL:
        _solve_by_path(work)
    elif branch == B2_GENERAL:
        _solve_b2(work)
    elif branch == B3_SMALL:
        _solve_343(work)
    elif branch == B3_GENERAL:
        if board.spec.n == 3:
            _solve_3m3(work)
        else:
            _solve_windowed(work, 3)
    elif branch in (BMOD8_04, BMOD8_17, BMOD8_26, BMOD8_35):
        _solve_windowed(work, board.spec.b)
    else:  # pragma: no cover - classify_spec is exhaustive
        raise AssertionError(f"no solver branch for {branch}")
    if not work.board.is_solved():
        raise AssertionError("branch solver returned an unsolved board")
    return work


def _transpose_move(mv):
    (r, c), q = mv
    return Move((c, r), 4 - q if q != 2 else 2)


def solve(board):
    """Solve a board: returns a SolveResult carrying either a move sequence
    whose application reaches the solved board, or the failed solvability
    report."""
    t0 = time.perf_counter()
    report = is_solvable(board)
    if not report.solvable:
        return SolveResult(
            False, None, report, {"elapsed": time.perf_counter() - t0}
        )
    spec = board.spec
    if spec.n > spec.m:
        work = _solve_normalized(normalize_board(board))
        moves = tuple(_transpose_move(mv) for mv in work.moves)
    else:
        work = _solve_normalized(board)
        moves = tuple(work.moves)
    moves = simplify(moves)
    if not apply_sequence(board, moves).is_solved():
        raise AssertionError("solver produced a non-solving sequence")
    stats = {
        "branch": classify_spec(spec),
        "moves": len(moves),
        "raw_moves": len(work.moves),
        "macro_calls": work.macro_calls,
        "cycle3_calls": work.cycle_calls,
        "sign_prefix_moves": work.prefix_moves,
        "elapsed": time.perf_counter() - t0,
    }
    return SolveResult(True, moves, report, stats)
