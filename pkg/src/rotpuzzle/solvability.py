"""Decides which arrangements of a puzzle are reachable from solved.

Every spec falls into one of a handful of branches.  Degenerate shapes are
settled by enumeration (a single rotatable block, or no moves at all); two
small exceptional specs — (2,3) with b=2 and (3,4) with b=3 — have strict
smaller move groups than their siblings and are checked against cached
brute-force state sets.  Everything else is governed by three cheap
invariants of the arrangement's permutation:

* ``square-parity``   — with odd ``b`` every value must stay on its home
  checkerboard class, because odd blocks rotate each class into itself;
* ``global-even``     — the arrangement must be an even permutation
  (quarter turns of blocks with ``b % 4 in (0, 1, 3)`` are even, so no odd
  permutation can ever arise);
* ``per-parity-even`` — for ``b % 8 in (1, 7)`` the restriction to each
  checkerboard class must itself be even.

Which invariants bind depends only on ``b`` (mod 8 for large blocks), and
each binding invariant is also sufficient: the constructive solver in
:mod:`rotpuzzle.solver` witnesses sufficiency, and the acceptance tests
cross-check the predicted counts against brute force and group orders.

Specs are normalized to ``n <= m`` by transposing (and relabelling values)
before classification, so callers never need to care about orientation.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .core import (
    Board,
    Move,
    PuzzleSpec,
    apply_move,
    as_permutation,
    parity_respecting,
    permutation_sign,
    solved_board,
    transpose,
    within_parity_sign,
)

# branch names
SINGLE_BLOCK = "single-block"
BLOCK_ONE = "no-moves"
B2_SMALL = "b2-exceptional-2x3"
B2_GENERAL = "b2-general"
B3_SMALL = "b3-exceptional-3x4"
B3_GENERAL = "b3-general"
BMOD8_26 = "b-mod8-2-6"
BMOD8_04 = "b-mod8-0-4"
BMOD8_35 = "b-mod8-3-5"
BMOD8_17 = "b-mod8-1-7"


def normalize_board(board):
    """Orient a board so ``n <= m``, relabelling values to match.

    Transposing carries values but leaves them numbered for the old shape,
    so each value ``v`` with home ``(i, j)`` is renamed to the value whose
    home in the transposed shape is ``(j, i)``.  Returns the board unchanged
    when already oriented.
    """
    spec = board.spec
    if spec.n <= spec.m:
        return board
    flipped = transpose(board)
    relabel = {}
    for v in range(1, spec.cells + 1):
        i, j = spec.index_cell(v - 1)
        relabel[v] = (j - 1) * spec.n + i
    return Board(flipped.spec, tuple(relabel[v] for v in flipped.values))


def classify_spec(spec):
    """Branch name governing this spec (after ``n <= m`` normalization)."""
    n, m = sorted((spec.n, spec.m))
    b = spec.b
    if b == 1:
        return BLOCK_ONE
    if b == n == m:
        return SINGLE_BLOCK
    if b == 2:
        return B2_SMALL if (n, m) == (2, 3) else B2_GENERAL
    if b == 3:
        return B3_SMALL if (n, m) == (3, 4) else B3_GENERAL
    r = b % 8
    if r in (2, 6):
        return BMOD8_26
    if r in (0, 4):
        return BMOD8_04
    if r in (3, 5):
        return BMOD8_35
    return BMOD8_17


def parity_class_size(spec, parity):
    """Number of cells in one checkerboard class."""
    n, m = spec.n, spec.m
    even_cells = (n + 1) // 2 * ((m + 1) // 2) + n // 2 * (m // 2)
    return even_cells if parity == 0 else spec.cells - even_cells


def predicted_reachable_count(spec):
    """Closed-form number of reachable boards for any spec."""
    branch = classify_spec(spec)
    nm = spec.cells
    p0 = parity_class_size(spec, 0)
    p1 = parity_class_size(spec, 1)
    if branch == BLOCK_ONE:
        return 1
    if branch == SINGLE_BLOCK:
        return 4
    if branch == B2_SMALL:
        return 120
    if branch == B3_SMALL:
        return 720
    if branch in (B2_GENERAL, BMOD8_26):
        return math.factorial(nm)
    if branch == BMOD8_04:
        return math.factorial(nm) // 2
    if branch in (B3_GENERAL, BMOD8_35):
        return math.factorial(p0) * math.factorial(p1) // 2
    return (math.factorial(p0) // 2) * (math.factorial(p1) // 2)  # BMOD8_17


@dataclass(frozen=True)
class SolvabilityReport:
    """Verdict plus the individual invariant checks that produced it."""

    spec: PuzzleSpec
    branch: str
    checks: tuple  # ((name, passed), ...)
    solvable: bool


# cached brute-force state sets for the two exceptional specs
_cache_lock = threading.Lock()
_small_sets = {}


def _exceptional_set(spec):
    with _cache_lock:
        if spec not in _small_sets:
            from .groups import bfs_reachable

            _, states = bfs_reachable(spec, limit=10_000, return_set=True)
            _small_sets[spec] = states
        return _small_sets[spec]


def is_solvable(board):
    """Classify the board's spec and evaluate the binding invariants.

    The returned report lists each restriction checked with its outcome;
    the verdict is their conjunction.  For branches with no restrictions the
    list is empty and the verdict is True.
    """
    board = normalize_board(board)
    spec = board.spec
    branch = classify_spec(spec)
    checks = []

    if branch == BLOCK_ONE:
        checks.append(("enumerated-set", board.is_solved()))
    elif branch == SINGLE_BLOCK:
        reachable = {solved_board(spec).values}
        for q in (1, 2, 3):
            reachable.add(apply_move(solved_board(spec), Move((1, 1), q)).values)
        checks.append(("enumerated-set", board.values in reachable))
    elif branch in (B2_SMALL, B3_SMALL):
        checks.append(("enumerated-set", board.values in _exceptional_set(spec)))
    elif branch in (B2_GENERAL, BMOD8_26):
        pass  # every arrangement is reachable
    elif branch == BMOD8_04:
        checks.append(
            ("global-even", permutation_sign(as_permutation(board)) == 1)
        )
    elif branch in (B3_GENERAL, BMOD8_35):
        respects = parity_respecting(board)
        checks.append(("square-parity", respects))
        checks.append(
            ("global-even", permutation_sign(as_permutation(board)) == 1)
        )
    else:  # BMOD8_17
        respects = parity_respecting(board)
        checks.append(("square-parity", respects))
        both_even = (
            respects
            and within_parity_sign(board, 0) == 1
            and within_parity_sign(board, 1) == 1
        )
        checks.append(("per-parity-even", both_even))

    return SolvabilityReport(
        spec=spec,
        branch=branch,
        checks=tuple(checks),
        solvable=all(ok for _, ok in checks),
    )
