"""Number rotation puzzle engine.

Play, classify and solve puzzles where b-by-b blocks of an n-by-m numbered
grid are rotated by quarter turns.  The package provides:

* :mod:`rotpuzzle.core` — boards, moves, parity tools, text formats
* :mod:`rotpuzzle.solvability` — decides which arrangements are reachable
* :mod:`rotpuzzle.macros` — short move words with small, known footprints
* :mod:`rotpuzzle.placement` — routing machinery for wide boards (b >= 5)
* :mod:`rotpuzzle.solver` — constructive solver for every solvable spec
* :mod:`rotpuzzle.groups` — brute-force enumeration and group-order tools
* :mod:`rotpuzzle.cli` / :mod:`rotpuzzle.server` — command line and JSON API
"""

from .core import (
    Board,
    BoardFormatError,
    Coord,
    Move,
    PuzzleSpec,
    apply_move,
    apply_sequence,
    as_permutation,
    cell_parity,
    invert_sequence,
    legal_moves,
    parity_respecting,
    parse_board,
    parse_moves,
    permutation_sign,
    scramble,
    serialize_board,
    serialize_moves,
    solved_board,
    transpose,
    reflect_horizontal,
    within_parity_sign,
)
from .solvability import (
    SolvabilityReport,
    classify_spec,
    is_solvable,
    normalize_board,
    predicted_reachable_count,
)
from .solver import SolveResult, route_three, simplify, solve

__all__ = [
    "Board",
    "BoardFormatError",
    "Coord",
    "Move",
    "PuzzleSpec",
    "SolvabilityReport",
    "SolveResult",
    "apply_move",
    "apply_sequence",
    "as_permutation",
    "cell_parity",
    "classify_spec",
    "invert_sequence",
    "is_solvable",
    "legal_moves",
    "normalize_board",
    "parity_respecting",
    "parse_board",
    "parse_moves",
    "permutation_sign",
    "predicted_reachable_count",
    "route_three",
    "scramble",
    "serialize_board",
    "serialize_moves",
    "simplify",
    "solve",
    "solved_board",
    "transpose",
    "reflect_horizontal",
    "within_parity_sign",
]
