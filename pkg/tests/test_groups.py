"""Tests for brute-force enumeration, group orders and the S6 machinery.

The three reachability routes — BFS, Schreier-Sims order, closed formula —
are compared against each other so none of them is trusted alone.
"""
import math
import random

import pytest

from rotpuzzle.core import Coord, Move, PuzzleSpec, move_position_map, legal_moves
from rotpuzzle.groups import (
    S6Automorphism,
    StateLimitExceeded,
    bfs_reachable,
    build_movement_graphs,
    construct_psi,
    cycle_type,
    enumerate_elements,
    find_isomorphism,
    group_order,
    permutation_group_order,
    verify_outer,
    _mul,
)
from rotpuzzle.solvability import predicted_reachable_count


# ---------------------------------------------------------------------------
# enumeration vs. algebra vs. formula
# ---------------------------------------------------------------------------

SMALL = [
    (PuzzleSpec(1, 1, 1), 1),
    (PuzzleSpec(2, 2, 2), 4),
    (PuzzleSpec(2, 3, 2), 120),
    (PuzzleSpec(2, 4, 2), math.factorial(8)),
    (PuzzleSpec(3, 3, 2), math.factorial(9)),
    (PuzzleSpec(3, 4, 3), 720),
]


@pytest.mark.parametrize("spec,expected", SMALL, ids=str)
def test_bfs_counts(spec, expected):
    count, _ = bfs_reachable(spec, limit=500_000)
    assert count == expected
    assert count == predicted_reachable_count(spec)


@pytest.mark.parametrize("spec,expected", SMALL, ids=str)
def test_group_orders_small(spec, expected):
    assert group_order(spec) == expected


def test_group_orders_midsize_match_formula():
    for spec in [
        PuzzleSpec(3, 5, 3),
        PuzzleSpec(4, 4, 3),
        PuzzleSpec(4, 5, 2),
        PuzzleSpec(4, 5, 4),
        PuzzleSpec(5, 6, 5),
    ]:
        assert group_order(spec) == predicted_reachable_count(spec), spec


def test_bfs_limit_refusal():
    with pytest.raises(StateLimitExceeded):
        bfs_reachable(PuzzleSpec(3, 3, 2), limit=1000)


def test_bfs_returned_set():
    count, states = bfs_reachable(PuzzleSpec(2, 3, 2), limit=1000, return_set=True)
    assert count == 120 and len(states) == 120
    assert tuple(range(1, 7)) in states
    # closed under a move
    from rotpuzzle.core import apply_move, solved_board, Board

    for vals in list(states)[:20]:
        bd = Board(PuzzleSpec(2, 3, 2), vals)
        assert apply_move(bd, Move((1, 1), 1)).values in states


def test_bfs_no_moves():
    assert bfs_reachable(PuzzleSpec(2, 5, 1), limit=10)[0] == 1


def test_degree_guard():
    with pytest.raises(ValueError):
        group_order(PuzzleSpec(8, 9, 2))


def test_permutation_group_order_known_groups():
    # S5 from a transposition and a 5-cycle
    s5 = [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)]
    assert permutation_group_order(s5, 5) == 120
    # A4 from two 3-cycles
    a4 = [(1, 2, 0, 3), (0, 2, 3, 1)]
    assert permutation_group_order(a4, 4) == 12
    # cyclic C6
    c6 = [(1, 2, 3, 4, 5, 0)]
    assert permutation_group_order(c6, 6) == 6
    # trivial
    assert permutation_group_order([], 5) == 1
    assert permutation_group_order([(0, 1, 2)], 3) == 1


def test_enumerate_elements_matches_order():
    gens = [move_position_map(PuzzleSpec(3, 4, 3), mv) for mv in legal_moves(PuzzleSpec(3, 4, 3))]
    elems = enumerate_elements(gens, 12, limit=1000)
    assert len(elems) == 720
    assert tuple(range(12)) in elems


# ---------------------------------------------------------------------------
# movement graphs
# ---------------------------------------------------------------------------

def test_movement_graph_shapes():
    g0, g1 = build_movement_graphs()
    assert len(g0.nodes) == 15 and len(g1.nodes) == 15
    for g in (g0, g1):
        assert set(g.x_edges.values()) == set(g.nodes)
        assert set(g.y_edges.values()) == set(g.nodes)


def test_pair_action_worked_example():
    # Y^2 sends the pair {(1,1),(2,4)} to {(1,1),(2,2)}: (1,1) is outside
    # the Y block and (2,4) spirals through two quarter turns.
    g0, _ = build_movement_graphs()
    node = frozenset({Coord(1, 1), Coord(2, 4)})
    once = g0.y_edges[node]
    twice = g0.y_edges[once]
    assert twice == frozenset({Coord(1, 1), Coord(2, 2)})


def test_partition_action_worked_example():
    _, g1 = build_movement_graphs()
    node = frozenset(
        {
            frozenset({Coord(1, 2), Coord(3, 4)}),
            frozenset({Coord(1, 4), Coord(3, 2)}),
            frozenset({Coord(2, 1), Coord(2, 3)}),
        }
    )
    expected = frozenset(
        {
            frozenset({Coord(2, 1), Coord(3, 4)}),
            frozenset({Coord(1, 4), Coord(2, 3)}),
            frozenset({Coord(3, 2), Coord(1, 2)}),
        }
    )
    assert g1.x_edges[node] == expected


def test_isomorphism_exists_and_is_equivariant():
    g0, g1 = build_movement_graphs()
    found = find_isomorphism(g0, g1)
    assert len(found) >= 1
    for phi in found:
        assert len(phi) == 15
        for a in g0.nodes:
            for letter in ("x", "y"):
                assert phi[g0.step(a, letter)] == g1.step(phi[a], letter)


def test_isomorphism_on_random_words():
    spec = PuzzleSpec(3, 4, 3)
    g0, g1 = build_movement_graphs()
    phi = find_isomorphism(g0, g1)[0]
    x = move_position_map(spec, Move((1, 1), 1))
    y = move_position_map(spec, Move((1, 2), 1))
    xi, yi = tuple(x), tuple(y)
    rng = random.Random(42)
    idmap = tuple(range(12))
    for _ in range(1000):
        pi = idmap
        for _ in range(rng.randrange(1, 20)):
            g = rng.choice((xi, yi))
            reps = rng.randrange(1, 4)
            for _ in range(reps):
                pi = _mul(pi, g)
        for node in g0.nodes:
            assert phi[g0.act(node, pi)] == g1.act(phi[node], pi)


# ---------------------------------------------------------------------------
# the outer automorphism
# ---------------------------------------------------------------------------

def test_cycle_type():
    assert cycle_type((0, 1, 2, 3, 4, 5)) == (1, 1, 1, 1, 1, 1)
    assert cycle_type((1, 0, 2, 3, 4, 5)) == (2, 1, 1, 1, 1)
    assert cycle_type((1, 2, 0, 4, 3, 5)) == (3, 2, 1)


@pytest.fixture(scope="module")
def psi():
    return construct_psi()


def test_psi_total_and_bijective(psi):
    assert len(psi.domain) == 720
    assert len(set(psi(s) for s in psi.domain)) == 720
    ident = tuple(range(6))
    assert psi(ident) == ident


def test_psi_full_homomorphism_table(psi):
    # every single product, not just a sample
    domain = psi.domain
    for a in domain:
        pa = psi(a)
        for b in domain:
            assert psi(_mul(a, b)) == _mul(pa, psi(b))


def test_psi_swaps_transpositions_and_triple_transpositions(psi):
    for s in psi.domain:
        if cycle_type(s) == (2, 1, 1, 1, 1):
            assert cycle_type(psi(s)) == (2, 2, 2)
        if cycle_type(s) == (2, 2, 2):
            assert cycle_type(psi(s)) == (2, 1, 1, 1, 1)


def test_verify_outer_report(psi):
    report = verify_outer(psi)
    assert report["is_outer"]
    assert report["bijective"]
    assert report["generator_products_ok"]
    assert report["random_pairs_failed"] == 0
    assert report["cycle_type_consistent"]
    assert report["transpositions_to_triple_transpositions"]
    assert report["psi_squared_inner_by"] is not None
    # psi is not itself inner: it moves the transposition class
    table = report["cycle_type_table"]
    assert table[(2, 1, 1, 1, 1)] == (2, 2, 2)


def test_p1_solved_iff_p0_solved():
    # Over all 720 reachable arrangements of the 3x4 board, one class is
    # home exactly when the other is.
    spec = PuzzleSpec(3, 4, 3)
    count, states = bfs_reachable(spec, limit=1000, return_set=True)
    assert count == 720
    from rotpuzzle.core import cell_parity, solved_board

    solved = solved_board(spec).values
    idx0 = [k for k in range(12) if cell_parity(spec.index_cell(k)) == 0]
    idx1 = [k for k in range(12) if cell_parity(spec.index_cell(k)) == 1]
    both = neither = 0
    for vals in states:
        p0_home = all(vals[k] == solved[k] for k in idx0)
        p1_home = all(vals[k] == solved[k] for k in idx1)
        assert p0_home == p1_home
        if p0_home:
            both += 1
        else:
            neither += 1
    assert both == 1 and neither == 719
