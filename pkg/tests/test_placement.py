"""Tests for the constructive placement engine.

All verification is against the exact net permutation of the generated
words (via ``sequence_position_map``) — the guard machinery inside also
self-asserts, so a silent corruption would fail twice over.
"""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotpuzzle.core import (
    Coord,
    Move,
    PuzzleSpec,
    apply_sequence,
    cell_parity,
    scramble,
    sequence_position_map,
)
from rotpuzzle.macros import Embedding, three_cycle_b3, translate_macro
from rotpuzzle.placement import (
    board_spec,
    cycle3,
    evacuate_column,
    place_three,
    spiral,
    center_distance_sq,
    center_square,
    corner_target,
    cycle3_word,
    mirror_cell,
    mirror_word,
    parking_cycle_word,
    parking_squares,
    send_to_word,
    spiral_cycle_word,
    spiral_word,
)


def end_of(n, word, cell):
    spec = board_spec(n)
    pi = sequence_position_map(spec, word)
    return spec.index_cell(pi[spec.cell_index(Coord(*cell))])


def admissible_cells(n, cls=None):
    spec = board_spec(n)
    cells = list(spec.all_cells())
    if cls is not None:
        cells = [c for c in cells if cell_parity(c) == cls]
    return cells


# ---------------------------------------------------------------------------
# geometry helpers
# ---------------------------------------------------------------------------

def test_center_square_positions():
    assert center_square(5) == (3, 3)
    assert center_square(6) == (3, 4)
    assert center_square(7) == (4, 4)
    assert center_square(8) == (4, 5)


def test_parking_squares_share_a_class_on_odd_boards():
    for n in (5, 7, 9):
        assert {cell_parity(c) for c in parking_squares(n)} == {0}
    for n in (6, 8):
        u1, u2, u3 = parking_squares(n)
        assert (u1, u2) == ((1, 1), (2, 1))


def test_mirror_cell_swaps_classes_on_odd_boards():
    for n in (5, 7):
        for c in admissible_cells(n):
            m = mirror_cell(n, c)
            assert mirror_cell(n, m) == c
            assert cell_parity(m) != cell_parity(c)


def test_mirror_word_is_reflection_conjugation():
    from rotpuzzle.core import apply_sequence, reflect_horizontal, scramble

    n = 6
    spec = board_spec(n)
    word = (Move((1, 1), 1), Move((1, 2), 3), Move((1, 1), 2))
    bd, _ = scramble(spec, 20, seed=5)
    lhs = apply_sequence(reflect_horizontal(bd), mirror_word(n, word))
    rhs = reflect_horizontal(apply_sequence(bd, word))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# spiral
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_spiral_reaches_center_from_everywhere(n):
    u = center_square(n)
    for c in admissible_cells(n, 0 if n % 2 else None):
        word, end = spiral_word(n, c)
        assert end == u
        assert end_of(n, word, c) == u


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_spiral_monovariant_strictly_decreases(n):
    rng = random.Random(n)
    cells = admissible_cells(n, 0 if n % 2 else None)
    for c in rng.sample(cells, min(12, len(cells))):
        trace = []
        spiral_word(n, c, trace=trace)
        assert all(a > b for a, b in zip(trace, trace[1:])), (c, trace)


def test_spiral_star_variant_turns_clockwise():
    word, end = spiral_word(6, Coord(6, 7), star=True)
    assert end == center_square(6)
    x_moves = [mv for mv in word if mv.anchor == (1, 1)]
    assert x_moves and all(mv.quarters == 3 for mv in x_moves)


def test_spiral_rejects_cross_class_starts_on_odd_boards():
    with pytest.raises(ValueError):
        spiral_word(5, Coord(1, 2))  # class 1 start, class 0 center
    with pytest.raises(ValueError):
        spiral_word(4, Coord(1, 1))  # too small for the machinery
    with pytest.raises(ValueError):
        spiral_word(6, Coord(7, 1))  # out of bounds


def test_corner_target_classes():
    # the staging corner must share the parking class on odd boards
    for n in (5, 7, 9):
        assert cell_parity(corner_target(n)) == 0
    assert corner_target(6) == (6, 7)
    assert corner_target(7) == (6, 8)


def test_center_distance_is_exact_and_y_invariant():
    n = 7
    spec = board_spec(n)
    y = Move((1, 2), 1)
    pi = sequence_position_map(spec, (y,))
    for c in spec.all_cells():
        img = spec.index_cell(pi[spec.cell_index(c)])
        if img != c:  # cell inside the Y block
            assert center_distance_sq(n, img) == center_distance_sq(n, c)


# ---------------------------------------------------------------------------
# send_to
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [5, 6, 7])
def test_send_to_arbitrary_squares(n):
    rng = random.Random(17 + n)
    for _ in range(20):
        if n % 2:
            cls = rng.choice((0, 1))
            pool = admissible_cells(n, cls)
        else:
            pool = admissible_cells(n)
        a, b = rng.sample(pool, 2)
        word = send_to_word(n, a, b)
        assert end_of(n, word, a) == b


def test_send_to_same_square_is_empty():
    assert send_to_word(6, Coord(2, 3), Coord(2, 3)) == ()


def test_send_to_rejects_cross_class_on_odd_boards():
    with pytest.raises(ValueError):
        send_to_word(5, Coord(1, 1), Coord(1, 2))


# ---------------------------------------------------------------------------
# spiral-cycle parking
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_spiral_cycle_parks_in_order(n):
    rng = random.Random(n * 31)
    pool = admissible_cells(n, 0 if n % 2 else None)
    for _ in range(20):
        triple = tuple(rng.sample(pool, 3))
        word = spiral_cycle_word(n, triple)
        got = tuple(end_of(n, word, c) for c in triple)
        assert got == parking_squares(n), (triple, got)


def test_spiral_cycle_skips_preparked_cells():
    n = 6
    word = spiral_cycle_word(n, parking_squares(n))
    assert word == ()


def test_spiral_cycle_rejects_bad_input():
    with pytest.raises(ValueError):
        spiral_cycle_word(6, (Coord(1, 1), Coord(1, 1), Coord(2, 2)))
    with pytest.raises(ValueError):
        spiral_cycle_word(5, (Coord(1, 1), Coord(1, 2), Coord(2, 2)))
    with pytest.raises(ValueError):
        spiral_cycle_word(4, (Coord(1, 1), Coord(2, 2), Coord(3, 3)))


@pytest.mark.parametrize("n", [5, 6])
def test_spiral_cycle_handles_first_column_travelers(n):
    # travelers starting deep in the first column exercise the takeout and
    # evacuation words plus the hide/unhide guard cycles
    pool = [c for c in admissible_cells(n, 0 if n % 2 else None) if c.j == 1]
    others = [c for c in admissible_cells(n, 0 if n % 2 else None) if c.j != 1]
    for c in pool:
        rng = random.Random(hash((n, c)) & 0xFFFF)
        for triple in (
            (c, others[0], others[-1]),
            (others[0], c, others[-1]),
            (others[0], others[-1], c),
        ):
            if len(set(triple)) != 3:
                continue
            word = spiral_cycle_word(n, triple)
            got = tuple(end_of(n, word, x) for x in triple)
            assert got == parking_squares(n), (triple, got)


# ---------------------------------------------------------------------------
# parking cycle and cycle3
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_parking_cycle_is_the_bare_three_cycle(n):
    spec = board_spec(n)
    word = parking_cycle_word(n)
    pi = sequence_position_map(spec, word)
    u1, u2, u3 = parking_squares(n)
    expect = {u1: u2, u2: u3, u3: u1}
    for k, dst in enumerate(pi):
        src = spec.index_cell(k)
        assert spec.index_cell(dst) == expect.get(src, src)


def assert_bare_cycle(n, word, triple):
    spec = board_spec(n)
    pi = sequence_position_map(spec, word)
    expect = {triple[0]: triple[1], triple[1]: triple[2], triple[2]: triple[0]}
    for k, dst in enumerate(pi):
        src = spec.index_cell(k)
        assert spec.index_cell(dst) == expect.get(src, src), (triple, src)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_cycle3_is_exact_on_random_triples(n):
    rng = random.Random(n * 7)
    for _ in range(12):
        if n % 2:
            pool = admissible_cells(n, rng.choice((0, 1)))
        else:
            pool = admissible_cells(n)
        triple = tuple(rng.sample(pool, 3))
        assert_bare_cycle(n, cycle3_word(n, triple), triple)


def test_cycle3_odd_class1_uses_mirroring():
    n = 5
    pool = admissible_cells(n, 1)
    triple = (pool[0], pool[3], pool[7])
    assert_bare_cycle(n, cycle3_word(n, triple), triple)


def test_cycle3_rejects_cross_class_triples():
    with pytest.raises(ValueError):
        cycle3_word(5, (Coord(1, 1), Coord(1, 2), Coord(2, 2)))
    with pytest.raises(ValueError):
        cycle3_word(6, (Coord(1, 1), Coord(1, 1), Coord(2, 2)))


@settings(max_examples=25, deadline=None)
@given(data=st.data(), n=st.sampled_from([5, 6, 7]))
def test_cycle3_property(data, n):
    cls = data.draw(st.sampled_from([0, 1])) if n % 2 else None
    pool = admissible_cells(n, cls)
    idx = data.draw(
        st.lists(st.integers(0, len(pool) - 1), min_size=3, max_size=3, unique=True)
    )
    triple = tuple(pool[i] for i in idx)
    assert_bare_cycle(n, cycle3_word(n, triple), triple)


# ---------------------------------------------------------------------------
# board-level wrappers (value lookup + embedding transport)
# ---------------------------------------------------------------------------

class TestBoardWrappers:
    HOST = PuzzleSpec(7, 9, 5)
    EMB = Embedding(Coord(2, 3), 5, 6)

    def scrambled(self, seed=1):
        board, _ = scramble(self.HOST, 50, seed)
        return board

    def test_spiral_lands_on_center(self):
        board = self.scrambled()
        a = board.value_at(self.EMB.host_cell(Coord(2, 2)))  # class-0 local cell
        for variant in ("normal", "star"):
            word = spiral(board, a, self.EMB, variant=variant)
            after = apply_sequence(board, word)
            assert after.position_of(a) == self.EMB.host_cell(center_square(5))

    def test_spiral_at_center_is_noop(self):
        board = self.scrambled(2)
        a = board.value_at(self.EMB.host_cell(center_square(5)))
        assert spiral(board, a, self.EMB) == ()

    def test_spiral_rejects_unknown_variant(self):
        board = self.scrambled()
        with pytest.raises(ValueError):
            spiral(board, 1, self.EMB, variant="widdershins")

    def test_place_three_parks_in_order(self):
        board = self.scrambled(3)
        locs = [Coord(1, 1), Coord(2, 4), Coord(4, 2)]
        vals = [board.value_at(self.EMB.host_cell(c)) for c in locs]
        after = apply_sequence(board, place_three(board, *vals, self.EMB))
        for v, u in zip(vals, parking_squares(5)):
            assert after.position_of(v) == self.EMB.host_cell(u)

    def test_cycle3_host_cells(self):
        board = self.scrambled(4)
        srcs = [self.EMB.host_cell(c) for c in (Coord(1, 1), Coord(2, 4), Coord(4, 2))]
        word = cycle3(board, srcs, self.EMB)
        after = apply_sequence(board, word)
        changed = [c for c in self.HOST.all_cells() if after.value_at(c) != board.value_at(c)]
        assert sorted(changed) == sorted(srcs)
        assert after.value_at(srcs[1]) == board.value_at(srcs[0])
        assert after.value_at(srcs[2]) == board.value_at(srcs[1])
        assert after.value_at(srcs[0]) == board.value_at(srcs[2])

    def test_cycle3_content_independent(self):
        srcs = [self.EMB.host_cell(c) for c in (Coord(1, 1), Coord(2, 4), Coord(4, 2))]
        words = {
            cycle3(self.scrambled(seed), srcs, self.EMB) for seed in range(6)
        }
        assert len(words) == 1  # word depends on cells, never on contents

    def test_evacuate_column_wrapper(self):
        board = self.scrambled(5)
        after = apply_sequence(board, evacuate_column(board, self.EMB))
        for i in (1, 3):  # odd-window fixed cells
            c = self.EMB.host_cell(Coord(i, 1))
            assert after.value_at(c) == board.value_at(c)
        for i in (2, 4, 5):
            c = self.EMB.host_cell(Coord(i, 1))
            assert after.position_of(board.value_at(c)) != c

    def test_window_shape_validated(self):
        board = self.scrambled()
        with pytest.raises(ValueError):
            evacuate_column(board, Embedding(Coord(1, 1), 5, 7))
        with pytest.raises(ValueError):
            evacuate_column(board, Embedding(Coord(4, 1), 5, 6))  # escapes host

    def test_translate_macro_shifts_anchors(self):
        mac = three_cycle_b3()
        emb = Embedding(Coord(2, 3), 4, 4)
        moved = translate_macro(mac, emb)
        assert moved.window.n >= 5 and moved.window.m >= 6
        for orig, hosted in zip(mac.moves, moved.moves):
            assert hosted.anchor == Coord(orig.anchor[0] + 1, orig.anchor[1] + 2)
            assert hosted.quarters == orig.quarters
