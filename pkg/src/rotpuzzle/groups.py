"""Brute-force and algebraic verification tools.

Everything the rest of the package claims about reachability can be checked
independently here, three different ways:

* :func:`bfs_reachable` literally enumerates every board reachable from
  solved (safe only for small state spaces, hence the hard limit);
* :func:`group_order` computes the order of the move group with a
  hand-rolled deterministic Schreier-Sims stabilizer chain, which agrees
  with the BFS count because the group acts freely on boards;
* closed-form counts come from the solvability classifier.

The module also houses the odd star of the b=3 theory: on the 3x4 board the
two checkerboard classes each carry a faithful S6 action, and matching up
the two "movement graphs" yields an outer automorphism of S6 (the only
symmetric group with one).  :func:`construct_psi` builds the map explicitly
and :func:`verify_outer` certifies its properties.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    Coord,
    Move,
    PuzzleSpec,
    cell_parity,
    legal_moves,
    move_gather_index,
    move_position_map,
    solved_board,
)


class StateLimitExceeded(RuntimeError):
    """Raised instead of ever returning a partial enumeration."""


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def bfs_reachable(spec, limit=2_000_000, return_set=False):
    """Count (and optionally collect) all boards reachable from solved.

    Breadth-first over value tuples, with moves applied to whole frontier
    batches at once.  Raises :class:`StateLimitExceeded` the moment the
    visited set would pass ``limit``; a partial count is never returned.
    """
    if spec.cells > 255:
        raise ValueError("bfs_reachable supports at most 255 cells")
    start = np.array(solved_board(spec).values, dtype=np.uint8)
    gathers = [np.asarray(move_gather_index(spec, mv)) for mv in legal_moves(spec)]
    nm = spec.cells
    visited = {start.tobytes()}
    frontier = start.reshape(1, nm)
    while frontier.shape[0]:
        fresh = []
        for g in gathers:
            cand = np.ascontiguousarray(frontier[:, g])
            raw = cand.tobytes()
            for off in range(0, len(raw), nm):
                key = raw[off : off + nm]
                if key not in visited:
                    if len(visited) >= limit:
                        raise StateLimitExceeded(
                            f"more than {limit} states reachable on {spec}"
                        )
                    visited.add(key)
                    fresh.append(key)
        if not fresh:
            break
        frontier = np.frombuffer(b"".join(fresh), dtype=np.uint8).reshape(-1, nm)
    if return_set:
        return len(visited), frozenset(
            tuple(int(v) for v in key) for key in visited
        )
    return len(visited), None


# ---------------------------------------------------------------------------
# permutation arithmetic (tuples of 0-based images)
# ---------------------------------------------------------------------------

def _mul(a, b):
    """Apply ``a`` first, then ``b``."""
    return tuple(b[x] for x in a)


def _inv(a):
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def _first_moved(a):
    for x, y in enumerate(a):
        if x != y:
            return x
    return None


def _orbit_transversal(point, gens, identity):
    """BFS orbit of ``point`` with coset representatives mapping point -> p."""
    trans = {point: identity}
    queue = [point]
    while queue:
        p = queue.pop(0)
        for g in gens:
            q = g[p]
            if q not in trans:
                trans[q] = _mul(trans[p], g)
                queue.append(q)
    return trans


def permutation_group_order(generators, degree):
    """Order of the group generated by position maps, via a deterministic
    Schreier-Sims stabilizer chain (degree capped at 64)."""
    if degree > 64:
        raise ValueError("group order computation capped at degree 64")
    identity = tuple(range(degree))
    gens = sorted({tuple(g) for g in generators} - {identity})
    if not gens:
        return 1

    base = []          # base points
    level_gens = []    # level_gens[i] generate the stabilizer of base[:i]
    transversals = []

    def add_level(point):
        base.append(point)
        level_gens.append([])
        transversals.append({point: identity})

    def rebuild(level):
        transversals[level] = _orbit_transversal(
            base[level], level_gens[level], identity
        )

    def sift(g, start):
        """Strip ``g`` through levels >= start; returns (residue, level)."""
        for i in range(start, len(base)):
            p = g[base[i]]
            if p not in transversals[i]:
                return g, i
            g = _mul(g, _inv(transversals[i][p]))
        return g, len(base)

    add_level(_first_moved(gens[0]))
    for g in gens:
        level_gens[0].append(g)
    rebuild(0)

    # Down-up verification: level i is certified once every Schreier
    # generator of its transversal sifts to the identity in the chain below.
    i = 0
    while i >= 0:
        dirty = False
        for p in sorted(transversals[i]):
            rep = transversals[i][p]
            for g in level_gens[i]:
                schreier = _mul(_mul(rep, g), _inv(transversals[i][g[p]]))
                residue, j = sift(schreier, i + 1)
                if residue != identity:
                    if j == len(base):
                        add_level(_first_moved(residue))
                    for l in range(i + 1, j + 1):
                        level_gens[l].append(residue)
                        rebuild(l)
                    i = j
                    dirty = True
                    break
            if dirty:
                break
        if not dirty:
            i -= 1

    order = 1
    for trans in transversals:
        order *= len(trans)
    return order


def group_order(spec):
    """Order of the group generated by this spec's legal moves."""
    gens = [move_position_map(spec, mv) for mv in legal_moves(spec)]
    return permutation_group_order(gens, spec.cells)


def enumerate_elements(generators, degree, limit=10_000):
    """All elements of a small permutation group, BFS from the identity."""
    identity = tuple(range(degree))
    gens = sorted({tuple(g) for g in generators} - {identity})
    seen = {identity}
    queue = [identity]
    while queue:
        a = queue.pop(0)
        for g in gens:
            c = _mul(a, g)
            if c not in seen:
                if len(seen) >= limit:
                    raise StateLimitExceeded(f"group has more than {limit} elements")
                seen.add(c)
                queue.append(c)
    return sorted(seen)


# ---------------------------------------------------------------------------
# the 3x4 board with b=3: two S6 actions and the outer automorphism
# ---------------------------------------------------------------------------

_S6_SPEC = PuzzleSpec(3, 4, 3)
_X = Move((1, 1), 1)
_Y = Move((1, 2), 1)


@lru_cache(maxsize=None)
def _class_cells(parity):
    return tuple(
        c for c in _S6_SPEC.all_cells() if cell_parity(c) == parity
    )


def _restrict(pi, parity):
    """Restriction of a 3x4 position map to one checkerboard class, as a
    permutation of 0..5 (cells ranked row-major)."""
    cells = _class_cells(parity)
    rank = {_S6_SPEC.cell_index(c): r for r, c in enumerate(cells)}
    return tuple(rank[pi[_S6_SPEC.cell_index(c)]] for c in cells)


@dataclass(frozen=True)
class MovementGraph:
    """Fifteen nodes with X- and Y-labeled arrows.

    For class 0 the nodes are the 15 two-element subsets of the class-0
    cells; for class 1 they are the 15 partitions of the class-1 cells into
    three pairs.  Both node counts are forced: C(6,2) = 6!/(2^3 * 3!) = 15.
    Moves act elementwise on cells, hence on pairs and on partitions.
    """

    parity: int
    nodes: tuple
    x_edges: dict
    y_edges: dict

    def step(self, node, letter):
        return (self.x_edges if letter == "x" else self.y_edges)[node]

    def act(self, node, pi):
        """Image of a node under an arbitrary position map."""
        return _act_on_node(node, pi)


def _act_on_node(node, pi):
    """Apply a position map elementwise to a pair or a partition node."""
    first = next(iter(node))
    if isinstance(first, frozenset):  # partition: set of pairs
        return frozenset(_act_on_node(pair, pi) for pair in node)
    return frozenset(
        Coord(*_S6_SPEC.index_cell(pi[_S6_SPEC.cell_index(c)])) for c in node
    )


def _sorted_nodes(nodes):
    def key(node):
        first = next(iter(node))
        if isinstance(first, frozenset):
            return tuple(sorted(tuple(sorted(p)) for p in node))
        return tuple(sorted(node))

    return tuple(sorted(nodes, key=key))


def build_movement_graphs():
    """The pair graph (class 0) and partition graph (class 1) of the 3x4,
    b=3 board, with X/Y edges given by elementwise action."""
    import itertools

    cells0, cells1 = _class_cells(0), _class_cells(1)
    pair_nodes = _sorted_nodes(
        frozenset(c) for c in itertools.combinations(cells0, 2)
    )
    # partitions into three pairs: partner the first cell (5 ways), then the
    # smallest remaining cell (3 ways); the last pair is forced -> 15 total
    partition_nodes = []
    first = cells1[0]
    for mate in cells1[1:]:
        rest = [c for c in cells1[1:] if c != mate]
        for mate2 in rest[1:]:
            last = frozenset(c for c in rest if c not in (rest[0], mate2))
            partition_nodes.append(
                frozenset(
                    {frozenset({first, mate}), frozenset({rest[0], mate2}), last}
                )
            )
    partition_nodes = _sorted_nodes(set(partition_nodes))
    assert len(pair_nodes) == 15 and len(partition_nodes) == 15

    graphs = []
    for parity, nodes in ((0, pair_nodes), (1, partition_nodes)):
        edges = {}
        for letter, mv in (("x", _X), ("y", _Y)):
            pi = move_position_map(_S6_SPEC, mv)
            edges[letter] = {node: _act_on_node(node, pi) for node in nodes}
        graphs.append(MovementGraph(parity, nodes, edges["x"], edges["y"]))
    return graphs[0], graphs[1]


def find_isomorphism(g0, g1):
    """All node bijections commuting with both edge labels.

    The X/Y action on each node set is transitive, so a candidate bijection
    is pinned by the image of the first node and propagated along edges;
    contradictions prune it.  Every surviving candidate is re-verified on
    every edge.  Raises if nothing is found — the two graphs are claimed to
    be isomorphic, and the solver's parity theory leans on it.
    """
    start = g0.nodes[0]
    found = []
    for image in g1.nodes:
        phi = {start: image}
        queue = [start]
        ok = True
        while queue and ok:
            a = queue.pop(0)
            for letter in ("x", "y"):
                b = g0.step(a, letter)
                target = g1.step(phi[a], letter)
                if b in phi:
                    if phi[b] != target:
                        ok = False
                        break
                else:
                    phi[b] = target
                    queue.append(b)
        if not ok or len(phi) != 15 or len(set(phi.values())) != 15:
            continue
        if all(
            phi[g0.step(a, letter)] == g1.step(phi[a], letter)
            for a in g0.nodes
            for letter in ("x", "y")
        ):
            found.append(dict(phi))
    if not found:
        raise ValueError("no structure-preserving bijection between movement graphs")
    return found


@dataclass(frozen=True)
class S6Automorphism:
    """A bijection S6 -> S6 stored extensionally (720 entries)."""

    mapping: tuple  # sorted tuple of (sigma, image) pairs

    def __call__(self, sigma):
        return self._dict()[tuple(sigma)]

    def _dict(self):
        if not hasattr(self, "_cache"):
            object.__setattr__(self, "_cache", dict(self.mapping))
        return self._cache

    @property
    def domain(self):
        return tuple(k for k, _ in self.mapping)


def construct_psi():
    """Pair up the two class actions of the 3x4 move group.

    Every group element restricts to a permutation of each class; since both
    restrictions are faithful and the group has order 720, sending the
    class-0 restriction to the class-1 restriction defines a bijection
    S6 -> S6.  Raises if the pairing is not functional or not bijective.
    """
    gens = [move_position_map(_S6_SPEC, mv) for mv in legal_moves(_S6_SPEC)]
    elements = enumerate_elements(gens, _S6_SPEC.cells, limit=10_000)
    pairs = {}
    for g in elements:
        s0, s1 = _restrict(g, 0), _restrict(g, 1)
        if s0 in pairs and pairs[s0] != s1:
            raise ValueError("class-0 restriction is not faithful; map undefined")
        pairs[s0] = s1
    if len(pairs) != 720:
        raise ValueError(f"expected all 720 permutations as keys, got {len(pairs)}")
    if len(set(pairs.values())) != 720:
        raise ValueError("pairing is not a bijection")
    return S6Automorphism(tuple(sorted(pairs.items())))


def cycle_type(perm):
    """Sorted cycle lengths, longest first, e.g. a transposition is
    (2, 1, 1, 1, 1)."""
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        n, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def verify_outer(psi, random_pairs=10_000, seed=0):
    """Certify that ``psi`` is an outer automorphism of S6.

    Checks: bijectivity, the homomorphism law on generator products plus a
    seeded sample of random pairs, the full cycle-type correspondence table
    (transpositions must go to triple transpositions, which no inner
    automorphism allows), and that ``psi`` composed with itself is inner.
    Returns a report dict; ``report["is_outer"]`` is the verdict.
    """
    domain = psi.domain
    assert len(domain) == 720
    report = {}

    images = [psi(s) for s in domain]
    report["bijective"] = len(set(images)) == 720

    # homomorphism on generator products: both class actions come from the
    # same group elements, so psi must respect every product. Generators
    # first, then a reproducible random sample.
    x0 = _restrict(move_position_map(_S6_SPEC, _X), 0)
    y0 = _restrict(move_position_map(_S6_SPEC, _Y), 0)
    gen_ok = all(
        psi(_mul(g, h)) == _mul(psi(g), psi(h))
        for g in (x0, y0)
        for h in domain
    )
    report["generator_products_ok"] = gen_ok

    rng = random.Random(seed)
    bad = 0
    for _ in range(random_pairs):
        a = domain[rng.randrange(720)]
        b = domain[rng.randrange(720)]
        if psi(_mul(a, b)) != _mul(psi(a), psi(b)):
            bad += 1
    report["random_pairs_checked"] = random_pairs
    report["random_pairs_failed"] = bad

    # cycle-type table: must be a well-defined class bijection
    table = {}
    consistent = True
    for s in domain:
        t0, t1 = cycle_type(s), cycle_type(psi(s))
        if t0 in table and table[t0] != t1:
            consistent = False
        table[t0] = t1
    report["cycle_type_table"] = dict(sorted(table.items()))
    report["cycle_type_consistent"] = consistent

    swap = table.get((2, 1, 1, 1, 1))
    report["transpositions_to_triple_transpositions"] = swap == (2, 2, 2)

    # psi o psi should be conjugation by some fixed tau
    tau_found = None
    probe = [s for s in domain if cycle_type(s) != (1,) * 6][:20]
    for tau in domain:
        ti = _inv(tau)
        if all(psi(psi(s)) == _mul(_mul(ti, s), tau) for s in probe):
            if all(psi(psi(s)) == _mul(_mul(ti, s), tau) for s in domain):
                tau_found = tau
                break
    report["psi_squared_inner_by"] = tau_found

    report["is_outer"] = (
        report["bijective"]
        and gen_ok
        and bad == 0
        and consistent
        and report["transpositions_to_triple_transpositions"]
        and tau_found is not None
    )
    return report
