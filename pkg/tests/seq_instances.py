"""Randomized and exhaustive instance builders for the sequence lemmas.

The builders construct sequence pairs, chains, fans, and rainbow
transfers directly on integer vertices (vertex == rank), together with
the coloring that makes them uniformly adjacent.  Verification helpers
re-check every outcome with the reference routines from helpers_naive,
so a wrong witness or a fabricated contradiction fails loudly.
"""

import itertools

from boxslash import (
    CrossingContradiction,
    EdgeColoring,
    LinearOrder,
    check_bundled,
    check_rainbow,
    rainbow_interleave_transfer,
)
from helpers_naive import (
    edges_cross,
    labels_alternate,
    oracle_max_interleave,
    oracle_strongly_interleave,
    rank_direction,
)


def int_order(n):
    return LinearOrder(range(n))


def pair_coloring(a, b, color=0):
    return EdgeColoring({(x, y): color for x, y in zip(a, b)})


def _consistent(a, b):
    return all(x < y for x, y in zip(a, b)) or all(x > y for x, y in zip(a, b))


def bundled_instance(rng, k):
    """A valid bundled pair: same direction, order consistent, one color."""
    n = 8 * k + 4
    a = b = None
    for _ in range(500):
        ranks = rng.sample(range(n), 2 * k)
        trial_a = sorted(ranks[:k])
        trial_b = sorted(ranks[k:])
        if _consistent(trial_a, trial_b):
            a, b = trial_a, trial_b
            break
    if a is None:
        ranks = sorted(rng.sample(range(n), 2 * k))
        a, b = ranks[:k], ranks[k:]
    if rng.random() < 0.5:
        a, b = a[::-1], b[::-1]
    return tuple(a), tuple(b), int_order(n), pair_coloring(a, b)


def rainbow_instance(rng, k):
    """A valid rainbow pair: opposite directions, order consistent."""
    n = 8 * k + 4
    ranks = sorted(rng.sample(range(n), 2 * k))
    if rng.random() < 0.5:
        a, b = ranks[:k], ranks[k:][::-1]  # a increasing below b
    else:
        a, b = ranks[k:], ranks[:k][::-1]  # a increasing above b
    if rng.random() < 0.5:
        a, b = b, a
    return tuple(a), tuple(b), int_order(n), pair_coloring(a, b)


def interleaving_instance(rng, k):
    """A strongly interleaving same-direction pair."""
    n = 8 * k + 4
    ranks = sorted(rng.sample(range(n), 2 * k))
    a, b = ranks[0::2], ranks[1::2]
    if rng.random() < 0.5:
        a, b = b, a
    if rng.random() < 0.5:
        a, b = a[::-1], b[::-1]
    return tuple(a), tuple(b), int_order(n)


def chain_instance(rng, links, length):
    """links+1 sequences, consecutive ones strongly interleaving."""
    step = 100
    chain = [[step * i for i in range(1, length + 1)]]
    for _ in range(links):
        chain.append([r + rng.randrange(1, 10) for r in chain[-1]])
    if rng.random() < 0.5:
        chain = [seq[::-1] for seq in chain]
    order = int_order(step * (length + 1))
    return [tuple(seq) for seq in chain], order


def transfer_instance(rng):
    """A transfer setup with nested same-color rainbows: the page is valid.

    a and b alternate tightly at the bottom, their rainbow partners c
    and d alternate at the top, and the connecting edges nest pairwise.
    """
    k = rng.randrange(2, 8)
    shift = rng.randrange(0, 20)
    top = 4 * k + 64 + 2 * rng.randrange(0, 20)
    a = [shift + 2 * i for i in range(1, k + 1)]
    b = [shift + 2 * i + 1 for i in range(1, k + 1)]
    c = [shift + top - 2 * i for i in range(1, k + 1)]
    d = [shift + top - 2 * i - 1 for i in range(1, k + 1)]
    order = int_order(shift + top + 1)
    coloring = EdgeColoring(
        {(x, y): 0 for x, y in zip(a, c)} | {(x, y): 0 for x, y in zip(b, d)}
    )
    return tuple(a), tuple(b), tuple(c), tuple(d), order, coloring, k


def crossing_transfer_instance(rng):
    """A transfer setup whose far sides separate: the page must be invalid.

    c sits entirely above d, so the c-d interleave collapses to 1 while
    a and b still interleave k >= 4 deep; the rainbow edges necessarily
    cross in their shared color.
    """
    k = rng.randrange(4, 8)
    a = [2 * i for i in range(1, k + 1)]
    b = [2 * i + 1 for i in range(1, k + 1)]
    c = [200 - 2 * i for i in range(1, k + 1)]
    d = [150 - 2 * i for i in range(1, k + 1)]
    order = int_order(201)
    coloring = EdgeColoring(
        {(x, y): 0 for x, y in zip(a, c)} | {(x, y): 0 for x, y in zip(b, d)}
    )
    return tuple(a), tuple(b), tuple(c), tuple(d), order, coloring, k


# ---------------------------------------------------------------------------
# Outcome verification.

def _position(order):
    return {v: i for i, v in enumerate(order)}


def _verify_chain_witness(witness, a, b, order):
    chain = witness.vertices
    assert set(chain) == set(a) | set(b), "chain must use exactly the pair"
    ranks = [order.rank(v) for v in chain]
    assert rank_direction(ranks) in ("inc", "dec", "both"), "chain must be monotone"
    side = [v in set(a) for v in chain]
    assert all(x != y for x, y in zip(side, side[1:])), "chain must alternate sides"


def verify_bundled_outcome(a, b, order, coloring):
    """check_bundled must interleave or raise a genuine crossing."""
    ra = [order.rank(v) for v in a]
    rb = [order.rank(v) for v in b]
    try:
        witness = check_bundled(a, b, order, coloring)
    except CrossingContradiction as found:
        pairing = {frozenset(p) for p in zip(a, b)}
        assert frozenset(found.edge_a) in pairing
        assert frozenset(found.edge_b) in pairing
        assert edges_cross(found.edge_a, found.edge_b, _position(order))
        assert found.color == coloring.color(*found.edge_a)
        assert found.color == coloring.color(*found.edge_b)
        assert not oracle_strongly_interleave(ra, rb)
        return "crossing"
    assert witness.form in ("a_first", "b_first")
    _verify_chain_witness(witness, a, b, order)
    assert oracle_strongly_interleave(ra, rb)
    assert oracle_max_interleave(ra, rb) == len(a)
    return "chain"


def verify_rainbow_outcome(a, b, order, coloring):
    """check_rainbow must report the true separation side and direction."""
    witness = check_rainbow(a, b, order, coloring)
    ra = [order.rank(v) for v in a]
    rb = [order.rank(v) for v in b]
    side, _, direction = witness.form.rpartition("_")
    assert direction == rank_direction(ra) or rank_direction(ra) == "both"
    if side == "a_before_b":
        assert max(ra) < min(rb)
    else:
        assert side == "b_before_a" and max(rb) < min(ra)
    ranks = [order.rank(v) for v in witness.vertices]
    assert ranks == sorted(ranks)
    # Separated pairs never alternate beyond a single pair.
    merged = sorted([(r, 0) for r in ra] + [(r, 1) for r in rb])
    assert labels_alternate(merged) is (len(a) == 1)
    assert oracle_max_interleave(ra, rb) <= 1
    return witness


def verify_transfer_outcome(a, b, c, d, order, coloring, expect_valid):
    """Run the k-2 transfer and re-check whichever outcome appears."""
    ra = [order.rank(v) for v in a]
    rb = [order.rank(v) for v in b]
    k = oracle_max_interleave(ra, rb)
    try:
        got = rainbow_interleave_transfer(a, b, c, d, order, coloring)
    except CrossingContradiction as found:
        assert not expect_valid, "a valid page must not produce a contradiction"
        ac = {frozenset(p) for p in zip(a, c)}
        bd = {frozenset(p) for p in zip(b, d)}
        assert frozenset(found.edge_a) in ac and frozenset(found.edge_b) in bd
        assert edges_cross(found.edge_a, found.edge_b, _position(order))
        assert found.color == coloring.color(*found.edge_a) == coloring.color(*found.edge_b)
        return "crossing"
    rc = [order.rank(v) for v in c]
    rd = [order.rank(v) for v in d]
    assert got == oracle_max_interleave(rc, rd)
    assert got >= k - 2
    return "transferred"


# ---------------------------------------------------------------------------
# Exhaustive fan placements.

def fan_fan_placements(max_points=8):
    """Every placement of two disjoint fans on at most max_points positions.

    Yields (a, apex_a, b, apex_b, order); sequences are monotone by
    construction but interleaving is not guaranteed, so callers filter.
    """
    for k1 in range(2, max_points - 3):
        for k2 in range(2, max_points - k1 - 1):
            n = k1 + k2 + 2
            positions = range(n)
            for apex_a, apex_b in itertools.permutations(positions, 2):
                rest = [p for p in positions if p not in (apex_a, apex_b)]
                for a_set in itertools.combinations(rest, k1):
                    b_set = tuple(p for p in rest if p not in a_set)
                    for a_dir in (1, -1):
                        for b_dir in (1, -1):
                            yield (
                                a_set[::a_dir],
                                apex_a,
                                b_set[::b_dir],
                                apex_b,
                                int_order(n),
                            )


def fan_rainbow_placements(points=10):
    """Every split of `points` positions into a rainbow pair, a fan, an apex.

    Yields (a, b, c, apex, order) with a monotone, b opposite, c aligned
    with a; rainbow validity and 3-interleaving are left to the caller.
    """
    positions = range(points)
    for apex in positions:
        rest = [p for p in positions if p != apex]
        for a_set in itertools.combinations(rest, 3):
            mid = [p for p in rest if p not in a_set]
            for b_set in itertools.combinations(mid, 3):
                c_set = tuple(p for p in mid if p not in b_set)
                for flip in (1, -1):
                    yield (
                        a_set[::flip],
                        b_set[::-flip],
                        c_set[::flip],
                        apex,
                        int_order(points),
                    )


def fan_coloring(*edge_groups):
    return EdgeColoring({e: 0 for group in edge_groups for e in group})
