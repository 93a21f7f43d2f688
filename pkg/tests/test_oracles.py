"""The reference implementations must hold up on their own.

Frozen small cases first, then cross-checks between the two oracle
routes (exhaustive subsequence search vs. the quadratic DP) so the
rest of the suite can lean on either.
"""

import itertools
import random

from helpers_naive import (
    brute_longest_monotone,
    chromatic_number,
    complete_graph,
    dp_max_interleave,
    edges_cross,
    edges_nest,
    labels_alternate,
    min_pages_for_position,
    min_queues_for_position,
    naive_queue_number,
    naive_stack_number,
    oracle_max_interleave,
    oracle_strongly_interleave,
    relation,
    star_graph,
)


def test_relation_basics():
    position = {v: v for v in range(10)}
    assert relation((0, 2), (1, 3), position) == "cross"
    assert relation((0, 3), (1, 2), position) == "nest"
    assert relation((0, 1), (2, 3), position) == "separate"
    assert relation((0, 1), (1, 2), position) == "shared"
    # Sorting the endpoints is the oracle's job, not the caller's.
    assert relation((2, 0), (3, 1), position) == "cross"


def test_cross_and_nest_are_symmetric_and_exclusive():
    position = {v: v for v in range(6)}
    pool = list(itertools.combinations(range(6), 2))
    for e, f in itertools.combinations(pool, 2):
        assert edges_cross(e, f, position) == edges_cross(f, e, position)
        assert edges_nest(e, f, position) == edges_nest(f, e, position)
        assert not (edges_cross(e, f, position) and edges_nest(e, f, position))


def test_chromatic_number_frozen_cases():
    # Triangle, 5-cycle, bipartite K_{3,3}, and the empty graph.
    triangle = [{1, 2}, {0, 2}, {0, 1}]
    assert chromatic_number(triangle) == 3
    five_cycle = [{1, 4}, {0, 2}, {1, 3}, {2, 4}, {3, 0}]
    assert chromatic_number(five_cycle) == 3
    k33 = [{3, 4, 5}] * 3 + [{0, 1, 2}] * 3
    assert chromatic_number(k33) == 2
    assert chromatic_number([]) == 0
    assert chromatic_number([set(), set()]) == 1


def test_chromatic_number_matches_brute_force():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(2, 7)
        adj = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    adj[i].add(j)
                    adj[j].add(i)
        got = chromatic_number(adj)
        brute = None
        for k in range(1, n + 1):
            ok = any(
                all(assign[i] != assign[j] for i in range(n) for j in adj[i] if i < j)
                for assign in itertools.product(range(k), repeat=n)
            )
            if ok:
                brute = k
                break
        assert got == brute


def test_known_stack_and_queue_numbers():
    assert naive_stack_number(complete_graph(4)) == 2
    assert naive_stack_number(complete_graph(5)) == 3
    assert naive_queue_number(complete_graph(4)) == 2
    assert naive_queue_number(star_graph(5)) == 1
    assert naive_stack_number([]) == 0
    # A path needs one page and one queue in its natural order.
    path = [(i, i + 1) for i in range(4)]
    assert naive_stack_number(path) == 1
    assert naive_queue_number(path) == 1


def test_fixed_order_oracles():
    position = {v: v for v in range(4)}
    crossing_pair = [(0, 2), (1, 3)]
    assert min_pages_for_position(crossing_pair, position) == 2
    assert min_queues_for_position(crossing_pair, position) == 1
    nesting_pair = [(0, 3), (1, 2)]
    assert min_pages_for_position(nesting_pair, position) == 1
    assert min_queues_for_position(nesting_pair, position) == 2


def test_strong_interleave_oracle_cases():
    assert oracle_strongly_interleave([2, 6], [4, 8])
    assert oracle_strongly_interleave([4, 8], [2, 6])
    assert oracle_strongly_interleave([8, 4], [6, 2])
    assert oracle_strongly_interleave([3], [9])
    # Opposite directions can alternate positionally but never count.
    assert not oracle_strongly_interleave([1, 5], [7, 3])
    assert not oracle_strongly_interleave([2, 4], [6, 8])
    assert not oracle_strongly_interleave([2, 6, 4], [1, 5, 3])


def test_max_interleave_oracle_frozen():
    assert oracle_max_interleave([2, 4, 6], [3, 5, 7]) == 3
    assert oracle_max_interleave([2, 4, 6], [10, 12, 14]) == 1
    assert oracle_max_interleave([2, 4, 10], [3, 12, 14]) == 2


def test_dp_agrees_with_exhaustive_oracle():
    rng = random.Random(31)
    for _ in range(60):
        k = rng.randrange(1, 7)
        ranks = rng.sample(range(60), 2 * k)
        ra = sorted(ranks[:k])
        rb = sorted(ranks[k:])
        if rng.random() < 0.5:
            ra, rb = ra[::-1], rb[::-1]
        assert dp_max_interleave(ra, rb) == oracle_max_interleave(ra, rb)


def test_alternation_helper():
    assert labels_alternate([(1, 0), (2, 1), (3, 0)])
    assert not labels_alternate([(1, 0), (2, 0)])
    assert labels_alternate([])


def test_brute_longest_monotone():
    assert brute_longest_monotone([]) == 0
    assert brute_longest_monotone([5]) == 1
    assert brute_longest_monotone([3, 1, 2]) == 2
    assert brute_longest_monotone([1, 2, 3, 4]) == 4
    assert brute_longest_monotone([2, 4, 1, 3]) == 2
