import random

import pytest

from rpheap import TournamentHeap
from rpheap.analysis import lg
from rpheap.core import Node, subtree_size
from rpheap.tournament import (expand_full, from_heap_ordered, half_empty,
                               half_tree_signature, rank_size_violations, match_roots,
                               to_heap_ordered)


def node(v, rank=0):
    x = Node(float(v), int(v))
    x.rank = rank
    return x


def perfect(values):
    # fair matches only: a perfect half tree of rank lg(len(values))
    roots = [node(v) for v in values]
    while len(roots) > 1:
        roots = [match_roots(roots[i], roots[i + 1]) for i in range(0, len(roots), 2)]
    return roots[0]


def build(values):
    h = TournamentHeap()
    for i, v in enumerate(values):
        h.insert(v, i)
    return h


def test_fair_match_of_rank_two_roots():
    # two perfect rank-2 half trees with roots 3 and 7
    a = perfect([3, 30, 31, 32])
    b = perfect([7, 70, 71, 72])
    assert a.rank == b.rank == 2
    w = match_roots(a, b)
    assert w.value == 3 and w.rank == 3
    assert w.ord.value == 7 and w.ord.rank == 2
    assert not w.ord.unfair


def test_fair_match_of_singletons():
    w = match_roots(node(1), node(2))
    assert w.rank == 1 and subtree_size(w) == 2


def test_unfair_match_raises_winner_to_loser_rank():
    a = node(1, rank=0)
    b = perfect([5, 6, 7, 8, 9, 10, 11, 12])
    assert b.rank == 3
    a.rank = 1
    a.ord = node(2)
    a.ord.parent = a
    h = TournamentHeap()
    w = match_roots(a, b, h.counters)
    assert w is a and w.rank == 3
    assert b.unfair and b.rank == 2
    assert h.counters.comparisons == 1 and h.counters.links == 1


def test_match_rejects_same_root():
    x = node(1)
    with pytest.raises(ValueError):
        match_roots(x, x)


def test_rank_size_on_small_unfair_histories():
    # every insert / meld / delete-min history over up to 7 items keeps 2**k items
    rng = random.Random(0)
    for trial in range(2000):
        h = TournamentHeap()
        nid = 0
        for _ in range(rng.randint(1, 12)):
            if rng.random() < 0.65 or len(h) == 0:
                h.insert(rng.randint(0, 9), nid)
                nid += 1
            else:
                h.delete_min()
            if h.root is not None:
                assert not rank_size_violations(h.root)
        assert not h.audit()


def test_delete_min_after_eight_inserts():
    vals = [5, 2, 9, 1, 7, 3, 8, 6]
    h = build(vals)
    assert h.delete_min().value == 1
    assert h.root_count() == 1
    assert subtree_size(h.root) == 7
    assert not h.audit()


def test_delete_min_two_nodes():
    h = build([1, 2])
    h.delete_min()
    assert h.root.rank == 0 and h.root.ord is None


def test_delete_min_comparison_bound_fuzz():
    rng = random.Random(11)
    h = TournamentHeap()
    budget = 0
    nid = 0
    for _ in range(256):
        if rng.random() < 0.6 or len(h) == 0:
            h.insert(rng.random(), nid)
            nid += 1
            budget += 2
        else:
            budget += 2 * lg(len(h))
            h.delete_min()
    assert h.counters.comparisons <= budget


def test_unfair_matches_per_delete_min():
    rng = random.Random(2)
    h = TournamentHeap()
    for i in range(3000):
        if rng.random() < 0.55 or len(h) == 0:
            h.insert(rng.random(), i)
        else:
            n = len(h)
            h.delete_min()
            assert h.last_unfair <= n.bit_length()  # floor(lg n) + 1


def test_phi_tracks_unfair_edges():
    rng = random.Random(4)
    h = TournamentHeap()
    for i in range(500):
        phi = h.phi
        if rng.random() < 0.6 or len(h) == 0:
            h.insert(rng.random(), i)
            assert h.phi - phi <= 1
        else:
            h.delete_min()
        assert not h.audit()


def test_expand_full_singleton_and_pair():
    f = expand_full(build([4]).root)
    assert f.is_leaf and f.item.value == 4
    f = expand_full(build([4, 2]).root)
    assert not f.is_leaf and f.item.value == 2 and f.rank == 1
    assert {x.value for x in f.leaves()} == {2, 4}


def _check_full(f):
    leaves = f.leaves()
    if f.is_leaf:
        assert f.rank == 0
        return 1, 0
    assert f.item is min(leaves, key=lambda x: x.key)
    assert f.left.item is f.item  # the winner came up the left side
    nl, il = _check_full(f.left)
    nr, ir = _check_full(f.right)
    return nl + nr, il + ir + 1


def test_expand_full_seven_items():
    # seven inserts: rank-2 tree of four, then unfair matches with the others
    rng = random.Random(7)
    for trial in range(200):
        vals = rng.sample(range(100), 7)
        h = build(vals)
        h.delete_min()
        h.insert(vals[0] + 0.5, 99)
        f = expand_full(h.root)
        leaves, internal = _check_full(f)
        assert leaves == 7 and internal == 6
        assert sorted(x.id for x in f.leaves()) == sorted(x.id for x in h.iter_nodes())
        assert f.rank == h.root.rank


def test_half_empty_keeps_each_item_once():
    h = build([3, 1, 4, 1.5, 9, 2.6, 5])
    e = half_empty(expand_full(h.root))
    seen = []
    stack = [e]
    while stack:
        f = stack.pop()
        if f.item is not None:
            seen.append(f.item.id)
        if f.left is not None:
            stack += [f.left, f.right]
    assert sorted(seen) == list(range(7))


def test_heap_ordered_view():
    h = build([5, 2, 8, 1, 9, 3, 7])
    t = to_heap_ordered(h.root)
    stack = [t]
    count = 0
    while stack:
        x = stack.pop()
        count += 1
        for c in x.children:
            assert c.value > x.value
        stack += x.children
    assert count == 7
    # most recent match first: the root's first child is ord(root)
    assert t.children[0].id == h.root.ord.id


def test_heap_ordered_round_trip():
    rng = random.Random(9)
    for trial in range(1000):
        h = TournamentHeap()
        for i in range(rng.randint(1, 40)):
            h.insert(rng.random(), i)
        for _ in range(rng.randint(0, 5)):
            if len(h) > 1:
                h.delete_min()
        back = from_heap_ordered(to_heap_ordered(h.root))
        assert half_tree_signature(back) == half_tree_signature(h.root)
    assert to_heap_ordered(build([1]).root).children == []
