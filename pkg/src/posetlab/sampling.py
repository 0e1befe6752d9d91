"""Seeded random instances for tests and the bench command.

Oracle-equivalence suites pit a polynomial algorithm against the generic
exponential search, so sampled posets get their position count (number of
down sets) capped by rejection: the brute-force side must fit its budget.
"""

from __future__ import annotations

import random
from typing import Optional

from .nfree import Leaf, Par, SPTree, Ser, evaluate
from .poset import BLACK, HD, WHITE, Poset, from_edges
from .reductions import Digraph, SimpleGraph


def random_poset(
    rng: random.Random, n: int, density: float = 0.3, colored: bool = False
) -> Poset:
    """Random n-point poset: random arcs on an index-ordered DAG, closed off."""
    labels = [f"p{i}" for i in range(n)]
    arcs = [
        (labels[i], labels[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    points = labels
    if colored:
        points = [(lab, rng.choice((BLACK, WHITE))) for lab in labels]
    return from_edges(points, arcs, HD)


def count_down_sets(poset: Poset, cap: int) -> Optional[int]:
    """Number of down sets, or None once it exceeds ``cap``."""
    count = 0
    for _ in poset.down_sets():
        count += 1
        if count > cap:
            return None
    return count


def random_poset_capped(
    rng: random.Random,
    n: int,
    max_positions: int,
    density: float = 0.3,
    colored: bool = False,
) -> Poset:
    """Random poset whose position count stays brute-forceable."""
    while True:
        poset = random_poset(rng, n, density, colored)
        if count_down_sets(poset, max_positions) is not None:
            return poset
        density = min(0.9, density + 0.1)  # denser posets have fewer down sets


def random_sp_tree(rng: random.Random, leaves: int, ser_bias: float = 0.6) -> SPTree:
    """Random series-parallel shape with the given number of leaves."""
    if leaves <= 1:
        return Leaf()
    split = rng.randint(1, leaves - 1)
    left = random_sp_tree(rng, split, ser_bias)
    right = random_sp_tree(rng, leaves - split, ser_bias)
    if rng.random() < ser_bias:
        return Ser(left, right)
    return Par(left, right)


def random_sp_poset_capped(
    rng: random.Random, leaves: int, max_positions: int
) -> Poset:
    while True:
        poset = evaluate(random_sp_tree(rng, leaves))
        if count_down_sets(poset, max_positions) is not None:
            return poset


def random_simple_graph(rng: random.Random, n: int, p: float = 0.4) -> SimpleGraph:
    edges = tuple(
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    )
    return SimpleGraph(n, edges)


def random_digraph(rng: random.Random, n: int, p: float = 0.25) -> Digraph:
    edges = tuple(
        (u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p
    )
    return Digraph(n, edges)


def random_bipartite_poset(
    rng: random.Random, bottoms: int, tops: int, p: float = 0.5
) -> tuple[Poset, list[str]]:
    """Random two-level poset from a bipartite graph; returns the poset and
    the labels of its top side (isolated tops included)."""
    bottom_labels = [f"b{i}" for i in range(bottoms)]
    top_labels = [f"t{i}" for i in range(tops)]
    arcs = [
        (b, t) for b in bottom_labels for t in top_labels if rng.random() < p
    ]
    return from_edges(bottom_labels + top_labels, arcs, HD), top_labels
