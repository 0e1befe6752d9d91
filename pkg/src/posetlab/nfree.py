"""Series-parallel (N-free) posets: detection, decomposition, fast g-numbers.

An "N" is four points a<b, c<d, c<b with the other three pairs incomparable.
Posets without one decompose into series/parallel unions of single points, and
the g-set of such a poset follows from the g-sets of the parts, giving a
polynomial-time solver where the generic search is exponential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .errors import ColoredInput, EmptyPoset, NotNFree
from .impartial import GSet, mex
from .poset import Poset, PointId, comparability_components, generate, iter_bits, parallel, series


class NWitness(NamedTuple):
    a: PointId
    b: PointId
    c: PointId
    d: PointId


@dataclass(frozen=True)
class Leaf:
    label: Optional[str] = None

    def to_text(self) -> str:
        return "leaf"


@dataclass(frozen=True)
class Par:
    left: "SPTree"
    right: "SPTree"

    def to_text(self) -> str:
        return f"par({self.left.to_text()},{self.right.to_text()})"


@dataclass(frozen=True)
class Ser:
    upper: "SPTree"
    lower: "SPTree"

    def to_text(self) -> str:
        return f"ser({self.upper.to_text()},{self.lower.to_text()})"


SPTree = Union[Leaf, Par, Ser]


def evaluate(tree: SPTree) -> Poset:
    """Rebuild the poset an SPTree denotes (leaf labels preserved when set)."""
    if isinstance(tree, Leaf):
        label = tree.label if tree.label is not None else "p"
        return Poset([label], [1])
    if isinstance(tree, Par):
        return parallel(evaluate(tree.left), evaluate(tree.right))
    return series(evaluate(tree.upper), evaluate(tree.lower))


def find_n(poset: Poset, mask: Optional[int] = None) -> Optional[NWitness]:
    """Lexicographically least induced N (by point indices), or None."""
    if mask is None:
        mask = poset.full_mask()
    n = poset.n
    sup = [poset.up_mask(i) & ~(1 << i) & mask for i in range(n)]
    sdown = [poset.down_mask(i) & ~(1 << i) & mask for i in range(n)]
    incomp = [
        mask & ~(poset.up_mask(i) | poset.down_mask(i)) if (mask >> i) & 1 else 0
        for i in range(n)
    ]
    for a in iter_bits(mask):
        for b in iter_bits(sup[a]):
            for c in iter_bits(sdown[b] & incomp[a]):
                d_cands = sup[c] & incomp[a] & incomp[b]
                if d_cands:
                    d = (d_cands & -d_cands).bit_length() - 1
                    return NWitness(
                        PointId(a, poset.labels[a]),
                        PointId(b, poset.labels[b]),
                        PointId(c, poset.labels[c]),
                        PointId(d, poset.labels[d]),
                    )
    return None


def _incomparability_components(poset: Poset, mask: int) -> list[int]:
    comps = []
    todo = mask
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grown = 0
            for i in iter_bits(frontier):
                grown |= mask & ~(poset.up_mask(i) | poset.down_mask(i))
            frontier = grown & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def decompose(poset: Poset) -> SPTree:
    """Series-parallel decomposition by recursive component splitting.

    Split on comparability components (parallel parts) or incomparability
    components (series layers, verified totally ordered); a connected/
    co-connected subposet of 2+ points contains an N and fails.
    """
    if poset.is_empty:
        raise EmptyPoset("cannot decompose the empty poset")
    return _decompose(poset, poset.full_mask())


def _fail(poset: Poset, mask: int) -> NotNFree:
    witness = find_n(poset, mask)
    return NotNFree(
        f"poset contains an induced N: {witness}", witness
    )


def _decompose(poset: Poset, mask: int) -> SPTree:
    if mask & (mask - 1) == 0:
        i = mask.bit_length() - 1
        return Leaf(poset.labels[i])
    comps = comparability_components(poset, mask)
    if len(comps) > 1:
        tree = _decompose(poset, comps[-1])
        for comp in reversed(comps[:-1]):
            tree = Par(_decompose(poset, comp), tree)
        return tree
    layers = _incomparability_components(poset, mask)
    if len(layers) == 1:
        raise _fail(poset, mask)
    # Every cross pair is comparable; directions must be uniform per pair,
    # which then orders the layers totally.
    reps = [(layer & -layer).bit_length() - 1 for layer in layers]
    for x, lx in enumerate(layers):
        for y in range(x + 1, len(layers)):
            ly = layers[y]
            below = poset.leq(reps[x], reps[y])
            for i in iter_bits(lx):
                want = ly if below else 0
                if poset.up_mask(i) & ly != want:
                    raise _fail(poset, mask)
    order = sorted(
        range(len(layers)),
        key=lambda x: sum(1 for y in range(len(layers)) if poset.leq(reps[x], reps[y])),
    )  # topmost first: fewest layers above
    tree = _decompose(poset, layers[order[-1]])
    for x in reversed(order[:-1]):
        tree = Ser(_decompose(poset, layers[x]), tree)
    return tree


def gset_par(gs_p: GSet, gs_q: GSet) -> GSet:
    """g-set of a parallel union from the operands' g-sets."""
    gp, gq = mex(gs_p), mex(gs_q)
    return GSet({gp ^ q for q in gs_q} | {p ^ gq for p in gs_p})


def gset_ser(gs_upper: GSet, gs_lower: GSet) -> GSet:
    """g-set of a series union (upper over lower): the Grundy product
    gs_upper ⊙ gs_lower = gs_lower ∪ {mex_i(gs_lower) : i in gs_upper}."""
    return GSet(set(gs_lower) | {mex(gs_lower, i) for i in gs_upper})


def _tree_gset(tree: SPTree) -> GSet:
    if isinstance(tree, Leaf):
        return GSet({0})
    if isinstance(tree, Par):
        return gset_par(_tree_gset(tree.left), _tree_gset(tree.right))
    return gset_ser(_tree_gset(tree.upper), _tree_gset(tree.lower))


def gset_nfree(poset: Poset) -> GSet:
    if poset.is_empty:
        return GSet()
    return _tree_gset(decompose(poset))


def grundy_nfree(poset: Poset) -> int:
    """g-number of an N-free poset in polynomial time: decompose, then
    propagate g-sets bottom-up and take the mex at the root."""
    if poset.is_colored:
        raise ColoredInput("grundy is defined for impartial posets")
    return mex(gset_nfree(poset))
