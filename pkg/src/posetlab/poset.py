"""Finite posets as game boards: construction, algebra, families, queries.

A poset is stored as its reflexive-transitive order relation, one bitmask row
per point (``up[i]`` = everyone weakly above point i).  Cover edges (the
transitive reduction) are derived on demand.  Posets are immutable: ``play``,
``parallel`` and ``series`` all build new objects, so values can be shared
freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import (
    BadParams,
    ColorMixing,
    NotInvolution,
    NotOrderPreserving,
    PromiseViolation,
    UnknownLabel,
    UnknownPoint,
)

BLACK = "black"
WHITE = "white"

PO = "PO"
HD = "HD"
AR = "AR"
REPRESENTATIONS = (PO, HD, AR)


class PointId(NamedTuple):
    """A point: dense per-poset ``index`` plus the stable user-facing ``label``."""

    index: int
    label: str


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset, optionally black/white colored on every point."""

    __slots__ = ("labels", "colors", "_up", "_down", "_index", "_full")

    def __init__(
        self,
        labels: Sequence[str],
        up: Sequence[int],
        colors: Optional[Sequence[str]] = None,
    ):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise PromiseViolation("duplicate point labels")
        n = len(labels)
        up = tuple(up)
        if len(up) != n:
            raise PromiseViolation("closure row count does not match point count")
        full = (1 << n) - 1
        down = [0] * n
        for i in range(n):
            if not (up[i] >> i) & 1:
                raise PromiseViolation("closure must be reflexive")
            if up[i] & ~full:
                raise PromiseViolation("closure row has out-of-range bits")
            for j in iter_bits(up[i]):
                down[j] |= 1 << i
        for i in range(n):
            if up[i] & down[i] != 1 << i:
                raise PromiseViolation("closure must be antisymmetric")
            acc = 0
            for j in iter_bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                raise PromiseViolation("closure must be transitive")
        if colors is not None:
            colors = tuple(colors)
            if len(colors) != n:
                raise PromiseViolation("color count does not match point count")
            for c in colors:
                if c not in (BLACK, WHITE):
                    raise PromiseViolation(f"bad color {c!r}")
            if n == 0:
                colors = None
        self.labels = labels
        self.colors = colors
        self._up = up
        self._down = tuple(down)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._full = full

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def is_colored(self) -> bool:
        return self.colors is not None

    @property
    def is_empty(self) -> bool:
        return not self.labels

    def points(self) -> list[PointId]:
        return [PointId(i, lab) for i, lab in enumerate(self.labels)]

    def point(self, ref) -> PointId:
        """Resolve a label, index, or PointId to a PointId of this poset."""
        if isinstance(ref, PointId):
            i = self._index.get(ref.label)
            if i is None or i != ref.index:
                raise UnknownPoint(f"point {ref!r} is not in this poset")
            return ref
        if isinstance(ref, str):
            i = self._index.get(ref)
            if i is None:
                raise UnknownPoint(f"no point labeled {ref!r}")
            return PointId(i, ref)
        if isinstance(ref, int):
            if not 0 <= ref < self.n:
                raise UnknownPoint(f"point index {ref} out of range")
            return PointId(ref, self.labels[ref])
        raise UnknownPoint(f"cannot resolve point reference {ref!r}")

    def color_of(self, ref) -> Optional[str]:
        p = self.point(ref)
        return None if self.colors is None else self.colors[p.index]

    def leq(self, a, b) -> bool:
        """True iff a <= b in the order."""
        ia, ib = self.point(a).index, self.point(b).index
        return bool((self._up[ia] >> ib) & 1)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def full_mask(self) -> int:
        return self._full

    def covers(self) -> list[tuple[str, str]]:
        """Cover edges (lo, hi) of the transitive reduction, index-ordered."""
        out = []
        for i in range(self.n):
            strict_up = self._up[i] & ~(1 << i)
            for j in iter_bits(strict_up):
                between = strict_up & (self._down[j] & ~(1 << j))
                if not between:
                    out.append((self.labels[i], self.labels[j]))
        return out

    def relation(self) -> list[tuple[str, str]]:
        """All strict pairs (lo, hi) of the order."""
        out = []
        for i in range(self.n):
            for j in iter_bits(self._up[i] & ~(1 << i)):
                out.append((self.labels[i], self.labels[j]))
        return out

    def minimal_points(self) -> list[PointId]:
        return [
            PointId(i, self.labels[i])
            for i in range(self.n)
            if self._down[i] == 1 << i
        ]

    def maximal_points(self) -> list[PointId]:
        return [
            PointId(i, self.labels[i])
            for i in range(self.n)
            if self._up[i] == 1 << i
        ]

    def restrict(self, mask: int) -> "Poset":
        """Induced subposet on the points whose bits are set in ``mask``."""
        keep = list(iter_bits(mask & self._full))
        remap = {old: new for new, old in enumerate(keep)}
        labels = [self.labels[i] for i in keep]
        up = []
        for i in keep:
            row = 0
            for j in iter_bits(self._up[i] & mask):
                row |= 1 << remap[j]
            up.append(row)
        colors = None if self.colors is None else [self.colors[i] for i in keep]
        return Poset(labels, up, colors)

    def down_sets(self) -> Iterator[int]:
        """Enumerate every down set of the poset as a bitmask (2^width many at worst)."""
        seen = {self._full}
        stack = [self._full]
        yield self._full
        while stack:
            mask = stack.pop()
            for i in iter_bits(mask):
                child = mask & ~self._up[i]
                if child not in seen:
                    seen.add(child)
                    yield child
                    stack.append(child)

    def is_down_set(self, mask: int) -> bool:
        for i in iter_bits(mask):
            if self._down[i] & ~mask:
                return False
        return True

    # -- equality ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.labels == other.labels
            and self._up == other._up
            and self.colors == other.colors
        )

    def __hash__(self) -> int:
        return hash((self.labels, self._up, self.colors))

    def same_as(self, other: "Poset", relabeling: Optional[Mapping[str, str]] = None) -> bool:
        """Equality up to an explicitly supplied relabeling (self label -> other label)."""
        if self.n != other.n:
            return False
        if relabeling is None:
            relabeling = {lab: lab for lab in self.labels}
        try:
            send = [other.point(relabeling[lab]).index for lab in self.labels]
        except (KeyError, UnknownPoint):
            return False
        if len(set(send)) != self.n:
            return False
        for i in range(self.n):
            if self.colors is not None or other.colors is not None:
                mine = None if self.colors is None else self.colors[i]
                theirs = None if other.colors is None else other.colors[send[i]]
                if mine != theirs:
                    return False
            row = 0
            for j in iter_bits(self._up[i]):
                row |= 1 << send[j]
            if row != other._up[send[i]]:
                return False
        return True

    def __repr__(self) -> str:
        kind = "bw" if self.is_colored else "impartial"
        return f"Poset({self.n} points, {kind})"


# -- construction from edge lists ---------------------------------------


def _normalize_points(points) -> tuple[list[str], Optional[list[str]]]:
    labels: list[str] = []
    colors: list[Optional[str]] = []
    for entry in points:
        if isinstance(entry, str):
            labels.append(entry)
            colors.append(None)
        else:
            lab, col = entry
            labels.append(lab)
            colors.append(col)
    if len(set(labels)) != len(labels):
        raise PromiseViolation("duplicate point labels")
    colored = [c is not None for c in colors]
    if any(colored) and not all(colored):
        raise ColorMixing("either every point or no point must carry a color")
    return labels, (list(colors) if any(colored) else None)  # type: ignore[arg-type]


def _closure_from_adjacency(n: int, adj: list[int]) -> list[int]:
    """Reflexive-transitive closure by DFS from each node."""
    up = [0] * n
    for start in range(n):
        seen = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            fresh = adj[v] & ~seen
            seen |= fresh
            stack.extend(iter_bits(fresh))
        up[start] = seen
    return up


def from_edges(points, arcs, repr: str = HD) -> Poset:
    """Build a poset from labeled points and arcs, under one of the three input promises.

    Arc (u, v) asserts u below v.  PO input must already be the full order
    (validated), HD is closed off transitively (must be acyclic), AR collapses
    strongly connected components and orders them by reachability.
    """
    if repr not in REPRESENTATIONS:
        raise BadParams(f"repr must be one of {REPRESENTATIONS}, got {repr!r}")
    labels, colors = _normalize_points(points)
    n = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    adj = [0] * n
    for u, v in arcs:
        if u not in index:
            raise UnknownLabel(f"arc endpoint {u!r} is not a declared point")
        if v not in index:
            raise UnknownLabel(f"arc endpoint {v!r} is not a declared point")
        adj[index[u]] |= 1 << index[v]

    if repr == PO:
        rel = [adj[i] | (1 << i) for i in range(n)]
        for i in range(n):
            for j in iter_bits(rel[i]):
                if rel[j] & ~rel[i]:
                    raise PromiseViolation(
                        f"PO relation is not transitive at {labels[i]!r} <= {labels[j]!r}"
                    )
                if i != j and (rel[j] >> i) & 1:
                    raise PromiseViolation(
                        f"PO relation is not antisymmetric on {labels[i]!r}, {labels[j]!r}"
                    )
        return Poset(labels, rel, colors)

    if repr == HD:
        up = _closure_from_adjacency(n, adj)
        for i in range(n):
            for j in iter_bits(up[i] & ~(1 << i)):
                if (up[j] >> i) & 1:
                    raise PromiseViolation("HD input must be acyclic")
        return Poset(labels, up, colors)

    # AR: condense strongly connected components, order by reachability.
    reach = _closure_from_adjacency(n, adj)
    comp_of = [-1] * n
    comps: list[list[int]] = []
    for i in range(n):
        if comp_of[i] >= 0:
            continue
        members = [j for j in iter_bits(reach[i]) if (reach[j] >> i) & 1]
        cid = len(comps)
        comps.append(members)
        for j in members:
            comp_of[j] = cid
    comps.sort(key=lambda members: members[0])
    comp_of = [-1] * n
    for cid, members in enumerate(comps):
        for j in members:
            comp_of[j] = cid
    new_labels = []
    new_colors: Optional[list[str]] = [] if colors is not None else None
    for members in comps:
        new_labels.append("+".join(labels[j] for j in members))
        if colors is not None and new_colors is not None:
            member_colors = {colors[j] for j in members}
            if len(member_colors) > 1:
                raise ColorMixing(
                    "strongly connected component mixes black and white points"
                )
            new_colors.append(member_colors.pop())
    m = len(comps)
    up = [0] * m
    for cid, members in enumerate(comps):
        row = 0
        for j in iter_bits(reach[members[0]]):
            row |= 1 << comp_of[j]
        up[cid] = row
    return Poset(new_labels, up, new_colors)


# -- game move ------------------------------------------------------------


def play(poset: Poset, point) -> Poset:
    """Play ``point``: remove it and everything above it, returning the rest."""
    p = poset.point(point)
    return poset.restrict(poset.full_mask() & ~poset.up_mask(p.index))


# -- poset algebra ---------------------------------------------------------


def _fresh_labels(taken: set[str], labels: Iterable[str]) -> list[str]:
    out = []
    for lab in labels:
        new = lab
        while new in taken:
            new += "'"
        taken.add(new)
        out.append(new)
    return out


def _check_combinable(p: Poset, q: Poset) -> Optional[bool]:
    """Return the colored-ness of the combination, or raise ColorMixing."""
    if p.is_empty and q.is_empty:
        return False
    if p.is_empty:
        return q.is_colored
    if q.is_empty:
        return p.is_colored
    if p.is_colored != q.is_colored:
        raise ColorMixing("cannot combine a colored poset with an impartial one")
    return p.is_colored


def parallel(p: Poset, q: Poset) -> Poset:
    """Disjoint union with no cross relations.  Clashing q labels get primed."""
    colored = _check_combinable(p, q)
    taken = set(p.labels)
    q_labels = _fresh_labels(taken, q.labels)
    labels = list(p.labels) + q_labels
    shift = p.n
    up = list(p._up) + [row << shift for row in q._up]
    colors = None
    if colored:
        colors = list(p.colors or ()) + list(q.colors or ())
    return Poset(labels, up, colors)


def series(p: Poset, q: Poset) -> Poset:
    """Series union p over q: everything in q below everything in p."""
    colored = _check_combinable(p, q)
    taken = set(p.labels)
    q_labels = _fresh_labels(taken, q.labels)
    labels = list(p.labels) + q_labels
    shift = p.n
    p_all = (1 << p.n) - 1
    up = list(p._up) + [(row << shift) | p_all for row in q._up]
    colors = None
    if colored:
        colors = list(p.colors or ()) + list(q.colors or ())
    return Poset(labels, up, colors)


def induced_subposet(poset: Poset, points) -> Poset:
    """Induced subposet on an arbitrary set of points (labels or PointIds)."""
    mask = 0
    for ref in points:
        mask |= 1 << poset.point(ref).index
    return poset.restrict(mask)


# -- named families ---------------------------------------------------------


def _empty() -> Poset:
    return Poset((), ())


def _chain(n: int, prefix: str = "p") -> Poset:
    labels = [f"{prefix}{i}" for i in range(n)]
    up = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
    return Poset(labels, up)


def _int_params(params, family: str, count: Optional[int] = None) -> list[int]:
    vals = []
    for x in params:
        if isinstance(x, bool) or not isinstance(x, int):
            raise BadParams(f"{family} parameters must be integers, got {x!r}")
        vals.append(x)
    if count is not None and len(vals) != count:
        raise BadParams(f"{family} takes {count} parameter(s), got {len(vals)}")
    return vals


def generate(family: str, *params) -> Poset:
    """Generate a named poset family member.

    Families: chain n, antichain n, v n, lambda n, diamond n, nim n1..nk,
    chomp m n, divisors n, forest parent-indices (-1 for a root, roots are
    maxima), levels n k1..kj (subset levels of [n] ordered by inclusion).
    """
    family = family.lower()
    if family == "chain":
        (n,) = _int_params(params, family, 1)
        if n < 0:
            raise BadParams("chain length must be >= 0")
        return _chain(n)
    if family == "antichain":
        (n,) = _int_params(params, family, 1)
        if n < 0:
            raise BadParams("antichain size must be >= 0")
        return Poset([f"p{i}" for i in range(n)], [1 << i for i in range(n)])
    if family == "v":
        (n,) = _int_params(params, family, 1)
        if n < 0:
            raise BadParams("v width must be >= 0")
        tops = Poset([f"t{i}" for i in range(n)], [1 << i for i in range(n)])
        return series(tops, Poset(["b"], [1]))
    if family == "lambda":
        (n,) = _int_params(params, family, 1)
        if n < 0:
            raise BadParams("lambda width must be >= 0")
        bottoms = Poset([f"b{i}" for i in range(n)], [1 << i for i in range(n)])
        return series(Poset(["t"], [1]), bottoms)
    if family == "diamond":
        (n,) = _int_params(params, family, 1)
        if n < 0:
            raise BadParams("diamond width must be >= 0")
        mids = Poset([f"m{i}" for i in range(n)], [1 << i for i in range(n)])
        return series(Poset(["t"], [1]), series(mids, Poset(["b"], [1])))
    if family == "nim":
        stacks = _int_params(params, family)
        if any(s < 1 for s in stacks):
            raise BadParams("nim stack sizes must be >= 1")
        out = _empty()
        for j, s in enumerate(stacks):
            out = parallel(out, _chain(s, prefix=f"s{j}_"))
        return out
    if family == "chomp":
        m, n = _int_params(params, family, 2)
        if m < 1 or n < 1:
            raise BadParams("chomp needs a grid of at least 1x1")
        squares = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
        squares.remove((1, 1))
        labels = [f"r{i}c{j}" for i, j in squares]
        up = []
        for a, (i, j) in enumerate(squares):
            row = 0
            for b, (i2, j2) in enumerate(squares):
                if i <= i2 and j <= j2:
                    row |= 1 << b
            up.append(row)
        return Poset(labels, up)
    if family == "divisors":
        (n,) = _int_params(params, family, 1)
        if n < 1:
            raise BadParams("divisors needs a positive integer")
        divs = [d for d in range(2, n + 1) if n % d == 0]
        labels = [str(d) for d in divs]
        up = []
        for a, d in enumerate(divs):
            row = 0
            for b, e in enumerate(divs):
                if e % d == 0:
                    row |= 1 << b
            up.append(row)
        return Poset(labels, up)
    if family == "forest":
        parents = _int_params(params, family)
        n = len(parents)
        arcs = []
        for child, par in enumerate(parents):
            if par == -1:
                continue
            if not 0 <= par < n:
                raise BadParams(f"forest parent index {par} out of range")
            if par == child:
                raise BadParams("forest node cannot be its own parent")
            arcs.append((f"n{child}", f"n{par}"))
        labels = [f"n{i}" for i in range(n)]
        try:
            return from_edges(labels, arcs, HD)
        except PromiseViolation as exc:
            raise BadParams(f"forest parent links contain a cycle: {exc}") from exc
    if family == "levels":
        vals = _int_params(params, family)
        if not vals:
            raise BadParams("levels needs a ground-set size and at least one level")
        n, ks = vals[0], sorted(set(vals[1:]))
        if n < 1 or not ks or any(not 0 <= k <= n for k in ks):
            raise BadParams("levels needs 0 <= k <= n for every level k")
        from itertools import combinations

        subsets = []
        for k in ks:
            subsets.extend(frozenset(c) for c in combinations(range(1, n + 1), k))
        labels = ["{" + ",".join(map(str, sorted(s))) + "}" for s in subsets]
        up = []
        for a, s in enumerate(subsets):
            row = 0
            for b, t in enumerate(subsets):
                if s <= t:
                    row |= 1 << b
            up.append(row)
        return Poset(labels, up)
    raise BadParams(f"unknown family {family!r}")


# -- structural queries ------------------------------------------------------


def comparability_components(poset: Poset, mask: Optional[int] = None) -> list[int]:
    """Connected components of the comparability graph, as bitmasks.

    Restricted to ``mask`` when given.  Singleton-free output order follows
    least member index.
    """
    if mask is None:
        mask = poset.full_mask()
    out = []
    todo = mask
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grown = 0
            for i in iter_bits(frontier):
                grown |= (poset.up_mask(i) | poset.down_mask(i)) & mask
            frontier = grown & ~comp
            comp |= frontier
        out.append(comp)
        todo &= ~comp
    return out


def width(poset: Poset) -> int:
    """Maximum antichain size, via Dilworth: n minus a maximum matching on the
    strict comparability relation."""
    n = poset.n
    match_lo = [-1] * n  # match_lo[j] = i means chain edge i < j is used

    def try_augment(i: int, visited: list[bool]) -> bool:
        for j in iter_bits(poset.up_mask(i) & ~(1 << i)):
            if visited[j]:
                continue
            visited[j] = True
            if match_lo[j] < 0 or try_augment(match_lo[j], visited):
                match_lo[j] = i
                return True
        return False

    matching = 0
    for i in range(n):
        if try_augment(i, [False] * n):
            matching += 1
    return n - matching


def articulation_point(poset: Poset) -> Optional[PointId]:
    """Least-index point comparable with every other point, if any."""
    full = poset.full_mask()
    for i in range(poset.n):
        if poset.up_mask(i) | poset.down_mask(i) == full:
            return PointId(i, poset.labels[i])
    return None


@dataclass(frozen=True)
class SymmetryReport:
    """What a validated order involution reveals about the game."""

    fixed_points: tuple[PointId, ...]
    is_down_set: bool
    predicted_outcome: Optional[str]  # "exists" / "forall" / None
    equivalent_subposet: Optional[Poset]


def symmetry_analysis(poset: Poset, mapping) -> SymmetryReport:
    """Analyze an order-preserving involution: fixed-point-free maps prove a
    second-player win, a minimum fixed point proves a first-player win, and a
    down-set fixed set is an equivalent (equal g-number) subgame."""
    phi = [-1] * poset.n
    pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
    for src, dst in pairs:
        phi[poset.point(src).index] = poset.point(dst).index
    if any(v < 0 for v in phi):
        raise NotInvolution("mapping must cover every point")
    for i in range(poset.n):
        if phi[phi[i]] != i:
            raise NotInvolution(
                f"mapping is not self-inverse at {poset.labels[i]!r}"
            )
    for i in range(poset.n):
        image = 0
        for j in iter_bits(poset.up_mask(i)):
            image |= 1 << phi[j]
        if image != poset.up_mask(phi[i]):
            raise NotOrderPreserving(
                f"mapping does not preserve order at {poset.labels[i]!r}"
            )
    fixed_mask = 0
    for i in range(poset.n):
        if phi[i] == i:
            fixed_mask |= 1 << i
    fixed = tuple(PointId(i, poset.labels[i]) for i in iter_bits(fixed_mask))
    predicted = None
    if not fixed:
        predicted = "forall"
    else:
        for f in fixed:
            if fixed_mask & ~poset.up_mask(f.index) == 0:
                predicted = "exists"  # f is the minimum fixed point
                break
    down = poset.is_down_set(fixed_mask)
    equivalent = poset.restrict(fixed_mask) if down else None
    return SymmetryReport(fixed, down, predicted, equivalent)
