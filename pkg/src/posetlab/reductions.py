"""Hardness-reduction gadget generators and the brute-force oracles that
validate them at desk scale.

Four constructions: Node Kayles -> three-level impartial poset, directed
reachability -> two-stack game under the AR encoding, path order -> four
nim stacks, and TQBF -> a two-level black-white poset.  Each comes with an
independent exact oracle (kayles search, digraph-game search, QBF evaluation)
so outcome equivalence is testable on small instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    BadFormula,
    BadVertices,
    BudgetExceeded,
    PromiseViolation,
    UnknownVertex,
)
from .impartial import DEFAULT_BUDGET, SolveBudget
from .poset import BLACK, HD, WHITE, Poset, from_edges, induced_subposet, iter_bits


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph on vertices 0..n-1; no loops, no parallel edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        canon = []
        for u, v in self.edges:
            if u == v:
                raise BadVertices(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UnknownVertex(f"edge ({u},{v}) leaves vertex range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise BadVertices(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 0..n-1; loops allowed (AR tolerates them)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UnknownVertex(f"edge ({u},{v}) leaves vertex range")
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))


def digraph_to_poset(d: Digraph) -> Poset:
    """The AR poset of a digraph: strongly connected components ordered by
    reachability (arc u->v puts u below v)."""
    labels = [f"v{i}" for i in range(d.n)]
    return from_edges(labels, [(f"v{u}", f"v{v}") for u, v in d.edges], "AR")


# -- Node Kayles ------------------------------------------------------------


def pad_graph(g: SimpleGraph) -> SimpleGraph:
    """Add two disjoint cliques (two K2s, or K2 + K4 to fix parity) so the
    edge count is odd and every vertex has a non-incident edge.  No-op when
    both already hold.  Padding never changes the Kayles outcome: a disjoint
    clique is one move, and the two cliques cancel."""
    m = len(g.edges)

    def vertex_ok(w: int) -> bool:
        return any(w != u and w != v for u, v in g.edges)

    if m % 2 == 1 and all(vertex_ok(w) for w in range(g.n)):
        return g
    extra: list[tuple[int, int]] = []
    base = g.n
    if m % 2 == 1:
        sizes = (2, 2)
    else:
        sizes = (2, 4)
    for size in sizes:
        for i in range(size):
            for j in range(i + 1, size):
                extra.append((base + i, base + j))
        base += size
    return SimpleGraph(base, g.edges + tuple(extra))


def kayles_to_poset(g: SimpleGraph) -> Poset:
    """Three-level impartial poset whose outcome equals the Node Kayles
    outcome of g: per padded edge e, a_e (minimal) below exactly the
    non-endpoints of e, and c_e (maximal) above exactly the endpoints."""
    padded = pad_graph(g)
    points = (
        [f"a_{u}_{v}" for u, v in padded.edges]
        + [f"b_{w}" for w in range(padded.n)]
        + [f"c_{u}_{v}" for u, v in padded.edges]
    )
    arcs = []
    for u, v in padded.edges:
        for w in range(padded.n):
            if w == u or w == v:
                arcs.append((f"b_{w}", f"c_{u}_{v}"))
            else:
                arcs.append((f"a_{u}_{v}", f"b_{w}"))
    return from_edges(points, arcs, HD)


def kayles_oracle(g: SimpleGraph, budget: Optional[SolveBudget] = None) -> bool:
    """Exact first-player-wins for Node Kayles by memoized search over
    remaining vertex sets (playing v removes v and its neighbors)."""
    if g.n > 20:
        raise BudgetExceeded(f"kayles oracle capped at 20 vertices, got {g.n}", 0)
    budget = budget or DEFAULT_BUDGET
    deadline = time.monotonic() + budget.max_millis / 1000.0
    closed = [1 << v for v in range(g.n)]
    for u, v in g.edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    memo: dict[int, bool] = {0: False}
    counter = [0]

    def wins(mask: int) -> bool:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        counter[0] += 1
        if counter[0] > budget.max_positions:
            raise BudgetExceeded("kayles oracle out of positions", counter[0])
        if counter[0] % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("kayles oracle out of time", counter[0])
        result = False
        for v in iter_bits(mask):
            if not wins(mask & ~closed[v]):
                result = True
                break
        memo[mask] = result
        return result

    return wins((1 << g.n) - 1)


# -- directed reachability (two copies with crossing edges) ------------------


def reach_to_game(d: Digraph, s: int, t: int) -> Digraph:
    """Two disjoint copies of d plus arcs t -> s' and t' -> s.  The AR poset
    game on the result is a first-player win iff t is reachable from s."""
    for v in (s, t):
        if not 0 <= v < d.n:
            raise UnknownVertex(f"vertex {v} is not in the graph")
    if s == t:
        raise BadVertices("s and t must be distinct")
    n = d.n
    edges = list(d.edges)
    edges += [(u + n, v + n) for u, v in d.edges]
    edges += [(t, s + n), (t + n, s)]
    return Digraph(2 * n, tuple(edges))


def digraph_game_first_wins(
    d: Digraph, budget: Optional[SolveBudget] = None
) -> bool:
    """Brute-force outcome of the digraph game where playing a vertex removes
    it and everything reachable from it."""
    budget = budget or DEFAULT_BUDGET
    deadline = time.monotonic() + budget.max_millis / 1000.0
    adj = [0] * d.n
    for u, v in d.edges:
        adj[u] |= 1 << v
    reach = []
    for v in range(d.n):
        seen = 1 << v
        stack = [v]
        while stack:
            w = stack.pop()
            fresh = adj[w] & ~seen
            seen |= fresh
            stack.extend(iter_bits(fresh))
        reach.append(seen)
    memo: dict[int, bool] = {0: False}
    counter = [0]

    def wins(mask: int) -> bool:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        counter[0] += 1
        if counter[0] > budget.max_positions:
            raise BudgetExceeded("digraph game out of positions", counter[0])
        if counter[0] % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("digraph game out of time", counter[0])
        result = False
        for v in iter_bits(mask):
            if not wins(mask & ~reach[v]):
                result = True
                break
        memo[mask] = result
        return result

    return wins((1 << d.n) - 1)


# -- path order (ORD) to four nim stacks -------------------------------------


def _path_order(d: Digraph) -> list[int]:
    """Vertices of a single directed path, in order; PromiseViolation if d is
    not one."""
    if len(d.edges) != max(d.n - 1, 0):
        raise PromiseViolation("a path on n vertices has n-1 edges")
    succ = {}
    indeg = [0] * d.n
    for u, v in d.edges:
        if u in succ:
            raise PromiseViolation(f"vertex {u} has two successors")
        succ[u] = v
        indeg[v] += 1
        if indeg[v] > 1:
            raise PromiseViolation(f"vertex {v} has two predecessors")
    starts = [v for v in range(d.n) if indeg[v] == 0]
    if d.n and len(starts) != 1:
        raise PromiseViolation("a path has exactly one start vertex")
    order = []
    v = starts[0] if d.n else None
    while v is not None and len(order) <= d.n:
        order.append(v)
        v = succ.get(v)
    if len(order) != d.n:
        raise PromiseViolation("graph is not a single path")
    return order


def ord_to_nim4(d: Digraph, x: int, y: int) -> Digraph:
    """Path-order gadget: duplicate the path, cut after x and y in both
    copies, cross-connect the cuts, and attach two fresh length-n paths.  The
    result is at most four disjoint chains, a first-player win iff y is
    reachable from x."""
    order = _path_order(d)
    for v in (x, y):
        if not 0 <= v < d.n:
            raise BadVertices(f"vertex {v} is not in the graph")
    if x == y:
        raise BadVertices("x and y must be distinct")
    pos = {v: i for i, v in enumerate(order)}
    if pos[x] == d.n - 1 or pos[y] == d.n - 1:
        raise BadVertices("x and y must both have successors")
    n = d.n
    s, t = order[pos[x] + 1], order[pos[y] + 1]
    cut = {(x, s), (y, t)}
    edges = [e for e in d.edges if e not in cut]
    edges += [(u + n, v + n) for u, v in d.edges if (u, v) not in cut]
    edges += [(y, t + n), (y + n, t)]  # crossing edges
    p_base, q_base = 2 * n, 3 * n
    edges += [(p_base + i, p_base + i + 1) for i in range(n - 1)]
    edges += [(q_base + i, q_base + i + 1) for i in range(n - 1)]
    edges += [(p_base + n - 1, order[0]), (x, q_base)]  # connecting edges
    return Digraph(4 * n, tuple(edges))


# -- TQBF to black-white poset ------------------------------------------------


@dataclass(frozen=True)
class QbfInstance:
    """Fully quantified CNF with the fixed prefix E x1 A x2 ... E x_{2n+1}."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 1 or self.num_vars % 2 == 0:
            raise BadFormula("num_vars must be odd and positive")
        canon = []
        for clause in self.clauses:
            lits = tuple(clause)
            for lit in lits:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise BadFormula(f"literal {lit} out of range")
            canon.append(lits)
        object.__setattr__(self, "clauses", tuple(canon))


def qbf_oracle(inst: QbfInstance, budget: Optional[SolveBudget] = None) -> bool:
    """Exact truth of the quantified formula by alternating search."""
    if inst.num_vars > 25:
        raise BudgetExceeded(
            f"qbf oracle capped at 25 variables, got {inst.num_vars}", 0
        )
    budget = budget or DEFAULT_BUDGET
    deadline = time.monotonic() + budget.max_millis / 1000.0
    counter = [0]

    def rec(var: int, clauses: tuple[frozenset[int], ...]) -> bool:
        if any(not c for c in clauses):
            return False
        if not clauses:
            return True
        counter[0] += 1
        if counter[0] > budget.max_positions:
            raise BudgetExceeded("qbf oracle out of positions", counter[0])
        if counter[0] % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("qbf oracle out of time", counter[0])
        exists = var % 2 == 1
        for value in (True, False):
            keep_lit = var if value else -var
            drop_lit = -keep_lit
            next_clauses = tuple(
                c - {drop_lit} for c in clauses if keep_lit not in c
            )
            result = rec(var + 1, next_clauses)
            if exists and result:
                return True
            if not exists and not result:
                return False
        return not exists

    return rec(1, tuple(frozenset(c) for c in inst.clauses))


_BITS = [f"{b:03b}" for b in range(8)]  # left, assignment, right


@dataclass(frozen=True)
class TqbfStructureReport:
    """Node bookkeeping of the TQBF gadget, for tests and the playground."""

    num_vars: int
    num_clauses: int
    non_waiting_nodes: int  # M
    waiting_counts: tuple[int, ...]  # |W_i| = (2n+2-i)*M
    inventory: dict = field(default_factory=dict)
    total_points: int = 0


def tqbf_to_bwposet(inst: QbfInstance) -> tuple[Poset, TqbfStructureReport]:
    """The two-level black-white poset encoding a TQBF instance.

    Per variable stack: eight choice nodes (one per left/assignment/right bit
    triple), a tower of waiting nodes above them, and an anti-cheat pair
    shared with the next stack.  Clause nodes sit above the choice nodes that
    satisfy them and above one interrupt node; a separate 8-below-1 balance
    game tunes the totals.  White moves first in play, matching the leading
    existential quantifier with White = Right.
    """
    v = inst.num_vars
    half = (v - 1) // 2  # number of universally quantified variables
    m = len(inst.clauses)
    non_waiting = 8 * v + 4 * half + m + 2 + 9
    waiting_counts = tuple((2 * half + 2 - i) * non_waiting for i in range(1, v + 1))

    points: list[tuple[str, str]] = []
    arcs: list[tuple[str, str]] = []

    def choice_color(i: int) -> str:
        return WHITE if i % 2 == 1 else BLACK

    def other(color: str) -> str:
        return BLACK if color == WHITE else WHITE

    for i in range(1, v + 1):
        c_col = choice_color(i)
        for bits in _BITS:
            points.append((f"C{i}_{bits}", c_col))
        for j in range(waiting_counts[i - 1]):
            points.append((f"W{i}_{j}", other(c_col)))
            for bits in _BITS:
                arcs.append((f"C{i}_{bits}", f"W{i}_{j}"))
        if i <= 2 * half:
            for name, bit in (("alpha", "0"), ("beta", "1")):
                node = f"{name}{i}"
                points.append((node, other(c_col)))
                for bits in _BITS:
                    if bits[2] == bit:
                        arcs.append((f"C{i}_{bits}", node))
                    if bits[0] == bit:
                        arcs.append((f"C{i+1}_{bits}", node))

    points.append(("interrupt", WHITE))
    points.append(("dummy", BLACK))
    arcs.append(("interrupt", "dummy"))
    for j, clause in enumerate(inst.clauses, start=1):
        node = f"clause{j}"
        points.append((node, BLACK))
        arcs.append(("interrupt", node))
        for lit in clause:
            i = abs(lit)
            want = "1" if lit > 0 else "0"
            for bits in _BITS:
                if bits[1] == want:
                    arcs.append((f"C{i}_{bits}", node))

    points.append(("bal_w", WHITE))
    for j in range(8):
        points.append((f"bal_b{j}", BLACK))
        arcs.append((f"bal_b{j}", "bal_w"))

    poset = from_edges(points, sorted(set(arcs)), HD)
    report = TqbfStructureReport(
        num_vars=v,
        num_clauses=m,
        non_waiting_nodes=non_waiting,
        waiting_counts=waiting_counts,
        inventory={
            "choice": 8 * v,
            "waiting": sum(waiting_counts),
            "anti_cheat": 4 * half,
            "clause": m,
            "dummy": 1,
            "interrupt": 1,
            "balance": 9,
        },
        total_points=poset.n,
    )
    return poset, report


def tqbf_stack_remnant(
    poset: Poset, stack: int, with_anticheat: bool
) -> Poset:
    """The stack position analyzed in phase two: one choice node (right bit 1)
    has been played, waiting nodes are gone, and at most the matching
    anti-cheat node survives, related only within its own stack.  Its value
    is +/-6 1/2 with the anti-cheat node and +/-7 without."""
    keep = [f"C{stack}_{bits}" for bits in _BITS if bits != "001"]
    if with_anticheat:
        keep.append(f"alpha{stack}")
    return induced_subposet(poset, keep)
