"""Hardness gadgets against their brute-force oracles, plus structure checks."""

from __future__ import annotations

import itertools
import random

import pytest

from posetlab.errors import (
    BadFormula,
    BadVertices,
    BudgetExceeded,
    PromiseViolation,
    UnknownVertex,
)
from posetlab.impartial import ImpartialOutcome, SolveBudget, grundy, outcome
from posetlab.partisan import Arena, from_bw_poset
from posetlab.poset import BLACK, WHITE, comparability_components, induced_subposet
from posetlab.reductions import (
    Digraph,
    QbfInstance,
    SimpleGraph,
    digraph_game_first_wins,
    digraph_to_poset,
    kayles_oracle,
    kayles_to_poset,
    ord_to_nim4,
    pad_graph,
    qbf_oracle,
    reach_to_game,
    tqbf_stack_remnant,
    tqbf_to_bwposet,
)
from posetlab.sampling import random_digraph, random_simple_graph


def exists(p, **kw):
    return outcome(p, **kw).outcome is ImpartialOutcome.EXISTS


def max_chain_length(p):
    longest = [0] * p.n
    for i in sorted(range(p.n), key=lambda i: p.up_mask(i).bit_count(), reverse=True):
        above = [j for j in range(p.n) if j != i and p.leq(i, j)]
        longest[i] = 1 + max((longest[j] for j in above), default=0)
    return max(longest, default=0)


class TestGraphTypes:
    def test_simple_graph_rejects_loops_and_duplicates(self):
        with pytest.raises(BadVertices):
            SimpleGraph(2, ((0, 0),))
        with pytest.raises(BadVertices):
            SimpleGraph(2, ((0, 1), (1, 0)))
        with pytest.raises(UnknownVertex):
            SimpleGraph(2, ((0, 5),))

    def test_digraph_allows_cycles(self):
        d = Digraph(2, ((0, 1), (1, 0), (0, 0)))
        assert len(d.edges) == 3


class TestKayles:
    def test_padding_k2(self):
        padded = pad_graph(SimpleGraph(2, ((0, 1),)))
        assert padded.n == 6 and len(padded.edges) == 3  # three disjoint K2s

    def test_padding_even_edges_uses_k2_k4(self):
        padded = pad_graph(SimpleGraph(0, ()))
        assert padded.n == 6 and len(padded.edges) == 7

    def test_padding_noop_when_conditions_hold(self):
        k3 = SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))
        assert pad_graph(k3) == k3

    def test_padding_preserves_kayles_outcome(self):
        rng = random.Random(31)
        for _ in range(20):
            g = random_simple_graph(rng, rng.randint(0, 6))
            assert kayles_oracle(g) == kayles_oracle(pad_graph(g))

    def test_poset_sizes(self):
        assert kayles_to_poset(SimpleGraph(2, ((0, 1),))).n == 12
        assert kayles_to_poset(SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))).n == 9

    def test_three_levels(self):
        rng = random.Random(32)
        for _ in range(10):
            g = random_simple_graph(rng, rng.randint(0, 5))
            assert max_chain_length(kayles_to_poset(g)) <= 3

    def test_oracle_examples(self):
        assert not kayles_oracle(SimpleGraph(0, ()))
        assert kayles_oracle(SimpleGraph(2, ((0, 1),)))
        assert kayles_oracle(SimpleGraph(3, ((0, 1), (1, 2))))  # play the center

    def test_oracle_cap(self):
        with pytest.raises(BudgetExceeded):
            kayles_oracle(SimpleGraph(21, ()))

    def test_outcome_equivalence_exhaustive_up_to_four(self):
        for n in range(0, 5):
            pairs = list(itertools.combinations(range(n), 2))
            for bits in range(1 << len(pairs)):
                g = SimpleGraph(
                    n, tuple(p for i, p in enumerate(pairs) if (bits >> i) & 1)
                )
                assert kayles_oracle(g) == exists(kayles_to_poset(g))


class TestReach:
    def test_single_edge_reachable(self):
        h = reach_to_game(Digraph(2, ((0, 1),)), 0, 1)
        assert h.n == 4 and (1, 2) in h.edges and (3, 0) in h.edges
        assert exists(digraph_to_poset(h))

    def test_unreachable_gives_mirrored_components(self):
        h = reach_to_game(Digraph(2, ()), 0, 1)
        assert not exists(digraph_to_poset(h))

    def test_cycles_condense(self):
        # With t reachable from s, the crossing edges close a loop through
        # both copies: everything collapses into a single component.
        d = Digraph(3, ((0, 1), (1, 0), (1, 2)))
        h = reach_to_game(d, 0, 2)
        p = digraph_to_poset(h)
        assert p.n == 1
        assert exists(p)
        # An SCC inside one copy condenses without gluing the copies.
        d2 = Digraph(3, ((0, 1), (1, 0),))
        p2 = digraph_to_poset(reach_to_game(d2, 0, 2))
        assert p2.n == 4
        assert not exists(p2)

    def test_vertex_validation(self):
        with pytest.raises(UnknownVertex):
            reach_to_game(Digraph(2, ()), 0, 5)
        with pytest.raises(BadVertices):
            reach_to_game(Digraph(2, ()), 1, 1)

    def test_equivalence_random(self):
        rng = random.Random(33)
        for _ in range(60):
            n = rng.randint(2, 7)
            d = random_digraph(rng, n)
            s, t = rng.sample(range(n), 2)
            reachable = _reachable(d, s, t)
            h = reach_to_game(d, s, t)
            assert exists(digraph_to_poset(h), split_components=True) == reachable
            assert digraph_game_first_wins(h) == reachable


def _reachable(d: Digraph, s: int, t: int) -> bool:
    adj = {u: [] for u in range(d.n)}
    for u, v in d.edges:
        adj[u].append(v)
    seen, stack = {s}, [s]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return t in seen


class TestDigraphGame:
    def test_matches_condensation_poset(self):
        rng = random.Random(34)
        for _ in range(40):
            d = random_digraph(rng, rng.randint(1, 7))
            want = exists(digraph_to_poset(d))
            assert digraph_game_first_wins(d) == want


class TestOrd:
    PATH5 = Digraph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))

    def test_forward_pair_wins(self):
        out = ord_to_nim4(self.PATH5, 1, 3)
        assert exists(digraph_to_poset(out), split_components=True)

    def test_backward_pair_loses(self):
        out = ord_to_nim4(self.PATH5, 3, 1)
        assert not exists(digraph_to_poset(out), split_components=True)

    def test_output_is_at_most_four_chains(self):
        for x, y in ((0, 1), (1, 3), (3, 2)):
            p = digraph_to_poset(ord_to_nim4(self.PATH5, x, y))
            comps = comparability_components(p)
            assert len(comps) <= 4
            for comp in comps:
                sub = p.restrict(comp)
                assert all(
                    sub.leq(a, b) or sub.leq(b, a)
                    for a in range(sub.n)
                    for b in range(sub.n)
                )

    def test_not_a_path_rejected(self):
        with pytest.raises(PromiseViolation):
            ord_to_nim4(Digraph(3, ((0, 1), (0, 2))), 0, 1)
        with pytest.raises(PromiseViolation):
            ord_to_nim4(Digraph(2, ((0, 1), (1, 0))), 0, 1)

    def test_bad_vertices(self):
        with pytest.raises(BadVertices):
            ord_to_nim4(self.PATH5, 4, 1)  # x has no successor
        with pytest.raises(BadVertices):
            ord_to_nim4(self.PATH5, 2, 2)

    def test_all_pairs_small(self):
        for n in range(2, 7):
            path = Digraph(n, tuple((i, i + 1) for i in range(n - 1)))
            for x in range(n - 1):
                for y in range(n - 1):
                    if x == y:
                        continue
                    got = exists(
                        digraph_to_poset(ord_to_nim4(path, x, y)),
                        split_components=True,
                    )
                    assert got == (y > x)


class TestQbf:
    def test_instance_validation(self):
        with pytest.raises(BadFormula):
            QbfInstance(2, ())
        with pytest.raises(BadFormula):
            QbfInstance(1, ((0,),))
        with pytest.raises(BadFormula):
            QbfInstance(1, ((2,),))

    def test_oracle_examples(self):
        assert qbf_oracle(QbfInstance(1, ((1,),)))
        assert not qbf_oracle(QbfInstance(1, ((1,), (-1,))))
        assert qbf_oracle(QbfInstance(3, ((1, 2, 3),)))

    def test_alternation_matters(self):
        # A lone universal literal fails; the same shape existentially succeeds.
        assert not qbf_oracle(QbfInstance(3, ((2,),)))
        assert qbf_oracle(QbfInstance(3, ((3,),)))

    def test_oracle_cap(self):
        with pytest.raises(BudgetExceeded):
            qbf_oracle(QbfInstance(27, ()))

    def test_exhaustive_against_table(self):
        rng = random.Random(35)
        for _ in range(30):
            num_vars = rng.choice((1, 3))
            clauses = tuple(
                tuple(
                    rng.choice((1, -1)) * v
                    for v in rng.sample(range(1, num_vars + 1), rng.randint(1, num_vars))
                )
                for _ in range(rng.randint(1, 3))
            )
            inst = QbfInstance(num_vars, clauses)
            assert qbf_oracle(inst) == _qbf_table(inst)


def _qbf_table(inst: QbfInstance) -> bool:
    def rec(var, assignment):
        if var > inst.num_vars:
            return all(
                any(
                    (lit > 0) == assignment[abs(lit)]
                    for lit in clause
                )
                for clause in inst.clauses
            )
        results = [rec(var + 1, {**assignment, var: val}) for val in (True, False)]
        return any(results) if var % 2 == 1 else all(results)

    return rec(1, {})


class TestTqbfGadget:
    def test_counts_n1_m2(self):
        inst = QbfInstance(3, ((1, 2), (-1, 3)))
        poset, report = tqbf_to_bwposet(inst)
        assert report.non_waiting_nodes == 41
        assert report.waiting_counts == (123, 82, 41)
        assert report.total_points == 41 + 123 + 82 + 41
        assert poset.n == report.total_points

    def test_waiting_dominance(self):
        _, report = tqbf_to_bwposet(QbfInstance(5, ((1,),)))
        m = report.non_waiting_nodes
        counts = report.waiting_counts
        for i in range(len(counts) - 1):
            assert counts[i] >= counts[i + 1] + m

    def test_colors_alternate_by_stack(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(3, ((1,),)))
        assert poset.color_of("C1_000") == WHITE
        assert poset.color_of("W1_0") == BLACK
        assert poset.color_of("alpha1") == BLACK
        assert poset.color_of("C2_000") == BLACK
        assert poset.color_of("W2_0") == WHITE
        assert poset.color_of("interrupt") == WHITE
        assert poset.color_of("clause1") == BLACK
        assert poset.color_of("bal_w") == WHITE

    def test_two_level(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(3, ((1, -2), (3,))))
        assert max_chain_length(poset) <= 2

    def test_anticheat_wiring(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(3, ((1,),)))
        assert poset.leq("C1_000", "alpha1")  # right bit 0
        assert not poset.leq("C1_001", "alpha1")
        assert poset.leq("C1_001", "beta1")
        assert poset.leq("C2_000", "alpha1")  # left bit 0 of the next stack
        assert not poset.leq("C2_100", "alpha1")

    def test_clause_wiring(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(3, ((1, -3),)))
        assert poset.leq("C1_010", "clause1")  # x1 positive, assignment 1
        assert not poset.leq("C1_000", "clause1")
        assert poset.leq("C3_000", "clause1")  # x3 negative, assignment 0
        assert not poset.leq("C3_010", "clause1")
        assert poset.leq("interrupt", "clause1")
        assert poset.leq("interrupt", "dummy")

    def test_balance_section_value(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(1, ((1,),)))
        arena = Arena()
        balance = induced_subposet(
            poset, [lab for lab in poset.labels if lab.startswith("bal_")]
        )
        value = arena.value(from_bw_poset(balance, arena))
        assert str(value) == "15/2"

    def test_stack_remnant_values(self):
        poset, _ = tqbf_to_bwposet(QbfInstance(3, ((1,),)))
        arena = Arena()
        assert str(arena.value(from_bw_poset(tqbf_stack_remnant(poset, 1, True), arena))) == "-13/2"
        assert str(arena.value(from_bw_poset(tqbf_stack_remnant(poset, 1, False), arena))) == "-7"
        assert str(arena.value(from_bw_poset(tqbf_stack_remnant(poset, 2, True), arena))) == "13/2"
        assert str(arena.value(from_bw_poset(tqbf_stack_remnant(poset, 3, False), arena))) == "-7"

    def test_even_vars_rejected(self):
        with pytest.raises(BadFormula):
            tqbf_to_bwposet(QbfInstance(2, ()))
