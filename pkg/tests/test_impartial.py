"""Impartial solver: mex/xor, exact search, closed forms, oracle reductions."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posetlab.errors import (
    BadParams,
    BudgetExceeded,
    ColoredInput,
    NotParityUniform,
    NotTwoLevel,
    OracleInconsistent,
)
from posetlab.impartial import (
    GSet,
    ImpartialOutcome,
    SolveBudget,
    analyze,
    grundy,
    grundy_via_outcomes,
    gset,
    level_sets_grundy,
    mex,
    nim_best_move,
    outcome,
    parity_uniform_grundy,
    winning_moves,
    xor,
)
from posetlab.poset import BLACK, Poset, from_edges, generate, parallel, series
from posetlab.sampling import random_bipartite_poset, random_poset


class TestMexXor:
    def test_mex_examples(self):
        assert mex({0, 1, 3}) == 2
        assert mex(set()) == 0
        assert mex({1}, 2) == 3  # excluded after {1}: 0, 2, 3, ...

    @given(st.frozensets(st.integers(0, 40), max_size=12), st.integers(0, 5))
    def test_mex_is_ith_excluded(self, values, i):
        result = mex(values, i)
        assert result not in values
        below = [k for k in range(result) if k not in values]
        assert len(below) == i

    def test_xor_worked_example(self):
        assert xor(23, 13) == 26

    @given(st.integers(0, 1 << 20), st.integers(0, 1 << 20))
    def test_xor_group_laws(self, m, n):
        assert xor(m, n) == xor(n, m)
        assert xor(m, m) == 0
        assert xor(m, 0) == m

    def test_gset_helpers(self):
        s = GSet({0, 1, 3})
        assert s.mex() == 2
        assert s.mex(1) == 4
        assert s.xor_with(1) == GSet({1, 0, 2})


class TestGrundy:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_chain(self, n):
        assert grundy(generate("chain", n)) == n

    @pytest.mark.parametrize("n", range(0, 9))
    def test_antichain(self, n):
        assert grundy(generate("antichain", n)) == n % 2

    @pytest.mark.parametrize("n", range(1, 8))
    def test_v(self, n):
        assert grundy(generate("v", n)) == (n % 2) + 1

    def test_diamond_two(self):
        assert grundy(generate("diamond", 2)) == 3

    def test_colored_input_rejected(self):
        colored = from_edges([("a", BLACK)], [], "HD")
        with pytest.raises(ColoredInput):
            grundy(colored)

    def test_bounded_by_size(self):
        rng = random.Random(2)
        for _ in range(30):
            p = random_poset(rng, rng.randint(0, 9))
            assert grundy(p) <= p.n

    def test_memo_soundness_repeat_and_shuffle(self):
        rng = random.Random(9)
        for _ in range(10):
            n = rng.randint(1, 8)
            arcs = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.3
            ]
            p = from_edges([f"p{i}" for i in range(n)], [(f"p{i}", f"p{j}") for i, j in arcs], "HD")
            order = list(range(n))
            rng.shuffle(order)
            rank = {i: order.index(i) for i in range(n)}
            relabeled = from_edges(
                [f"q{order.index(i)}" for i in range(n)],
                [(f"q{rank[i]}", f"q{rank[j]}") for i, j in arcs],
                "HD",
            )
            assert grundy(p) == grundy(p) == grundy(relabeled)

    def test_deep_chain_does_not_hit_recursion_limit(self):
        assert grundy(generate("chain", 1500), SolveBudget(100_000, 60_000)) == 1500

    def test_split_components_matches_generic(self):
        rng = random.Random(13)
        for _ in range(20):
            p = random_poset(rng, rng.randint(0, 8))
            assert grundy(p) == grundy(p, split_components=True)


class TestGset:
    def test_singleton(self):
        assert gset(generate("chain", 1)) == GSet({0})

    def test_chain_three(self):
        assert gset(generate("chain", 3)) == GSet({0, 1, 2})

    def test_antichain_three(self):
        assert gset(generate("antichain", 3)) == GSet({0})


class TestOutcome:
    def test_empty_is_second_player_win(self):
        assert outcome(Poset((), ())).outcome is ImpartialOutcome.FORALL

    @pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (2, 3), (3, 3)])
    def test_chomp_first_player_wins(self, m, n):
        report = outcome(generate("chomp", m, n))
        assert report.outcome is ImpartialOutcome.EXISTS

    def test_mirrored_nim_is_loss(self):
        report = outcome(generate("nim", 4, 4))
        assert report.outcome is ImpartialOutcome.FORALL

    def test_articulation_shortcut_tagged(self):
        p = generate("chomp", 3, 4)
        fast = outcome(p, use_shortcuts=True)
        assert fast.outcome is ImpartialOutcome.EXISTS
        assert fast.method == "articulation"
        assert fast.positions_explored == 0
        assert outcome(p).method == "search"

    def test_shortcut_agrees_with_search(self):
        rng = random.Random(31)
        for _ in range(25):
            p = random_poset(rng, rng.randint(0, 8))
            assert outcome(p).outcome is outcome(p, use_shortcuts=True).outcome

    def test_equivalence_iff_equal_grundy(self):
        rng = random.Random(29)
        for _ in range(25):
            p = random_poset(rng, rng.randint(0, 7))
            q = random_poset(rng, rng.randint(0, 7))
            balanced = outcome(parallel(p, q)).outcome is ImpartialOutcome.FORALL
            assert balanced == (grundy(p) == grundy(q))

    def test_or_rule_for_series(self):
        rng = random.Random(23)
        for _ in range(25):
            p = random_poset(rng, rng.randint(0, 5))
            q = random_poset(rng, rng.randint(0, 5))
            some_exists = (
                outcome(p).outcome is ImpartialOutcome.EXISTS
                or outcome(q).outcome is ImpartialOutcome.EXISTS
            )
            got = outcome(series(p, q)).outcome is ImpartialOutcome.EXISTS
            assert got == some_exists


class TestWinningMoves:
    def test_chain_only_bottom(self):
        moves = winning_moves(generate("chain", 5))
        assert [p.label for p in moves] == ["p0"]

    def test_balanced_nim_has_none(self):
        assert winning_moves(generate("nim", 1, 1)) == []

    def test_moves_form_antichain(self):
        rng = random.Random(41)
        for _ in range(25):
            p = random_poset(rng, rng.randint(1, 9))
            moves = winning_moves(p)
            for a in moves:
                for b in moves:
                    if a != b:
                        assert not p.leq(a, b)

    def test_every_move_goes_to_forall(self):
        p = generate("chomp", 2, 3)
        from posetlab.poset import play

        for move in winning_moves(p):
            assert outcome(play(p, move)).outcome is ImpartialOutcome.FORALL


class TestNimBestMove:
    def test_example(self):
        assert nim_best_move([3, 5, 7]) == (0, 2)

    def test_balanced_none(self):
        assert nim_best_move([1, 1]) is None
        assert nim_best_move([]) is None

    def test_single_stack(self):
        assert nim_best_move([6]) == (0, 0)

    @given(st.lists(st.integers(0, 200), max_size=8))
    def test_postcondition_xor_zero(self, stacks):
        move = nim_best_move(stacks)
        total = 0
        for s in stacks:
            total ^= s
        if total == 0:
            assert move is None
        else:
            j, new = move
            assert 0 <= new < stacks[j]
            after = list(stacks)
            after[j] = new
            acc = 0
            for s in after:
                acc ^= s
            assert acc == 0


class TestGrundyViaOutcomes:
    def oracle(self, p):
        return outcome(p, split_components=True).outcome

    def test_chain_three(self):
        assert grundy_via_outcomes(generate("chain", 3), self.oracle) == 3

    def test_empty(self):
        assert grundy_via_outcomes(Poset((), ()), self.oracle) == 0

    def test_matches_grundy_on_randoms(self):
        rng = random.Random(51)
        for _ in range(15):
            p = random_poset(rng, rng.randint(0, 7))
            assert grundy_via_outcomes(p, self.oracle) == grundy(p)

    def test_queries_are_nonadaptive_and_counted(self):
        calls = []

        def counting(p):
            calls.append(p.n)
            return self.oracle(p)

        p = generate("chomp", 2, 2)
        grundy_via_outcomes(p, counting)
        assert len(calls) == p.n + 1
        assert calls == [p.n + i for i in range(p.n + 1)]

    def test_inconsistent_oracle_detected(self):
        with pytest.raises(OracleInconsistent):
            grundy_via_outcomes(
                generate("chain", 2), lambda p: ImpartialOutcome.EXISTS
            )
        with pytest.raises(OracleInconsistent):
            grundy_via_outcomes(
                generate("chain", 2), lambda p: ImpartialOutcome.FORALL
            )


class TestBudget:
    def test_position_budget(self):
        with pytest.raises(BudgetExceeded) as info:
            grundy(generate("antichain", 20), SolveBudget(max_positions=50))
        assert info.value.positions_explored > 0

    def test_time_budget(self):
        with pytest.raises(BudgetExceeded):
            grundy(generate("antichain", 30), SolveBudget(max_millis=50))

    def test_bad_budget(self):
        with pytest.raises(BadParams):
            SolveBudget(max_positions=0)


class TestParityUniform:
    def test_v2(self):
        assert parity_uniform_grundy(generate("v", 2)) == 1

    def test_chain_two(self):
        assert parity_uniform_grundy(generate("chain", 2)) == 2

    def test_lambda_two(self):
        assert parity_uniform_grundy(generate("lambda", 2)) == 2

    def test_antichain_fails_with_degree_zero_tops(self):
        with pytest.raises(NotParityUniform):
            parity_uniform_grundy(generate("antichain", 2))

    def test_three_levels_rejected(self):
        with pytest.raises(NotTwoLevel):
            parity_uniform_grundy(generate("chain", 3))

    def test_mixed_parities_rejected(self):
        # t0 sees one bottom, t1 sees two
        p = from_edges(
            ["b0", "b1", "t0", "t1"],
            [("b0", "t0"), ("b0", "t1"), ("b1", "t1")],
            "HD",
        )
        with pytest.raises(NotParityUniform):
            parity_uniform_grundy(p, tops=["t0", "t1"])

    def test_explicit_tops_validated(self):
        p = generate("chain", 2)
        with pytest.raises(NotTwoLevel):
            parity_uniform_grundy(p, tops=["p0"])  # p0 is below p1

    def test_matches_brute_force_on_random_bipartite(self):
        rng = random.Random(77)
        checked = 0
        for _ in range(120):
            p, tops = random_bipartite_poset(
                rng, rng.randint(0, 4), rng.randint(0, 4)
            )
            try:
                fast = parity_uniform_grundy(p, tops=tops)
            except NotParityUniform:
                continue
            assert fast == grundy(p)
            checked += 1
        assert checked > 10


class TestLevelSets:
    def test_even_k_binomial_branch(self):
        assert level_sets_grundy(4, 2, 3) == 0  # C(2,1) mod 2
        assert level_sets_grundy(6, 2, 3) == 1  # C(3,1) mod 2
        assert level_sets_grundy(6, 4, 5) == 1  # C(3,2) mod 2

    def test_odd_k_is_forall(self):
        assert level_sets_grundy(4, 1, 3) == 0
        assert level_sets_grundy(6, 3, 5) == 0

    def test_bad_params(self):
        for args in [(3, 1, 3), (4, 0, 3), (4, 3, 3), (4, 2, 4), (4, 3, 5)]:
            with pytest.raises(BadParams):
                level_sets_grundy(*args)


class TestAnalyze:
    def test_consistent_with_parts(self):
        p = generate("nim", 3, 5, 7)
        report = analyze(p)
        assert report.grundy == grundy(p)
        assert report.outcome is ImpartialOutcome.EXISTS
        assert [m.label for m in report.winning_moves] == [
            m.label for m in winning_moves(p)
        ]
        assert report.gset == gset(p)
        assert report.positions_explored > 0
