"""General two-player game engine (sums, order, values) and black-white posets.

Games live in an :class:`Arena` that hash-conses every node, so the heavy
mutually recursive predicates (>= 0, numeric, value) memoize globally per
arena.  Sums stay symbolic — a pair of node keys — and only expand when
options are enumerated, since expanding eagerly explodes.

Black is Left throughout: a single black point is the game 1, a single white
point is -1, and black-white poset games come out numeric with dyadic values.
"""

from __future__ import annotations

import enum
import hashlib
import time
from typing import Iterable, Optional, Sequence

from .dyadic import DyadicRational, simplest_between
from .errors import (
    BudgetExceeded,
    IllegalMove,
    NotNumeric,
    UncoloredPoint,
)
from .impartial import DEFAULT_BUDGET, SolveBudget
from .poset import BLACK, WHITE, Poset, PointId, iter_bits

_EXPLICIT = 0
_SUM = 1


class OutcomeClass(str, enum.Enum):
    P = "P"  # previous player (second to move) wins
    L = "L"  # Left (Black) wins regardless
    R = "R"  # Right (White) wins regardless
    N = "N"  # next player (first to move) wins

    def __str__(self) -> str:
        return self.value


class Game:
    """Handle to an interned game node; only meaningful within its arena."""

    __slots__ = ("arena", "gid")

    def __init__(self, arena: "Arena", gid: int):
        self.arena = arena
        self.gid = gid

    @property
    def left_options(self) -> list["Game"]:
        return [Game(self.arena, g) for g in self.arena._options(self.gid)[0]]

    @property
    def right_options(self) -> list["Game"]:
        return [Game(self.arena, g) for g in self.arena._options(self.gid)[1]]

    @property
    def structural_key(self) -> str:
        return self.arena._digest(self.gid)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Game)
            and other.arena is self.arena
            and other.gid == self.gid
        )

    def __hash__(self) -> int:
        return hash((id(self.arena), self.gid))

    def __neg__(self) -> "Game":
        return self.arena.neg(self)

    def __add__(self, other: "Game") -> "Game":
        return self.arena.sum(self, other)

    def __sub__(self, other: "Game") -> "Game":
        return self.arena.sum(self, self.arena.neg(other))

    def __repr__(self) -> str:
        return f"Game(#{self.gid})"


class Arena:
    """Games store plus memo tables.  One arena per thread of control."""

    def __init__(self, budget: Optional[SolveBudget] = None):
        self._nodes: list[tuple] = []
        self._intern: dict[tuple, int] = {}
        self._option_cache: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
        self._neg_memo: dict[int, int] = {}
        self._ge_zero_memo: dict[int, bool] = {}
        self._numeric_memo: dict[int, bool] = {}
        self._value_memo: dict[int, DyadicRational] = {}
        self._digest_memo: dict[int, str] = {}
        self._budget = budget or DEFAULT_BUDGET
        self._work = 0
        self._deadline = time.monotonic() + self._budget.max_millis / 1000.0
        self.zero = self.make((), ())
        self.star = self.make((self.zero,), (self.zero,))

    @property
    def work_units(self) -> int:
        """Nodes created plus memo misses, the budget's position analogue."""
        return self._work

    # -- plumbing ------------------------------------------------------

    def _charge(self):
        self._work += 1
        if self._work > self._budget.max_positions:
            raise BudgetExceeded(
                f"arena exceeded {self._budget.max_positions} work units", self._work
            )
        if self._work % 4096 == 0 and time.monotonic() > self._deadline:
            raise BudgetExceeded(
                f"arena exceeded {self._budget.max_millis} ms", self._work
            )

    def _node(self, key: tuple) -> int:
        gid = self._intern.get(key)
        if gid is None:
            self._charge()
            gid = len(self._nodes)
            self._nodes.append(key)
            self._intern[key] = gid
        return gid

    def _as_gid(self, g) -> int:
        if isinstance(g, Game):
            if g.arena is not self:
                raise ValueError("game belongs to a different arena")
            return g.gid
        return g

    # -- construction ----------------------------------------------------

    def make(self, left: Iterable, right: Iterable) -> Game:
        """Explicit game from iterables of left and right options."""
        lids = tuple(sorted(set(self._as_gid(g) for g in left)))
        rids = tuple(sorted(set(self._as_gid(g) for g in right)))
        return Game(self, self._node((_EXPLICIT, lids, rids)))

    def integer(self, n: int) -> Game:
        g = self.zero
        for _ in range(abs(n)):
            g = self.make((g,), ()) if n > 0 else self.make((), (g,))
        return g

    def neg(self, g) -> Game:
        return Game(self, self._neg(self._as_gid(g)))

    def _neg(self, gid: int) -> int:
        cached = self._neg_memo.get(gid)
        if cached is not None:
            return cached
        node = self._nodes[gid]
        if node[0] == _SUM:
            out = self._sum(self._neg(node[1]), self._neg(node[2]))
        else:
            lids = tuple(sorted(self._neg(r) for r in node[2]))
            rids = tuple(sorted(self._neg(l) for l in node[1]))
            out = self._node((_EXPLICIT, lids, rids))
        self._neg_memo[gid] = out
        self._neg_memo[out] = gid
        return out

    def sum(self, g, h) -> Game:
        return Game(self, self._sum(self._as_gid(g), self._as_gid(h)))

    def _sum(self, a: int, b: int) -> int:
        if a == self.zero.gid:
            return b
        if b == self.zero.gid:
            return a
        if a > b:
            a, b = b, a
        return self._node((_SUM, a, b))

    # -- option enumeration ------------------------------------------------

    def _options(self, gid: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        node = self._nodes[gid]
        if node[0] == _EXPLICIT:
            return node[1], node[2]
        cached = self._option_cache.get(gid)
        if cached is None:
            _, a, b = node
            al, ar = self._options(a)
            bl, br = self._options(b)
            left = tuple(sorted({self._sum(x, b) for x in al} | {self._sum(a, x) for x in bl}))
            right = tuple(sorted({self._sum(x, b) for x in ar} | {self._sum(a, x) for x in br}))
            cached = (left, right)
            self._option_cache[gid] = cached
        return cached

    def _digest(self, gid: int) -> str:
        cached = self._digest_memo.get(gid)
        if cached is None:
            left, right = self._options(gid)
            payload = (
                "{" + ",".join(self._digest(g) for g in left)
                + "|" + ",".join(self._digest(g) for g in right) + "}"
            )
            cached = hashlib.sha1(payload.encode()).hexdigest()[:16]
            self._digest_memo[gid] = cached
        return cached

    # -- order and outcome ---------------------------------------------------

    def ge_zero(self, g) -> bool:
        """G >= 0: no right option r with r <= 0 (second-move win for Left)."""
        return self._ge_zero(self._as_gid(g))

    def le_zero(self, g) -> bool:
        return self._ge_zero(self._neg(self._as_gid(g)))

    def _ge_zero(self, gid: int) -> bool:
        cached = self._ge_zero_memo.get(gid)
        if cached is not None:
            return cached
        self._charge()
        result = True
        for r in self._options(gid)[1]:
            if self._ge_zero(self._neg(r)):
                result = False
                break
        self._ge_zero_memo[gid] = result
        return result

    def outcome_class(self, g) -> OutcomeClass:
        gid = self._as_gid(g)
        ge = self._ge_zero(gid)
        le = self._ge_zero(self._neg(gid))
        if ge and le:
            return OutcomeClass.P
        if ge:
            return OutcomeClass.L
        if le:
            return OutcomeClass.R
        return OutcomeClass.N

    def leq(self, g, h) -> bool:
        """G <= H, computed as H - G >= 0."""
        a, b = self._as_gid(g), self._as_gid(h)
        return self._ge_zero(self._sum(b, self._neg(a)))

    def equivalent(self, g, h) -> bool:
        """Same value: G - H is a second-player win."""
        a, b = self._as_gid(g), self._as_gid(h)
        diff = self._sum(a, self._neg(b))
        return self._ge_zero(diff) and self._ge_zero(self._neg(diff))

    def simplify(self, g) -> Game:
        """Drop dominated options on both sides (result is equivalent)."""
        gid = self._as_gid(g)
        left, right = self._options(gid)

        def keep(opts: tuple[int, ...], dominated) -> list[Game]:
            kept = []
            for y in opts:
                drop = False
                for other in opts:
                    if other == y or not dominated(y, other):
                        continue
                    # Mutual domination means equal value: keep the lower id.
                    if not dominated(other, y) or other < y:
                        drop = True
                        break
                if not drop:
                    kept.append(Game(self, y))
            return kept

        low = keep(left, lambda y, o: self.leq(y, o))
        high = keep(right, lambda y, o: self.leq(o, y))
        return self.make(low, high)

    # -- numeric games ------------------------------------------------------

    def is_numeric(self, g) -> bool:
        """Every left option strictly below every right option, hereditarily."""
        return self._is_numeric(self._as_gid(g))

    def _is_numeric(self, gid: int) -> bool:
        cached = self._numeric_memo.get(gid)
        if cached is not None:
            return cached
        left, right = self._options(gid)
        result = all(self._is_numeric(x) for x in left + right)
        if result:
            for l in left:
                for r in right:
                    if not (self.leq(l, r) and not self.leq(r, l)):
                        result = False
                        break
                if not result:
                    break
        self._numeric_memo[gid] = result
        return result

    def value(self, g) -> DyadicRational:
        """Numerical value by the simplicity rule; raises NotNumeric otherwise."""
        gid = self._as_gid(g)
        if not self._is_numeric(gid):
            raise NotNumeric("value is defined for numeric games only")
        return self._value(gid)

    def _value(self, gid: int) -> DyadicRational:
        cached = self._value_memo.get(gid)
        if cached is None:
            left, right = self._options(gid)
            lo = max((self._value(x) for x in left), default=None)
            hi = min((self._value(x) for x in right), default=None)
            cached = simplest_between(lo, hi)
            self._value_memo[gid] = cached
        return cached

    # -- game literals -------------------------------------------------------

    def parse(self, text: str) -> Game:
        """Parse a game literal like ``{0,*|{|-2}}``; macros: integers and *."""
        tokens = _tokenize(text)
        game, pos = self._parse_game(tokens, 0)
        if pos != len(tokens):
            raise ValueError(f"trailing input in game literal {text!r}")
        return game

    def _parse_game(self, tokens: list[str], pos: int) -> tuple[Game, int]:
        if pos >= len(tokens):
            raise ValueError("unexpected end of game literal")
        tok = tokens[pos]
        if tok == "*":
            return self.star, pos + 1
        if tok not in ("{",):
            try:
                return self.integer(int(tok)), pos + 1
            except ValueError:
                raise ValueError(f"bad token {tok!r} in game literal") from None
        pos += 1
        left, pos = self._parse_options(tokens, pos, "|")
        if tokens[pos] != "|":
            raise ValueError("expected '|' in game literal")
        right, pos = self._parse_options(tokens, pos + 1, "}")
        if pos >= len(tokens) or tokens[pos] != "}":
            raise ValueError("expected '}' in game literal")
        return self.make(left, right), pos + 1

    def _parse_options(
        self, tokens: list[str], pos: int, stop: str
    ) -> tuple[list[Game], int]:
        opts: list[Game] = []
        while pos < len(tokens) and tokens[pos] != stop:
            g, pos = self._parse_game(tokens, pos)
            opts.append(g)
            if pos < len(tokens) and tokens[pos] == ",":
                pos += 1
        return opts, pos


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "{}|,*":
            tokens.append(ch)
            i += 1
        elif ch == "-" or ch.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError(f"bad character {ch!r} in game literal")
    return tokens


# -- black-white poset games ------------------------------------------------


def _bw_position_games(
    arena: Arena, poset: Poset
) -> dict[int, int]:
    """Game node for every reachable down set of a fully colored poset."""
    if poset.colors is None and not poset.is_empty:
        raise UncoloredPoint("every point needs a color for a black-white game")
    memo = {0: arena.zero.gid}

    def build(mask: int) -> int:
        gid = memo.get(mask)
        if gid is not None:
            return gid
        left, right = [], []
        for i in iter_bits(mask):
            child = build(mask & ~poset.up_mask(i))
            if poset.colors[i] == BLACK:
                left.append(child)
            else:
                right.append(child)
        game = arena.make(
            [Game(arena, g) for g in left], [Game(arena, g) for g in right]
        )
        memo[mask] = game.gid
        return game.gid

    build(poset.full_mask())
    return memo


def from_bw_poset(poset: Poset, arena: Arena) -> Game:
    """The partisan game of a black-white poset: Black (Left) moves on black
    points, White (Right) on white, a move removes the chosen point's up-set."""
    return Game(arena, _bw_position_games(arena, poset)[poset.full_mask()])


def from_impartial_poset(poset: Poset, arena: Arena) -> Game:
    """The same poset as a game where either player may play any point."""
    memo = {0: arena.zero.gid}

    def build(mask: int) -> int:
        gid = memo.get(mask)
        if gid is not None:
            return gid
        opts = [
            Game(arena, build(mask & ~poset.up_mask(i))) for i in iter_bits(mask)
        ]
        game = arena.make(opts, opts)
        memo[mask] = game.gid
        return game.gid

    build(poset.full_mask())
    return Game(arena, memo[poset.full_mask()])


def best_move_bw(
    poset: Poset,
    mover: str,
    arena: Optional[Arena] = None,
) -> Optional[tuple[PointId, OutcomeClass]]:
    """A winning move for ``mover`` ("black" or "white"): one whose resulting
    position is >= 0 (Black) or <= 0 (White).  None means the mover loses with
    perfect play.  Ties break to the least point index."""
    if mover not in (BLACK, WHITE):
        raise IllegalMove(f"mover must be 'black' or 'white', got {mover!r}")
    arena = arena or Arena()
    games = _bw_position_games(arena, poset)
    full = poset.full_mask()
    for i in range(poset.n):
        if poset.colors is None or poset.colors[i] != mover:
            continue
        child = games[full & ~poset.up_mask(i)]
        good = arena.ge_zero(child) if mover == BLACK else arena.le_zero(child)
        if good:
            return PointId(i, poset.labels[i]), arena.outcome_class(child)
    return None
