"""Outcome-flipping and threshold posets, and g-number-from-outcome reductions.

``flip`` toggles a game's outcome using only series/parallel unions with
chains; ``threshold`` generalizes it to test g(A) >= t.  Both leave N-free
inputs N-free, which is what makes them usable as oblivious NOT gates.
"""

from __future__ import annotations

from typing import Callable

from .errors import BadParams, ColoredInput, OracleInconsistent
from .impartial import ImpartialOutcome
from .poset import Poset, generate, parallel, series


def _require_impartial(poset: Poset):
    if poset.is_colored:
        raise ColoredInput("constructions are defined for impartial posets")


def flip_exponent(size: int) -> int:
    """Least k with 2**k >= size; equals threshold_exponent(size, 1)."""
    return (size - 1).bit_length() if size > 1 else 0


def flip(a: Poset) -> Poset:
    """The outcome-flipped poset ((A/C_{2^k-1}) + C_{2^k})/C_1 + A, 2^k >= |A|.

    Its g-number is 0 when g(A) != 0 and 2^(k+1) when g(A) = 0, so the
    outcome is always the opposite of A's.  Coincides with threshold at t=1.
    """
    return threshold(a, 1)


def threshold_exponent(size: int, t: int) -> int:
    """Least k with 2**k > max(size - t, t - 1)."""
    m = max(size - t, t - 1)
    return m.bit_length() if m > 0 else 0


def threshold(a: Poset, t: int) -> Poset:
    """The threshold poset ((A/C_{2^k-t}) + C_{2^k})/C_t + A: its g-number is
    2^(k+1) when g(A) < t and 0 when g(A) >= t."""
    _require_impartial(a)
    if t < 1:
        raise BadParams("threshold needs t >= 1")
    k = threshold_exponent(a.n, t)
    b = series(a, generate("chain", (1 << k) - t))
    c = parallel(b, generate("chain", 1 << k))
    d = series(c, generate("chain", t))
    return parallel(d, a)


def grundy_via_threshold(
    poset: Poset,
    oracle: Callable[[Poset], ImpartialOutcome],
    bound_bits: int,
) -> int:
    """Recover g(P) from an outcome oracle with exactly ``bound_bits`` adaptive
    queries: binary search on t, since threshold(P, t) is a first-player win
    exactly when g(P) < t."""
    _require_impartial(poset)
    if bound_bits < 0:
        raise BadParams("bound_bits must be a natural number")
    if poset.n >= (1 << bound_bits):
        raise BadParams(
            f"need |P| < 2^bound_bits so the g-number fits; got {poset.n} points"
        )
    lo, hi = 0, 1 << bound_bits
    for _ in range(bound_bits):
        mid = (lo + hi) // 2
        answer = ImpartialOutcome(oracle(threshold(poset, mid)))
        if answer is ImpartialOutcome.EXISTS:
            hi = mid  # g < mid
        else:
            lo = mid  # g >= mid
    if hi - lo != 1:
        raise OracleInconsistent("binary search failed to pin a single g-number")
    return lo
