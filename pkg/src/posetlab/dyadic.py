"""Exact dyadic rationals a / 2^k, the values of finite numeric games."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Optional


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """numerator / 2**exponent in lowest terms (exponent 0 or odd numerator)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be a natural number")
        num, exp = self.numerator, self.exponent
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def from_int(cls, n: int) -> "DyadicRational":
        return cls(n, 0)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        k = max(self.exponent, other.exponent)
        num = (self.numerator << (k - self.exponent)) + (
            other.numerator << (k - other.exponent)
        )
        return DyadicRational(num, k)

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        return self + (-other)

    def _cmp_key(self, other: "DyadicRational") -> tuple[int, int]:
        k = max(self.exponent, other.exponent)
        return (
            self.numerator << (k - self.exponent),
            other.numerator << (k - other.exponent),
        )

    def __lt__(self, other) -> bool:
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __float__(self) -> float:
        return self.numerator / (1 << self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def __repr__(self) -> str:
        return f"DyadicRational({self})"

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            d = int(den)
            if d <= 0 or d & (d - 1):
                raise ValueError(f"denominator must be a power of two: {text!r}")
            return cls(int(num), d.bit_length() - 1)
        return cls(int(text), 0)


ZERO = DyadicRational(0)


def simplest_between(
    lo: Optional[DyadicRational], hi: Optional[DyadicRational]
) -> DyadicRational:
    """The dyadic with least exponent, then least |numerator|, strictly between
    lo and hi (None = unbounded).  This is the simplicity rule."""
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    k = 0
    while True:
        a_min = None
        if lo is not None:
            a_min = ((lo.numerator << k) >> lo.exponent) + 1
        a_max = None
        if hi is not None:
            a_max = -(((-hi.numerator) << k) >> hi.exponent) - 1
        if a_min is None and a_max is None:
            return ZERO
        if a_min is None:
            return DyadicRational(min(a_max, 0), k)
        if a_max is None:
            return DyadicRational(max(a_min, 0), k)
        if a_min <= a_max:
            if a_min <= 0 <= a_max:
                return DyadicRational(0, k)
            return DyadicRational(a_min if a_min > 0 else a_max, k)
        k += 1
