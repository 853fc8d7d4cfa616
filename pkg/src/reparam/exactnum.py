"""Exact rationals, closed subintervals of [0, 1] and dyadic grids.

Rationals are plain :class:`fractions.Fraction` values; they are always kept
in lowest terms with a positive denominator.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a canonical Fraction.

    Floats are refused: they would silently import binary rounding error.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Canonical ``"p/q"`` text; integers print without a denominator."""
    return str(Fraction(x))


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class ClosedInterval:
    """A closed interval ``[lo, hi]`` inside the unit interval.

    ``lo == hi`` is allowed (a one point interval); stop families reject it.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo = as_rational(self.lo)
        hi = as_rational(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")

    @classmethod
    def of(cls, lo: RationalLike, hi: RationalLike) -> "ClosedInterval":
        return cls(as_rational(lo), as_rational(hi))

    @classmethod
    def point(cls, t: RationalLike) -> "ClosedInterval":
        t = as_rational(t)
        return cls(t, t)

    def nondegenerate(self) -> bool:
        return self.lo < self.hi

    def __contains__(self, t: object) -> bool:
        return self.lo <= t <= self.hi  # type: ignore[operator]

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{format_rational(self.lo)},{format_rational(self.hi)}]"

    def to_json(self) -> list:
        return [format_rational(self.lo), format_rational(self.hi)]


def interval_order(a: ClosedInterval, b: ClosedInterval) -> Order:
    if a == b:
        return Order.EQUAL
    if a.hi < b.lo:
        return Order.LESS
    if b.hi < a.lo:
        return Order.GREATER
    return Order.OVERLAPPING


def simplest_rational_in(j: ClosedInterval) -> Fraction:
    """Rational in ``j`` with the smallest denominator (then smallest numerator).

    Walks the continued fraction expansion of the two endpoints, i.e. descends
    the Stern-Brocot tree, so the cost is logarithmic in the denominators.
    """
    return _simplest_between(j.lo, j.hi)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    # 0 <= lo <= hi; the closed interval [lo, hi] is searched.
    n = math.ceil(lo)
    if n <= hi:
        return Fraction(n)
    # lo and hi share the integer part and neither is an integer
    base = math.floor(lo)
    inner = _simplest_between(1 / (hi - base), 1 / (lo - base))
    return base + 1 / inner


@dataclass(frozen=True)
class DyadicLevel:
    k: int
    grid: Tuple[Fraction, ...]

    @property
    def new_points(self) -> Tuple[Fraction, ...]:
        """Grid points first appearing at this level (odd numerators)."""
        if self.k == 0:
            return self.grid
        return self.grid[1::2]


def dyadic_level(k: int) -> DyadicLevel:
    if k < 0:
        raise ValueError("dyadic level must be nonnegative")
    den = 1 << k
    return DyadicLevel(k, tuple(Fraction(l, den) for l in range(den + 1)))
