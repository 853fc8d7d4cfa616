"""Built-in countable stop families.

Each entry bundles the generator family, default stop values and a gap
oracle for :func:`reparam.construct.evaluate_lazy`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from .exactnum import ClosedInterval, as_rational
from .stopdata import Accumulation, GeneratorStopFamily, Side

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CatalogEntry:
    family: GeneratorStopFamily
    values: Callable[[int], Fraction]
    oracle: Callable[[Fraction, Fraction], Optional[int]]


def _midpoint(j: ClosedInterval) -> Fraction:
    return (j.lo + j.hi) / 2


def grandis(tail_value: Optional[Fraction] = None) -> CatalogEntry:
    """Intervals ``[1/2 - 1/2^n, 1/2 - 3/2^(n+2)]`` piling up at 1/2 from the
    left, followed by ``[1/2, 3/4]``.

    Index 1 is ``[1/2, 3/4]`` and index ``n + 1`` is the n-th left interval.
    Values default to midpoints; ``tail_value`` overrides the value on
    ``[1/2, 3/4]``.  With midpoints the value there is 5/8 while the values on
    the left accumulate to 1/2, so the map cannot come from a continuous
    reparametrization.
    """
    tail = ClosedInterval(HALF, Fraction(3, 4))

    def left(n: int) -> ClosedInterval:
        return ClosedInterval(HALF - Fraction(1, 2 ** n), HALF - Fraction(3, 2 ** (n + 2)))

    def generator(index: int) -> ClosedInterval:
        if index < 1:
            raise IndexError(index)
        return tail if index == 1 else left(index - 1)

    def values(index: int) -> Fraction:
        if index == 1 and tail_value is not None:
            return as_rational(tail_value)
        return _midpoint(generator(index))

    def oracle(a: Fraction, b: Fraction) -> Optional[int]:
        if a < tail.lo and tail.hi < b:
            return 1
        if a >= HALF:
            return None
        n = 1
        while not left(n).lo > a:
            n += 1
        return n + 1 if left(n).hi < b else None

    family = GeneratorStopFamily(
        generator,
        (Accumulation(HALF, Side.LEFT, HALF),),
        at_zero=2,
    )
    return CatalogEntry(family, values, oracle)


def geometric_left() -> CatalogEntry:
    """Intervals ``[1/4^n, 3/(2*4^n)]`` accumulating at 0, values ``1/4^n``."""

    def generator(n: int) -> ClosedInterval:
        if n < 1:
            raise IndexError(n)
        return ClosedInterval(Fraction(1, 4 ** n), Fraction(3, 2 * 4 ** n))

    def values(n: int) -> Fraction:
        return Fraction(1, 4 ** n)

    def oracle(a: Fraction, b: Fraction) -> Optional[int]:
        if b <= 0:
            return None
        n = 1
        while not generator(n).hi < b:
            n += 1
        return n if generator(n).lo > a else None

    family = GeneratorStopFamily(generator, (Accumulation(Fraction(0), Side.RIGHT, Fraction(0)),))
    return CatalogEntry(family, values, oracle)


def geometric_right() -> CatalogEntry:
    """Mirror image of :func:`geometric_left`, accumulating at 1."""
    mirror = geometric_left()

    def generator(n: int) -> ClosedInterval:
        j = mirror.family.generator(n)
        return ClosedInterval(1 - j.hi, 1 - j.lo)

    def values(n: int) -> Fraction:
        return 1 - mirror.values(n)

    def oracle(a: Fraction, b: Fraction) -> Optional[int]:
        return mirror.oracle(1 - b, 1 - a)

    family = GeneratorStopFamily(generator, (Accumulation(Fraction(1), Side.LEFT, Fraction(1)),))
    return CatalogEntry(family, values, oracle)


CATALOG: Dict[str, Callable[..., CatalogEntry]] = {
    "grandis": grandis,
    "geometric-left": geometric_left,
    "geometric-right": geometric_right,
}


def lookup(name: str, **params: Fraction) -> CatalogEntry:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    return factory(**params)
