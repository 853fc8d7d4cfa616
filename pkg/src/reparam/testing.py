"""Random generators for stop data and paths, shared by the test suite and
the ``selftest`` command."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .exactnum import ONE, ZERO, ClosedInterval
from .pathreg import PLPath
from .stopdata import StopFamily, StopMap


def random_rational(rng: random.Random, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def _distinct_sorted(rng: random.Random, count: int, max_den: int,
                     lo_open: bool = False, hi_open: bool = False) -> List[Fraction]:
    seen = set()
    while len(seen) < count:
        x = random_rational(rng, max_den)
        if lo_open and x == ZERO or hi_open and x == ONE:
            continue
        seen.add(x)
    return sorted(seen)


def random_stop_family(rng: random.Random, max_n: int = 50, max_den: int = 10 ** 6,
                       n: Optional[int] = None) -> StopFamily:
    """Up to ``max_n`` disjoint intervals; touches 0 or 1 now and then."""
    if n is None:
        n = rng.randint(0, max_n)
    if n == 0:
        return StopFamily()
    ends = _distinct_sorted(rng, 2 * n, max_den, lo_open=True, hi_open=True)
    if rng.random() < 0.25:
        ends[0] = ZERO
    if rng.random() < 0.25 and not (n == 1 and ends[0] == ZERO):
        ends[-1] = ONE
    return StopFamily(tuple(ClosedInterval(ends[2 * i], ends[2 * i + 1]) for i in range(n)))


def random_stop_map(rng: random.Random, max_n: int = 50, max_den: int = 10 ** 6) -> StopMap:
    """A finite stop map meeting every realizability condition."""
    family = random_stop_family(rng, max_n, max_den)
    n = len(family)
    values = _distinct_sorted(rng, n, max_den, lo_open=True, hi_open=True)
    if n and family[0].lo == ZERO:
        values[0] = ZERO
    if n and family[-1].hi == ONE:
        values[-1] = ONE
    return StopMap(family, tuple(values))


def random_enumeration(rng: random.Random, n: int) -> List[int]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm


def random_path(rng: random.Random, max_dim: int = 3, max_points: int = 100,
                dwell_prob: float = 0.3, max_den: int = 1000) -> PLPath:
    """A path with random rational vertices and randomly injected dwells."""
    dim = rng.randint(1, max_dim)
    count = rng.randint(2, max_points)
    ts = [ZERO] + _distinct_sorted(rng, count - 2, max_den, lo_open=True, hi_open=True) + [ONE]
    pts = []
    for i in range(count):
        if i and rng.random() < dwell_prob:
            pts.append(pts[-1])
        else:
            pts.append(tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(dim)))
    return PLPath(dim, tuple(zip(ts, pts)))
