"""Piecewise-linear reparametrizations and the two constructions.

:func:`build_from_stopmap` realizes a valid finite stop map directly.
:func:`dyadic_build` realizes a bare stop family through the dyadic
induction: dyadic rationals are matched, level by level, with members of the
family (or with one point fillers), and the reparametrization takes the value
``z`` on the object matched with ``z``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exactnum import ONE, ZERO, ClosedInterval, as_rational, format_rational
from .stopdata import (
    ConditionReport,
    GeneratorStopFamily,
    StopFamily,
    StopMap,
    check_conditions,
)

Point = Tuple[Fraction, Fraction]


class InvalidStopMap(ValueError):
    def __init__(self, report: ConditionReport):
        names = ", ".join(report.violated())
        super().__init__(f"stop map violates condition(s) {names}")
        self.report = report


class FullIntervalFamily(ValueError):
    def __init__(self) -> None:
        super().__init__("the family {[0,1]} is not the stop family of any reparametrization")


class OutOfDomain(ValueError):
    pass


class OracleUndecided(RuntimeError):
    pass


class DyadicDepthExceeded(AssertionError):
    """The dyadic induction failed to place every interval by depth n."""


def _collinear(a: Point, b: Point, c: Point) -> bool:
    return (b[1] - a[1]) * (c[0] - a[0]) == (c[1] - a[1]) * (b[0] - a[0])


def canonical_breakpoints(points: Iterable[Point]) -> Tuple[Point, ...]:
    """Drop breakpoints lying on the segment through their neighbours."""
    out: List[Point] = []
    for p in points:
        while len(out) >= 2 and _collinear(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class PLReparam:
    """Weakly increasing piecewise-linear map of [0, 1] fixing 0 and 1.

    Breakpoints are stored in canonical form, so two instances are equal
    exactly when they define the same function.
    """

    breakpoints: Tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple((as_rational(x), as_rational(y)) for x, y in self.breakpoints)
        if len(pts) < 2 or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise ValueError("a reparametrization must start at (0,0) and end at (1,1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError(f"breakpoint abscissae must increase strictly: {x0}, {x1}")
            if y1 < y0:
                raise ValueError(f"reparametrization must be weakly increasing: {y0}, {y1}")
        object.__setattr__(self, "breakpoints", canonical_breakpoints(pts))

    @classmethod
    def identity(cls) -> "PLReparam":
        return cls(((ZERO, ZERO), (ONE, ONE)))

    @property
    def xs(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints)

    def __call__(self, t: Fraction) -> Fraction:
        return evaluate(self, t)

    def evaluate_sorted(self, ts: Sequence[Fraction]) -> List[Fraction]:
        """Evaluate at nondecreasing points in one sweep."""
        bps = self.breakpoints
        out = []
        i = 0
        for t in ts:
            while i + 2 < len(bps) and bps[i + 1][0] <= t:
                i += 1
            out.append(_interp(bps[i], bps[i + 1], t))
        return out

    def to_json(self) -> dict:
        return {"breakpoints": [[format_rational(x), format_rational(y)]
                                for x, y in self.breakpoints]}


def _interp(a: Point, b: Point, t: Fraction) -> Fraction:
    (x0, y0), (x1, y1) = a, b
    if t == x0 or y0 == y1:
        return y0
    if t == x1:
        return y1
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0)


def evaluate(phi: PLReparam, t: Fraction) -> Fraction:
    t = as_rational(t)
    if not ZERO <= t <= ONE:
        raise OutOfDomain(f"{t} is outside [0, 1]")
    bps = phi.breakpoints
    i = bisect.bisect_right(bps, t, key=lambda p: p[0]) - 1
    i = min(max(i, 0), len(bps) - 2)
    return _interp(bps[i], bps[i + 1], t)


def compose_reparams(outer: PLReparam, inner: PLReparam) -> PLReparam:
    """``outer ∘ inner``, exactly."""
    xs = set(inner.xs)
    ys = inner.breakpoints
    for u in outer.xs:
        xs.update(_preimage_endpoints(ys, u))
    ts = sorted(xs)
    us = inner.evaluate_sorted(ts)
    # us is nondecreasing because inner is monotone
    return PLReparam(tuple(zip(ts, outer.evaluate_sorted(us))))


def _preimage_endpoints(bps: Sequence[Point], u: Fraction) -> List[Fraction]:
    """Abscissae where a monotone PL graph crosses height ``u`` (segment interiors only)."""
    out = []
    for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
        if y0 < u < y1:
            out.append(x0 + (u - y0) * (x1 - x0) / (y1 - y0))
    return out


def stop_data_of_reparam(phi: PLReparam) -> StopMap:
    """Maximal intervals on which ``phi`` is constant, with their values."""
    ivs: List[ClosedInterval] = []
    vals: List[Fraction] = []
    run_start: Optional[Point] = None
    bps = phi.breakpoints
    for a, b in zip(bps, bps[1:]):
        if a[1] == b[1]:
            if run_start is None:
                run_start = a
            end = b
            continue
        if run_start is not None:
            ivs.append(ClosedInterval(run_start[0], end[0]))
            vals.append(run_start[1])
            run_start = None
    if run_start is not None:
        ivs.append(ClosedInterval(run_start[0], end[0]))
        vals.append(run_start[1])
    return StopMap(StopFamily(tuple(ivs)), tuple(vals))


def build_from_stopmap(f: StopMap) -> PLReparam:
    """Constant ``F(J)`` on every ``J``, linear across the gaps."""
    report = check_conditions(f)
    if not report.ok:
        raise InvalidStopMap(report)
    pts: List[Point] = [(ZERO, ZERO)]
    for j, v in f.items():
        for p in ((j.lo, v), (j.hi, v)):
            if p[0] != pts[-1][0]:
                pts.append(p)
    if pts[-1][0] != ONE:
        pts.append((ONE, ONE))
    return PLReparam(tuple(pts))


def sup_distance(a: PLReparam, b: PLReparam) -> Fraction:
    """Exact sup norm of ``a - b``; the difference is PL so breakpoints suffice."""
    xs = sorted(set(a.xs) | set(b.xs))
    return max(abs(u - v) for u, v in zip(a.evaluate_sorted(xs), b.evaluate_sorted(xs)))


# -- dyadic induction --------------------------------------------------------


@dataclass(frozen=True)
class RealInterval:
    index: int
    interval: ClosedInterval

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi


@dataclass(frozen=True)
class DegeneratePoint:
    t: Fraction

    @property
    def lo(self) -> Fraction:
        return self.t

    @property
    def hi(self) -> Fraction:
        return self.t


Assigned = Union[RealInterval, DegeneratePoint]


@dataclass(frozen=True)
class DyadicAssignment:
    """The order-preserving map ``z -> I_z`` through depth ``depth``.

    ``entries`` is sorted by ``z``.  A sparse assignment omits the one point
    fillers of cells that hold no interval; those always lie on the segment
    joining their neighbours, so they change nothing about ``phi_k``.
    """

    depth: int
    entries: Tuple[Tuple[Fraction, Assigned], ...]
    sparse: bool = False

    def as_dict(self) -> Dict[Fraction, Assigned]:
        return dict(self.entries)

    def real_entries(self) -> List[Tuple[Fraction, RealInterval]]:
        return [(z, e) for z, e in self.entries if isinstance(e, RealInterval)]

    def to_json(self) -> dict:
        rows = []
        for z, e in self.entries:
            if isinstance(e, RealInterval):
                rows.append({"z": format_rational(z), "kind": "real", "index": e.index})
            else:
                rows.append({"z": format_rational(z), "kind": "point",
                             "t": format_rational(e.t)})
        return {"depth": self.depth, "entries": rows}


@dataclass
class _Node:
    # a dyadic position l/2^depth together with its assigned object; ``inside``
    # is the positional range of unplaced intervals between it and the next node
    num: int
    obj: Assigned
    inside: Tuple[int, int]


def _normalize_enumeration(delta: StopFamily, enumeration: Optional[Sequence[int]]) -> List[int]:
    """Return ``pos_rank``: the enumeration index of each interval by position."""
    n = len(delta)
    if enumeration is None:
        enumeration = range(1, n + 1)
    enumeration = list(enumeration)
    if sorted(enumeration) != list(range(1, n + 1)):
        raise ValueError(f"enumeration must be a permutation of 1..{n}")
    rank = [0] * n
    for m, pos in enumerate(enumeration, start=1):
        rank[pos - 1] = m
    return rank


class _Induction:
    """Level-by-level execution of the dyadic matching."""

    def __init__(self, delta: StopFamily, enumeration: Optional[Sequence[int]], dense: bool):
        if delta.is_full():
            raise FullIntervalFamily()
        self.delta = delta
        self.rank = _normalize_enumeration(delta, enumeration)
        self.dense = dense
        self.depth = 0
        ivs = delta.intervals
        n = len(ivs)
        first, last = 0, n
        if n and ivs[0].lo == ZERO:
            start: Assigned = RealInterval(self.rank[0], ivs[0])
            first = 1
        else:
            start = DegeneratePoint(ZERO)
        if n and ivs[-1].hi == ONE:
            end: Assigned = RealInterval(self.rank[-1], ivs[-1])
            last = n - 1
        else:
            end = DegeneratePoint(ONE)
        self.nodes: List[_Node] = [_Node(0, start, (first, last)), _Node(1, end, (last, last))]

    def placed(self) -> bool:
        return all(a.inside[0] == a.inside[1] for a in self.nodes)

    def step(self) -> None:
        ivs = self.delta.intervals
        new: List[_Node] = []
        nodes = self.nodes
        for a, b in zip(nodes, nodes[1:]):
            lo, hi = a.inside
            a2 = _Node(2 * a.num, a.obj, a.inside)
            new.append(a2)
            if lo < hi:
                pos = min(range(lo, hi), key=self.rank.__getitem__)
                a2.inside = (lo, pos)
                new.append(_Node(2 * a.num + 1, RealInterval(self.rank[pos], ivs[pos]),
                                 (pos + 1, hi)))
            elif self.dense:
                mid = DegeneratePoint((a.obj.hi + b.obj.lo) / 2)
                new.append(_Node(2 * a.num + 1, mid, (hi, hi)))
        last = nodes[-1]
        new.append(_Node(2 * last.num, last.obj, last.inside))
        self.nodes = new
        self.depth += 1

    def assignment(self) -> DyadicAssignment:
        den = 1 << self.depth
        return DyadicAssignment(
            self.depth,
            tuple((Fraction(a.num, den), a.obj) for a in self.nodes),
            sparse=not self.dense,
        )

    def reparam(self) -> PLReparam:
        return _reparam_from_nodes(self.nodes, self.depth)


def _reparam_from_nodes(nodes: Sequence[_Node], depth: int) -> PLReparam:
    den = 1 << depth
    pts: List[Point] = []
    for a in nodes:
        z = Fraction(a.num, den)
        for x in ((a.obj.lo,) if isinstance(a.obj, DegeneratePoint) else (a.obj.lo, a.obj.hi)):
            if not pts or pts[-1][0] != x:
                pts.append((x, z))
    return PLReparam(tuple(pts))


def dyadic_assignment(
    delta: StopFamily, enumeration: Optional[Sequence[int]] = None, k: int = 0
) -> DyadicAssignment:
    """The full assignment ``z -> I_z`` for all ``z = l/2^k``."""
    run = _Induction(delta, enumeration, dense=True)
    for _ in range(k):
        run.step()
    return run.assignment()


def phi_k(delta: StopFamily, enumeration: Optional[Sequence[int]] = None, k: int = 0) -> PLReparam:
    run = _Induction(delta, enumeration, dense=False)
    for _ in range(k):
        run.step()
    return run.reparam()


def approximants(
    delta: StopFamily, enumeration: Optional[Sequence[int]] = None, max_k: int = 0
) -> List[PLReparam]:
    """``[phi_0, ..., phi_max_k]`` from a single run of the induction."""
    run = _Induction(delta, enumeration, dense=False)
    out = [run.reparam()]
    for _ in range(max_k):
        run.step()
        out.append(run.reparam())
    return out


def dyadic_run(
    delta: StopFamily, enumeration: Optional[Sequence[int]] = None
) -> Tuple[PLReparam, DyadicAssignment]:
    """Run the induction until every interval is placed.

    Past that depth every new object is a one point filler on an existing
    segment, so the approximants no longer change and the limit is exact.
    """
    run = _Induction(delta, enumeration, dense=False)
    n = len(delta)
    while not run.placed():
        if run.depth >= n:
            raise DyadicDepthExceeded(
                f"{n} intervals not all placed by depth {run.depth}")
        run.step()
    return run.reparam(), run.assignment()


def dyadic_build(delta: StopFamily, enumeration: Optional[Sequence[int]] = None) -> PLReparam:
    return dyadic_run(delta, enumeration)[0]


# -- countable families ------------------------------------------------------


GapOracle = Callable[[Fraction, Fraction], Optional[int]]


def evaluate_lazy(
    g: GeneratorStopFamily,
    gap_oracle: GapOracle,
    t: Fraction,
    eps: Fraction,
) -> Tuple[Fraction, Fraction]:
    """Approximate ``phi(t)`` for a countable family, with an error bound.

    ``gap_oracle(a, b)`` must return the least index ``m`` with ``generator(m)``
    strictly inside ``(a, b)``, ``None`` when there is none, or raise
    :class:`OracleUndecided`.  Returns ``(phi_k(t), 1/2^(k-1))`` with ``k``
    the least level whose bound is below ``eps``; ``phi(t)`` is within the
    bound.  Only the dyadic cell containing ``t`` is refined, which yields the
    same value as the full level-``k`` approximant.
    """
    t = as_rational(t)
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not ZERO <= t <= ONE:
        raise OutOfDomain(f"{t} is outside [0, 1]")
    k = 1
    while Fraction(1, 2 ** (k - 1)) >= eps:
        k += 1
    bound = Fraction(1, 2 ** (k - 1))

    def endpoint(index: Optional[int], t0: Fraction) -> Assigned:
        if index is None:
            return DegeneratePoint(t0)
        j = g.generator(index)
        if t0 not in j:
            raise ValueError(f"generator({index}) = {j} does not contain {t0}")
        return RealInterval(index, j)

    left_z, left = ZERO, endpoint(g.at_zero, ZERO)
    right_z, right = ONE, endpoint(g.at_one, ONE)
    if isinstance(left, RealInterval) and isinstance(right, RealInterval) and left.index == right.index:
        raise FullIntervalFamily()
    for level in range(1, k + 1):
        # early exit once t sits on an assigned object: phi_k is constant there
        if left.lo <= t <= left.hi:
            return left_z, bound
        if right.lo <= t <= right.hi:
            return right_z, bound
        z = (left_z + right_z) / 2
        m = gap_oracle(left.hi, right.lo)
        if m is None:
            mid: Assigned = DegeneratePoint((left.hi + right.lo) / 2)
        else:
            j = g.generator(m)
            if not (left.hi < j.lo and j.hi < right.lo):
                raise OracleUndecided(f"oracle returned {m} = {j}, not inside "
                                      f"({left.hi}, {right.lo})")
            mid = RealInterval(m, j)
        if t < mid.lo:
            right_z, right = z, mid
        elif t > mid.hi:
            left_z, left = z, mid
        else:
            return z, bound
    if left.lo <= t <= left.hi:
        return left_z, bound
    if right.lo <= t <= right.hi:
        return right_z, bound
    value = left_z + (right_z - left_z) * (t - left.hi) / (right.lo - left.hi)
    return value, bound
