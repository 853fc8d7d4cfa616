"""Piecewise-linear paths in rational d-space and their regularization.

Every path ``p`` factors as ``q ∘ phi`` where ``phi`` is a reparametrization
whose stop intervals are exactly the maximal intervals on which ``p`` dwells,
and ``q`` dwells nowhere (it is *regular*).
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .construct import PLReparam, _preimage_endpoints, dyadic_build
from .exactnum import ONE, ZERO, ClosedInterval, as_rational, format_rational
from .stopdata import StopFamily

Vector = Tuple[Fraction, ...]
PathPoint = Tuple[Fraction, Vector]


class DimensionMismatch(ValueError):
    pass


def _lerp(a: Vector, b: Vector, s: Fraction) -> Vector:
    return tuple(x + (y - x) * s for x, y in zip(a, b))


def _redundant(a: PathPoint, b: PathPoint, c: PathPoint) -> bool:
    (ta, pa), (tb, pb), (tc, pc) = a, b, c
    s = (tb - ta) / (tc - ta)
    return _lerp(pa, pc, s) == pb


@dataclass(frozen=True)
class PLPath:
    """A path ``[0, 1] -> Q^dim`` interpolating its breakpoints linearly.

    Interior breakpoints that lie on the segment through their neighbours are
    removed, so a dwell is always stored as exactly two breakpoints and equal
    functions have equal breakpoints.
    """

    dim: int
    breakpoints: Tuple[PathPoint, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        pts = []
        for t, pt in self.breakpoints:
            pt = tuple(as_rational(c) for c in pt)
            if len(pt) != self.dim:
                raise DimensionMismatch(f"point {pt} is not {self.dim}-dimensional")
            pts.append((as_rational(t), pt))
        if len(pts) < 2 or pts[0][0] != ZERO or pts[-1][0] != ONE:
            raise ValueError("path parameters must run from 0 to 1")
        for (t0, _), (t1, _) in zip(pts, pts[1:]):
            if not t0 < t1:
                raise ValueError(f"path parameters must increase strictly: {t0}, {t1}")
        out: List[PathPoint] = []
        for p in pts:
            while len(out) >= 2 and _redundant(out[-2], out[-1], p):
                out.pop()
            out.append(p)
        object.__setattr__(self, "breakpoints", tuple(out))

    @classmethod
    def from_points(cls, points: Iterable[Tuple[object, Sequence[object]]]) -> "PLPath":
        pts = [(as_rational(t), tuple(as_rational(c) for c in pt)) for t, pt in points]
        return cls(len(pts[0][1]), tuple(pts))

    @property
    def ts(self) -> Tuple[Fraction, ...]:
        return tuple(t for t, _ in self.breakpoints)

    def is_constant(self) -> bool:
        return len(self.breakpoints) == 2 and self.breakpoints[0][1] == self.breakpoints[1][1]

    def __call__(self, t: Fraction) -> Vector:
        t = as_rational(t)
        if not ZERO <= t <= ONE:
            raise ValueError(f"{t} is outside [0, 1]")
        bps = self.breakpoints
        i = bisect.bisect_right(bps, t, key=lambda p: p[0]) - 1
        i = min(max(i, 0), len(bps) - 2)
        return _seg_eval(bps[i], bps[i + 1], t)

    def evaluate_sorted(self, ts: Sequence[Fraction]) -> List[Vector]:
        bps = self.breakpoints
        out = []
        i = 0
        for t in ts:
            while i + 2 < len(bps) and bps[i + 1][0] <= t:
                i += 1
            out.append(_seg_eval(bps[i], bps[i + 1], t))
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "breakpoints": [[format_rational(t), [format_rational(c) for c in pt]]
                            for t, pt in self.breakpoints],
        }


def _seg_eval(a: PathPoint, b: PathPoint, t: Fraction) -> Vector:
    (t0, p0), (t1, p1) = a, b
    if t == t0 or p0 == p1:
        return p0
    if t == t1:
        return p1
    return _lerp(p0, p1, (t - t0) / (t1 - t0))


def stop_intervals_of_path(p: PLPath) -> StopFamily:
    """Maximal intervals on which ``p`` is constant.

    In canonical form a dwell is a single segment with equal end values, and
    two dwells are never adjacent (they would have been merged).
    """
    ivs = [ClosedInterval(a[0], b[0])
           for a, b in zip(p.breakpoints, p.breakpoints[1:]) if a[1] == b[1]]
    return StopFamily(tuple(ivs))


def is_regular(q: PLPath) -> bool:
    return q.is_constant() or not stop_intervals_of_path(q).intervals


def compose(q: PLPath, phi: PLReparam) -> PLPath:
    """The path ``t -> q(phi(t))``."""
    ts = set(phi.xs)
    for u in q.ts:
        ts.update(_preimage_endpoints(phi.breakpoints, u))
    ts_sorted = sorted(ts)
    us = phi.evaluate_sorted(ts_sorted)
    return PLPath(q.dim, tuple(zip(ts_sorted, q.evaluate_sorted(us))))


def regularize(p: PLPath) -> Tuple[PLPath, PLReparam]:
    """Factor ``p = q ∘ phi`` with ``q`` regular.

    ``phi`` comes from the dyadic construction on the dwell intervals of
    ``p``, so its stop values are dyadic.  ``q(u)`` is ``p`` at the left end of
    ``phi^-1(u)``; any other choice gives the same point because ``p`` dwells
    on every interval that ``phi`` collapses.
    """
    if p.is_constant():
        return p, PLReparam.identity()
    delta = stop_intervals_of_path(p)
    if not delta.intervals:
        return p, PLReparam.identity()
    phi = dyadic_build(delta)
    ts = sorted(set(p.ts) | set(phi.xs))
    us = phi.evaluate_sorted(ts)
    values = p.evaluate_sorted(ts)
    pts: List[PathPoint] = []
    for u, v in zip(us, values):
        if pts and pts[-1][0] == u:
            if pts[-1][1] != v:
                raise AssertionError(f"p is not constant on the stop interval at {u}")
            continue
        pts.append((u, v))
    return PLPath(p.dim, tuple(pts)), phi


def paths_equal(a: PLPath, b: PLPath) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    return a.breakpoints == b.breakpoints
