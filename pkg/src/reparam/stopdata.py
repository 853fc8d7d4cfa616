"""Stop families, stop maps and the realizability conditions.

A stop map pairs a family of disjoint closed intervals with strictly
increasing values.  :func:`check_conditions` decides, for finite maps, whether
some reparametrization has exactly this stop data.  Countable families given
by a generator can only be refuted, never certified; see
:func:`check_conditions_lazy`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, ClosedInterval, as_rational, format_rational, simplest_rational_in

CONDITIONS = ("1", "2", "3", "4", "5", "6", "7", "8", "E0", "E1")


class DegenerateInterval(ValueError):
    def __init__(self, interval: ClosedInterval):
        super().__init__(f"degenerate interval {interval} in stop family")
        self.interval = interval


class OverlapError(ValueError):
    def __init__(self, first: ClosedInterval, second: ClosedInterval):
        super().__init__(f"intervals {first} and {second} are not disjoint")
        self.first = first
        self.second = second


class InconsistentDeclaration(ValueError):
    """Generated intervals or values contradict the declared accumulation data."""


@dataclass(frozen=True)
class StopFamily:
    intervals: Tuple[ClosedInterval, ...] = ()

    def __post_init__(self) -> None:
        ivs = tuple(self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for j in ivs:
            if not j.nondegenerate():
                raise DegenerateInterval(j)
        for a, b in zip(ivs, ivs[1:]):
            if not a.hi < b.lo:
                raise OverlapError(a, b)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i: int) -> ClosedInterval:
        return self.intervals[i]

    @property
    def stop_set(self) -> Tuple[ClosedInterval, ...]:
        """The union of the family, as its (already disjoint) components."""
        return self.intervals

    def is_full(self) -> bool:
        return self.intervals == (ClosedInterval(ZERO, ONE),)

    def locate(self, t: Fraction) -> Optional[int]:
        """Position of the member containing ``t``, if any."""
        for i, j in enumerate(self.intervals):
            if t in j:
                return i
            if t < j.lo:
                break
        return None

    def to_json(self) -> dict:
        return {"intervals": [j.to_json() for j in self.intervals]}


def rational_witnesses(family: StopFamily) -> Tuple[Fraction, ...]:
    """The simplest rational inside each member.

    Members are disjoint, so the witnesses are distinct; this injects the
    family into the rationals and is how a countable family gets enumerated
    reproducibly.
    """
    return tuple(simplest_rational_in(j) for j in family)


def make_stop_family(raw: Iterable[ClosedInterval]) -> StopFamily:
    """Sort ``raw`` and validate it as a family of disjoint nondegenerate intervals."""
    ivs = list(raw)
    for j in ivs:
        if not j.nondegenerate():
            raise DegenerateInterval(j)
    ivs.sort(key=lambda j: (j.lo, j.hi))
    return StopFamily(tuple(ivs))


@dataclass(frozen=True)
class StopMap:
    family: StopFamily
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(as_rational(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.family):
            raise ValueError(
                f"{len(self.family)} intervals but {len(vals)} values"
            )
        for v in vals:
            if not ZERO <= v <= ONE:
                raise ValueError(f"stop value {v} outside [0, 1]")
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise ValueError(f"stop values must increase strictly: {a} then {b}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[ClosedInterval, Fraction]]) -> "StopMap":
        pairs = sorted(pairs, key=lambda p: (p[0].lo, p[0].hi))
        family = make_stop_family(j for j, _ in pairs)
        return cls(family, tuple(v for _, v in pairs))

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return zip(self.family.intervals, self.values)

    def to_json(self) -> dict:
        return {
            "intervals": [j.to_json() for j in self.family],
            "values": [format_rational(v) for v in self.values],
        }


class VerdictKind(enum.Enum):
    SATISFIED = "OK"
    VIOLATED = "VIOLATED"
    VACUOUS = "VACUOUS"
    CONSISTENT_UP_TO_DEPTH = "CONSISTENT"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    detail: str = ""
    witness: Mapping[str, str] = field(default_factory=dict)
    depth: Optional[int] = None

    @property
    def violated(self) -> bool:
        return self.kind is VerdictKind.VIOLATED

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind.name.lower()}
        if self.detail:
            out["detail"] = self.detail
        if self.witness:
            out["witness"] = dict(self.witness)
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def _satisfied() -> Verdict:
    return Verdict(VerdictKind.SATISFIED)


def _vacuous(why: str = "") -> Verdict:
    return Verdict(VerdictKind.VACUOUS, why)


def _violated(detail: str, **witness: Fraction | ClosedInterval | str) -> Verdict:
    return Verdict(
        VerdictKind.VIOLATED,
        detail,
        {k: (v if isinstance(v, str) else str(v)) for k, v in witness.items()},
    )


@dataclass(frozen=True)
class ConditionReport:
    verdicts: Mapping[str, Verdict]

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    @property
    def ok(self) -> bool:
        return not any(v.violated for v in self.verdicts.values())

    def violated(self) -> List[str]:
        return [c for c in CONDITIONS if self.verdicts[c].violated]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "conditions": {c: self.verdicts[c].to_json() for c in CONDITIONS},
        }


def _fmt(x: Fraction) -> str:
    return format_rational(x)


def check_conditions(f: StopMap) -> ConditionReport:
    """Evaluate the realizability conditions on a finite stop map.

    Quantifiers follow the reading ``J' < z`` iff ``max J' < z`` and
    ``0 < J`` iff ``0 < min J``; empty suprema are 0 and empty infima 1.
    In a finite, strictly separated family no supremum of right endpoints
    reaches the next left endpoint, so conditions 1, 2, 3, 5 and 7 never have
    a true antecedent; they are still evaluated and come out vacuous.
    """
    ivs = f.family.intervals
    vals = f.values
    n = len(ivs)
    out: Dict[str, Verdict] = {}

    # (1) min J = sup_{J'<J} max J'  =>  F(J) = sup_{J'<J} F(J')
    hits = []
    for i in range(1, n):
        if ivs[i - 1].hi == ivs[i].lo:
            hits.append(i)
    out["1"] = _check_limit_hits(hits, ivs, vals, left=True)
    # (2) max J = inf_{J<J'} min J'  =>  F(J) = inf_{J<J'} F(J')
    hits = [i for i in range(n - 1) if ivs[i].hi == ivs[i + 1].lo]
    out["2"] = _check_limit_hits(hits, ivs, vals, left=False)
    # (3) a cut point z with no gap on either side cannot exist for finite data
    out["3"] = _vacuous("no cut point is an accumulation point of a finite family")

    # (4) across every cut with a gap, values on the left stay below values on the right
    bad = None
    for i in range(n - 1):
        if not vals[i] < vals[i + 1]:
            bad = i
            break
    if bad is None:
        out["4"] = _satisfied()
    else:
        out["4"] = _violated(
            f"at z in ({_fmt(ivs[bad].hi)},{_fmt(ivs[bad + 1].lo)}): "
            f"sup F = {_fmt(vals[bad])}, inf F = {_fmt(vals[bad + 1])}, expected <",
            J=ivs[bad], J_next=ivs[bad + 1],
        )

    right_of_0 = [(j, v) for j, v in zip(ivs, vals) if j.lo > ZERO]
    inf_min = min((j.lo for j, _ in right_of_0), default=ONE)
    inf_val = min((v for _, v in right_of_0), default=ONE)
    # (5) inf min J = 0 => inf F = 0 ; (6) inf min J > 0 => inf F > 0
    if inf_min == ZERO:
        out["5"] = _satisfied() if inf_val == ZERO else _violated(
            f"inf F = {_fmt(inf_val)}, expected 0", inf_min=inf_min, inf_F=inf_val)
    else:
        out["5"] = _vacuous("inf of left endpoints is positive")
    if inf_min > ZERO:
        out["6"] = _satisfied() if inf_val > ZERO else _violated(
            f"inf F = {_fmt(inf_val)}, expected > 0", inf_min=inf_min, inf_F=inf_val)
    else:
        out["6"] = _vacuous()

    left_of_1 = [(j, v) for j, v in zip(ivs, vals) if j.hi < ONE]
    sup_max = max((j.hi for j, _ in left_of_1), default=ZERO)
    sup_val = max((v for _, v in left_of_1), default=ZERO)
    # (7) sup max J = 1 => sup F = 1 ; (8) sup max J < 1 => sup F < 1
    if sup_max == ONE:
        out["7"] = _satisfied() if sup_val == ONE else _violated(
            f"sup F = {_fmt(sup_val)}, expected 1", sup_max=sup_max, sup_F=sup_val)
    else:
        out["7"] = _vacuous("sup of right endpoints is below 1")
    if sup_max < ONE:
        out["8"] = _satisfied() if sup_val < ONE else _violated(
            f"sup F = {_fmt(sup_val)}, expected < 1", sup_max=sup_max, sup_F=sup_val)
    else:
        out["8"] = _vacuous()

    out["E0"] = _check_endpoint(ivs, vals, ZERO)
    out["E1"] = _check_endpoint(ivs, vals, ONE)
    return ConditionReport(out)


def _check_limit_hits(hits, ivs, vals, left: bool) -> Verdict:
    if not hits:
        return _vacuous("antecedent never holds")
    for i in hits:
        other = vals[i - 1] if left else vals[i + 1]
        if vals[i] != other:
            word = "sup" if left else "inf"
            return _violated(
                f"at J={ivs[i]}: F(J) = {_fmt(vals[i])}, expected {word} F = {_fmt(other)}",
                J=ivs[i], F_J=vals[i], limit=other,
            )
    return _satisfied()


def _check_endpoint(ivs, vals, t: Fraction) -> Verdict:
    for j, v in zip(ivs, vals):
        if t in j:
            if v == t:
                return _satisfied()
            return _violated(
                f"at J={j}: F(J) = {_fmt(v)}, expected {_fmt(t)}", J=j, F_J=v)
    return _vacuous(f"no interval contains {_fmt(t)}")


# -- countable families ------------------------------------------------------


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


@dataclass(frozen=True)
class Accumulation:
    """Declared accumulation of generated intervals at ``point``.

    ``side`` says where the accumulating intervals lie relative to the point;
    ``value_limit`` is the limit of their stop values (sup from the left,
    inf from the right).
    """

    point: Fraction
    side: Side
    value_limit: Optional[Fraction] = None

    @property
    def from_left(self) -> bool:
        return self.side in (Side.LEFT, Side.BOTH)

    @property
    def from_right(self) -> bool:
        return self.side in (Side.RIGHT, Side.BOTH)


@dataclass(frozen=True)
class GeneratorStopFamily:
    """A countable stop family ``n -> generator(n)`` for ``n >= 1``.

    The index order is an enumeration, not the left-to-right order.
    ``at_zero``/``at_one`` give the index of the member containing 0 or 1, if
    any; they are needed by the lazy dyadic evaluation.
    """

    generator: Callable[[int], ClosedInterval]
    declared_accumulations: Tuple[Accumulation, ...] = ()
    at_zero: Optional[int] = None
    at_one: Optional[int] = None

    def take(self, depth: int) -> List[ClosedInterval]:
        return [self.generator(n) for n in range(1, depth + 1)]


def check_conditions_lazy(
    g: GeneratorStopFamily,
    values: Callable[[int], Fraction] | Mapping[int, Fraction],
    depth: int,
) -> ConditionReport:
    """Try to refute the realizability conditions from the first ``depth`` members.

    Every verdict is either ``VIOLATED`` with a witness or
    ``CONSISTENT_UP_TO_DEPTH``; nothing is ever certified.  Limit suprema and
    infima are taken from the declared accumulations.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    value_of = values if callable(values) else values.__getitem__
    generated = g.take(depth)
    try:
        family = make_stop_family(generated)
    except OverlapError as exc:
        raise InconsistentDeclaration(f"at depth {depth}: {exc}") from exc
    order = {j: i for i, j in enumerate(family.intervals)}
    vals = [Fraction(0)] * len(generated)
    for n, j in enumerate(generated, start=1):
        vals[order[j]] = as_rational(value_of(n))
    ivs = family.intervals
    for v in vals:
        if not ZERO <= v <= ONE:
            raise InconsistentDeclaration(f"stop value {v} outside [0, 1]")
    _check_declarations(g.declared_accumulations, ivs, vals)

    found: Dict[str, Verdict] = {}

    def refute(name: str, verdict: Verdict) -> None:
        found.setdefault(name, verdict)

    for acc in g.declared_accumulations:
        p, lim = acc.point, acc.value_limit
        if acc.from_left and lim is not None:
            for j, v in zip(ivs, vals):
                if j.lo == p and v != lim:
                    refute("1", _violated(
                        f"at J={j}: F(J) = {_fmt(v)}, declared sup F = {_fmt(lim)}",
                        J=j, F_J=v, limit=lim))
        if acc.from_right and lim is not None:
            for j, v in zip(ivs, vals):
                if j.hi == p and v != lim:
                    refute("2", _violated(
                        f"at J={j}: F(J) = {_fmt(v)}, declared inf F = {_fmt(lim)}",
                        J=j, F_J=v, limit=lim))
        if acc.from_right and p == ZERO and lim is not None and lim != ZERO:
            refute("5", _violated(
                f"declared inf F = {_fmt(lim)} at accumulation point 0, expected 0",
                point=p, limit=lim))
        if acc.from_left and p == ONE and lim is not None and lim != ONE:
            refute("7", _violated(
                f"declared sup F = {_fmt(lim)} at accumulation point 1, expected 1",
                point=p, limit=lim))

    for i in range(len(ivs) - 1):
        if not vals[i] < vals[i + 1]:
            refute("4", _violated(
                f"at z in ({_fmt(ivs[i].hi)},{_fmt(ivs[i + 1].lo)}): "
                f"sup F >= {_fmt(vals[i])}, inf F <= {_fmt(vals[i + 1])}, expected <",
                J=ivs[i], J_next=ivs[i + 1]))
            break
    # a one-sided accumulation facing a gap: the declared limit must stay
    # strictly on its side of the next generated value
    for acc in g.declared_accumulations:
        if acc.value_limit is None or acc.side is Side.BOTH:
            continue
        p, lim = acc.point, acc.value_limit
        if acc.side is Side.LEFT:
            nxt = [(j, v) for j, v in zip(ivs, vals) if j.lo > p]
            if nxt and not lim < nxt[0][1]:
                refute("4", _violated(
                    f"at z={_fmt(p)}: declared sup F = {_fmt(lim)}, "
                    f"inf F <= {_fmt(nxt[0][1])}, expected <", z=p, J=nxt[0][0]))
        else:
            prv = [(j, v) for j, v in zip(ivs, vals) if j.hi < p]
            if prv and not prv[-1][1] < lim:
                refute("4", _violated(
                    f"at z={_fmt(p)}: sup F >= {_fmt(prv[-1][1])}, "
                    f"declared inf F = {_fmt(lim)}, expected <", z=p, J=prv[-1][0]))

    accumulates_at_0 = any(a.from_right and a.point == ZERO for a in g.declared_accumulations)
    accumulates_at_1 = any(a.from_left and a.point == ONE for a in g.declared_accumulations)
    if not accumulates_at_0:
        for j, v in zip(ivs, vals):
            if j.lo > ZERO and v == ZERO:
                refute("6", _violated(
                    f"at J={j}: F(J) = 0 but no accumulation at 0 is declared",
                    J=j, F_J=v))
    if not accumulates_at_1:
        for j, v in zip(ivs, vals):
            if j.hi < ONE and v == ONE:
                refute("8", _violated(
                    f"at J={j}: F(J) = 1 but no accumulation at 1 is declared",
                    J=j, F_J=v))
    for name, t in (("E0", ZERO), ("E1", ONE)):
        verdict = _check_endpoint(ivs, vals, t)
        if verdict.violated:
            refute(name, verdict)

    consistent = Verdict(VerdictKind.CONSISTENT_UP_TO_DEPTH, depth=depth)
    return ConditionReport({c: found.get(c, consistent) for c in CONDITIONS})


def _check_declarations(
    decls: Sequence[Accumulation],
    ivs: Sequence[ClosedInterval],
    vals: Sequence[Fraction],
) -> None:
    for acc in decls:
        p, lim = acc.point, acc.value_limit
        if not ZERO <= p <= ONE:
            raise InconsistentDeclaration(f"accumulation point {p} outside [0, 1]")
        if acc.from_left and p == ZERO or acc.from_right and p == ONE:
            raise InconsistentDeclaration(f"nothing can accumulate at {p} from {acc.side.value}")
        if lim is not None and not ZERO <= lim <= ONE:
            raise InconsistentDeclaration(f"declared value limit {lim} outside [0, 1]")
        for j, v in zip(ivs, vals):
            if j.lo < p < j.hi:
                raise InconsistentDeclaration(
                    f"generated interval {j} contains accumulation point {_fmt(p)}")
            if acc.from_left and j.lo < p == j.hi or acc.from_right and j.lo == p < j.hi:
                raise InconsistentDeclaration(
                    f"generated interval {j} blocks accumulation at {_fmt(p)} "
                    f"from the {acc.side.value}")
            if lim is None:
                continue
            if acc.from_left and j.hi < p and v > lim:
                raise InconsistentDeclaration(
                    f"F({j}) = {_fmt(v)} exceeds declared sup {_fmt(lim)} at {_fmt(p)}")
            if acc.from_right and j.lo > p and v < lim:
                raise InconsistentDeclaration(
                    f"F({j}) = {_fmt(v)} is below declared inf {_fmt(lim)} at {_fmt(p)}")
