import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reparam import (
    Accumulation,
    DegenerateInterval,
    GeneratorStopFamily,
    InconsistentDeclaration,
    OverlapError,
    PLReparam,
    Side,
    StopMap,
    VerdictKind,
    check_conditions,
    check_conditions_lazy,
    make_stop_family,
    stop_data_of_reparam,
)
from reparam.catalog import geometric_left, geometric_right, grandis
from reparam.stopdata import CONDITIONS
from reparam.testing import random_stop_map

from conftest import F, fam, iv

OK_KINDS = {VerdictKind.SATISFIED, VerdictKind.VACUOUS}


def test_make_stop_family_sorts():
    f = make_stop_family([iv("1/2", "3/4"), iv("1/8", "1/4")])
    assert f.intervals == (iv("1/8", "1/4"), iv("1/2", "3/4"))
    assert make_stop_family([]).intervals == ()


def test_make_stop_family_errors():
    with pytest.raises(OverlapError) as info:
        make_stop_family([iv(0, "1/2"), iv("1/2", 1)])
    assert info.value.first == iv(0, "1/2") and info.value.second == iv("1/2", 1)
    with pytest.raises(DegenerateInterval):
        make_stop_family([iv("1/3", "1/3")])


def test_check_conditions_valid():
    report = check_conditions(StopMap(fam(("1/4", "1/2")), (F("1/2"),)))
    assert report.ok
    assert {report[c].kind for c in CONDITIONS} <= OK_KINDS
    for c in ("1", "2", "3", "5", "7"):
        assert report[c].kind is VerdictKind.VACUOUS


def test_condition_8_violation():
    report = check_conditions(StopMap(fam(("1/4", "1/2")), (F(1),)))
    assert report.violated() == ["8"]
    v = report["8"]
    assert v.detail == "sup F = 1, expected < 1"
    assert v.witness["sup_max"] == "1/2"


def test_condition_6_violation():
    report = check_conditions(StopMap(fam(("1/4", "1/2")), (F(0),)))
    assert report.violated() == ["6"]


def test_endpoint_conditions():
    report = check_conditions(StopMap(fam((0, "1/2")), (F("1/4"),)))
    assert report["E0"].violated
    assert report["E0"].witness["J"] == "[0,1/2]"
    good = check_conditions(StopMap(fam((0, "1/4"), ("3/4", 1)), (F(0), F(1))))
    assert good.ok
    assert good["E0"].kind is VerdictKind.SATISFIED and good["E1"].kind is VerdictKind.SATISFIED


def test_empty_map_is_realizable():
    report = check_conditions(StopMap(fam(), ()))
    assert report.ok


def test_stop_map_invariants():
    with pytest.raises(ValueError):
        StopMap(fam(("1/8", "1/4"), ("1/2", "3/4")), (F("1/2"), F("1/2")))
    with pytest.raises(ValueError):
        StopMap(fam(("1/8", "1/4")), ())


def level_set_stops(phi: PLReparam):
    """Independent oracle: for each breakpoint height y, the preimage of y is
    an interval [min, max]; keep those of positive length."""
    bps = phi.breakpoints
    out = {}
    for y in sorted({y for _, y in bps}):
        xs = [x for x, yy in bps if yy == y]
        lo, hi = min(xs), max(xs)
        if lo < hi:
            out[(lo, hi)] = y
    return out


@pytest.mark.parametrize("bps, intervals, values", [
    ([(0, 0), ("1/4", "1/2"), ("1/2", "1/2"), (1, 1)], [("1/4", "1/2")], ["1/2"]),
    ([(0, 0), (1, 1)], [], []),
    ([(0, 0), ("1/4", "1/4"), ("1/2", "1/4"), ("3/4", "1/4"), (1, 1)], [("1/4", "3/4")], ["1/4"]),
])
def test_stop_data_of_reparam_examples(bps, intervals, values):
    phi = PLReparam(tuple((F(x), F(y)) for x, y in bps))
    sm = stop_data_of_reparam(phi)
    oracle = level_set_stops(phi)
    assert sm.family == fam(*intervals)
    assert sm.values == tuple(F(v) for v in values)
    assert {(j.lo, j.hi): v for j, v in sm.items()} == oracle


@st.composite
def reparams(draw):
    n = draw(st.integers(0, 12))
    xs = sorted(set(draw(st.lists(st.fractions(0, 1, max_denominator=64), max_size=n))) - {0, 1})
    ys = sorted(draw(st.lists(st.fractions(0, 1, max_denominator=8), min_size=len(xs),
                              max_size=len(xs))))
    return PLReparam(((Fraction(0), Fraction(0)), *zip(xs, ys), (Fraction(1), Fraction(1))))


@given(reparams())
def test_stop_data_of_any_reparam_passes_conditions(phi):
    sm = stop_data_of_reparam(phi)
    assert check_conditions(sm).ok
    assert {(j.lo, j.hi): v for j, v in sm.items()} == level_set_stops(phi)


@settings(max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_check_conditions_deterministic(seed):
    f = random_stop_map(random.Random(seed), max_n=10, max_den=100)
    assert check_conditions(f) == check_conditions(f)


# -- countable families -----------------------------------------------------


def test_grandis_violates_condition_1():
    entry = grandis()
    # midpoints of the left intervals approach 1/2
    for n in range(1, 10):
        j = entry.family.generator(n + 1)
        assert entry.values(n + 1) == Fraction(1, 2) - Fraction(7, 2 ** (n + 3)) == (j.lo + j.hi) / 2
    assert entry.values(1) == Fraction(5, 8)
    report = check_conditions_lazy(entry.family, entry.values, 20)
    v = report["1"]
    assert v.violated
    assert v.witness == {"J": "[1/2,3/4]", "F_J": "5/8", "limit": "1/2"}


@pytest.mark.parametrize("depth", [2, 3, 5, 20, 40])
def test_grandis_violated_at_every_depth(depth):
    entry = grandis()
    assert check_conditions_lazy(entry.family, entry.values, depth)["1"].violated


def test_grandis_corrected_is_consistent():
    entry = grandis(tail_value=Fraction(1, 2))
    report = check_conditions_lazy(entry.family, entry.values, 20)
    assert report["1"].kind is VerdictKind.CONSISTENT_UP_TO_DEPTH
    assert report["1"].depth == 20
    # the midpoint of [0, 1/8] is not 0, so the endpoint condition at 0 fails
    assert report.violated() == ["E0"]


def test_grandis_corrected_with_zero_start_is_fully_consistent():
    base = grandis(tail_value=Fraction(1, 2))
    values = lambda n: Fraction(0) if n == 2 else base.values(n)
    report = check_conditions_lazy(base.family, values, 20)
    assert report.ok
    assert all(report[c].kind is VerdictKind.CONSISTENT_UP_TO_DEPTH for c in CONDITIONS)


def test_lazy_overlap_is_inconsistent():
    ivs = {1: iv(0, "1/2"), 2: iv("1/4", "3/4")}
    g = GeneratorStopFamily(lambda n: ivs.get(n, iv("7/8", "15/16")))
    with pytest.raises(InconsistentDeclaration):
        check_conditions_lazy(g, lambda n: Fraction(n, 4), 2)
    check_conditions_lazy(g, lambda n: Fraction(0), 1)


def test_lazy_declaration_straddled():
    g = GeneratorStopFamily(lambda n: iv("1/4", "3/4"),
                            (Accumulation(Fraction(1, 2), Side.LEFT, Fraction(1, 2)),))
    with pytest.raises(InconsistentDeclaration):
        check_conditions_lazy(g, lambda n: Fraction(1, 2), 1)


def test_lazy_value_beyond_declared_sup():
    g = GeneratorStopFamily(lambda n: iv(Fraction(1, 2) - Fraction(1, 2 ** n),
                                         Fraction(1, 2) - Fraction(3, 2 ** (n + 2))),
                            (Accumulation(Fraction(1, 2), Side.LEFT, Fraction(1, 4)),))
    with pytest.raises(InconsistentDeclaration):
        check_conditions_lazy(g, lambda n: Fraction(1, 2) - Fraction(1, 2 ** (n + 1)), 5)


def test_lazy_order_violation():
    g = GeneratorStopFamily(lambda n: iv(Fraction(1, 2 ** (n + 1)), Fraction(3, 2 ** (n + 2))))
    report = check_conditions_lazy(g, lambda n: Fraction(1, 2 ** (n + 1)) if n != 3 else Fraction(9, 10), 4)
    assert report["4"].violated


@pytest.mark.parametrize("factory", [geometric_left, geometric_right])
def test_geometric_families_consistent(factory):
    entry = factory()
    report = check_conditions_lazy(entry.family, entry.values, 25)
    assert report.ok


def test_geometric_wrong_limit():
    entry = geometric_left()
    g = GeneratorStopFamily(entry.family.generator,
                            (Accumulation(Fraction(0), Side.RIGHT, Fraction(1, 100)),))
    values = lambda n: Fraction(1, 100) + Fraction(1, 4 ** n)
    report = check_conditions_lazy(g, values, 10)
    assert report.violated() == ["5"]


def test_rational_witnesses():
    from reparam import rational_witnesses

    assert rational_witnesses(fam(("3/10", "2/5"), ("1/2", "3/4"))) == (Fraction(1, 3), Fraction(1, 2))
    rng = random.Random(5)
    for _ in range(50):
        f = random_stop_map(rng, max_n=30, max_den=10 ** 6).family
        ws = rational_witnesses(f)
        assert all(w in j for w, j in zip(ws, f))
        assert list(ws) == sorted(set(ws))
