import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reparam import (
    DimensionMismatch,
    PLPath,
    PLReparam,
    build_from_stopmap,
    compose,
    compose_reparams,
    is_regular,
    paths_equal,
    regularize,
    stop_data_of_reparam,
    stop_intervals_of_path,
)
from reparam.testing import random_path, random_stop_map

from conftest import F, fam


def P(*pts):
    return PLPath.from_points([(t, list(x)) for t, x in pts])


DWELL = P((0, (0,)), ("1/4", (1,)), ("1/2", (1,)), (1, (2,)))
LINE = P((0, (0,)), (1, (1,)))
CONST = P((0, (5,)), (1, (5,)))
STEP = PLReparam(((F(0), F(0)), (F("1/4"), F("1/2")), (F("1/2"), F("1/2")), (F(1), F(1))))


def test_stop_intervals_of_path():
    assert stop_intervals_of_path(DWELL) == fam(("1/4", "1/2"))
    assert stop_intervals_of_path(LINE) == fam()
    assert stop_intervals_of_path(CONST) == fam((0, 1))
    merged = P((0, (0, 0)), ("1/5", (1, 1)), ("2/5", (1, 1)), ("3/5", (1, 1)), (1, (0, 3)))
    assert stop_intervals_of_path(merged) == fam(("1/5", "3/5"))


def test_is_regular():
    assert is_regular(LINE)
    assert not is_regular(DWELL)
    assert is_regular(CONST)
    # back-and-forth motion is not a dwell
    assert is_regular(P((0, (0,)), ("1/2", (1,)), (1, (0,))))


def test_regularize_example():
    q, phi = regularize(DWELL)
    assert phi == STEP
    assert paths_equal(q, P((0, (0,)), ("1/2", (1,)), (1, (2,))))
    # spot checks at breakpoints and one interior point per segment
    for t in ("0", "1/8", "1/4", "3/8", "1/2", "3/4", "1"):
        assert q(phi(F(t))) == DWELL(F(t))


def test_regularize_regular_and_constant():
    for p in (LINE, CONST, P((0, (0, 1)), ("1/3", (2, 2)), (1, (-1, 0)))):
        q, phi = regularize(p)
        assert q == p and phi == PLReparam.identity()


def test_compose_examples():
    q = P((0, (0,)), ("1/2", (1,)), (1, (2,)))
    assert compose(q, STEP) == DWELL
    assert compose(q, PLReparam.identity()) == q
    assert compose(CONST, STEP) == CONST


def test_paths_equal():
    assert paths_equal(DWELL, DWELL)
    extra = P((0, (0,)), ("1/8", ("1/2",)), ("1/4", (1,)), ("1/2", (1,)), (1, (2,)))
    assert paths_equal(DWELL, extra)
    assert not paths_equal(LINE, P((0, (0,)), (1, (2,))))
    with pytest.raises(DimensionMismatch):
        paths_equal(LINE, P((0, (0, 0)), (1, (1, 1))))


def test_path_validation():
    with pytest.raises(ValueError):
        P(("1/4", (0,)), (1, (1,)))
    with pytest.raises(ValueError):
        P((0, (0,)), ("1/2", (1,)), ("1/2", (2,)), (1, (3,)))
    with pytest.raises(DimensionMismatch):
        PLPath(2, ((F(0), (F(0),)), (F(1), (F(1),))))


@settings(max_examples=150)
@given(st.integers(0, 10 ** 9))
def test_regularize_properties(seed):
    p = random_path(random.Random(seed), max_points=25, dwell_prob=0.4)
    q, phi = regularize(p)
    assert is_regular(q)
    assert paths_equal(compose(q, phi), p)
    if not p.is_constant():
        assert stop_data_of_reparam(phi).family == stop_intervals_of_path(p)
    q2, phi2 = regularize(q)
    assert q2 == q and phi2 == PLReparam.identity()


@settings(max_examples=60)
@given(st.integers(0, 10 ** 9))
def test_compose_associative(seed):
    rng = random.Random(seed)
    q = random_path(rng, max_points=12)
    phi = build_from_stopmap(random_stop_map(rng, max_n=4, max_den=40))
    psi = build_from_stopmap(random_stop_map(rng, max_n=4, max_den=40))
    left = compose(compose(q, phi), psi)
    right = compose(q, compose_reparams(phi, psi))
    assert paths_equal(left, right)
    for _ in range(10):
        t = Fraction(rng.randint(0, 500), 500)
        assert left(t) == q(phi(psi(t)))
