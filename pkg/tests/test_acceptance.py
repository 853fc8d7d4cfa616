"""Acceptance criteria.  Each test appends one PASS/FAIL line that is printed
in the terminal summary."""
import random
import time
from fractions import Fraction

import pytest

from reparam import (
    PLReparam,
    VerdictKind,
    build_from_stopmap,
    check_conditions_lazy,
    compose,
    dyadic_assignment,
    is_regular,
    paths_equal,
    regularize,
    stop_data_of_reparam,
    stop_intervals_of_path,
    sup_distance,
)
from reparam.catalog import grandis
from reparam.construct import approximants, dyadic_run
from reparam.exactnum import is_dyadic
from reparam.testing import random_enumeration, random_path, random_stop_family, random_stop_map

from conftest import ACCEPTANCE_LINES, GOLDEN, iv

SEED = 20090630

pytestmark = pytest.mark.acceptance


def record(number: int, name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_stopmap_round_trip():
    rng = random.Random(SEED + 1)
    start = time.perf_counter()
    failures = 0
    count = 1000
    for _ in range(count):
        f = random_stop_map(rng, max_n=50, max_den=10 ** 6)
        if stop_data_of_reparam(build_from_stopmap(f)) != f:
            failures += 1
    elapsed = time.perf_counter() - start
    record(1, "stop-map round trip", failures == 0,
           f"{count} maps, {failures} mismatches, {elapsed:.1f}s")
    assert failures == 0


def test_criterion_2_stop_family_recovery():
    rng = random.Random(SEED + 2)
    start = time.perf_counter()
    count = 1000
    bad_family = bad_depth = bad_dyadic = 0
    for _ in range(count):
        delta = random_stop_family(rng, max_n=50, max_den=10 ** 6)
        enum = random_enumeration(rng, len(delta))
        phi, assignment = dyadic_run(delta, enum)
        sm = stop_data_of_reparam(phi)
        if sm.family != delta:
            bad_family += 1
        if not all(is_dyadic(v) for v in sm.values):
            bad_dyadic += 1
        # an interval with enumeration index m sits at a z of denominator <= 2^m
        for z, entry in assignment.real_entries():
            if z.denominator > 2 ** entry.index:
                bad_depth += 1
                break
        if len(assignment.real_entries()) != len(delta):
            bad_depth += 1
    elapsed = time.perf_counter() - start
    ok = bad_family == bad_depth == bad_dyadic == 0
    record(2, "stop-family recovery", ok,
           f"{count} families, {bad_family} wrong families, {bad_depth} depth-bound failures, "
           f"{bad_dyadic} non-dyadic values, {elapsed:.1f}s")
    assert ok


def test_criterion_3_cauchy_bound():
    rng = random.Random(SEED + 3)
    max_k = 12
    worst = Fraction(0)
    bound_failures = stability_failures = 0
    for _ in range(100):
        delta = random_stop_family(rng, max_n=50, max_den=10 ** 6)
        enum = random_enumeration(rng, len(delta))
        phis = approximants(delta, enum, max_k + 1)
        dense = dyadic_assignment(delta, enum, max_k).entries
        for k in range(max_k + 1):
            dist = sup_distance(phis[k], phis[k + 1])
            bound = Fraction(1, 2 ** k)
            worst = max(worst, dist / bound)
            if not dist < bound:
                bound_failures += 1
            step = 2 ** (max_k - k)
            level = dense[::step]
            assert all(z.denominator <= 2 ** k for z, _ in level)
            xs = [x for _, e in level for x in (e.lo, e.hi)]
            zs = [z for z, _ in level for _ in (0, 1)]
            if phis[k + 1].evaluate_sorted(xs) != zs or phis[k].evaluate_sorted(xs) != zs:
                stability_failures += 1
    ok = bound_failures == stability_failures == 0
    record(3, "Cauchy bound", ok,
           f"100 families x k=0..{max_k}, {bound_failures} bound failures, "
           f"{stability_failures} stability failures, max dist*2^k = {float(worst):.4f}")
    assert ok


def test_criterion_4_grandis():
    entry = grandis()
    corrected = grandis(tail_value=Fraction(1, 2))
    failures = []
    for depth in range(2, 41):
        v = check_conditions_lazy(entry.family, entry.values, depth)["1"]
        if not (v.violated and v.witness == {"J": "[1/2,3/4]", "F_J": "5/8", "limit": "1/2"}):
            failures.append(f"midpoints at depth {depth}: {v}")
        c = check_conditions_lazy(corrected.family, corrected.values, depth)["1"]
        if not (c.kind is VerdictKind.CONSISTENT_UP_TO_DEPTH and c.depth == depth):
            failures.append(f"corrected at depth {depth}: {c}")
    record(4, "Grandis counterexample", not failures,
           "condition 1 violated at J=[1/2,3/4] (5/8 vs 1/2) for N=2..40; "
           f"corrected value consistent; {len(failures)} failures")
    assert not failures, failures


def test_criterion_5_regularization():
    rng = random.Random(SEED + 5)
    start = time.perf_counter()
    count = 1000
    failures = regular_inputs = 0
    for i in range(count):
        dwell = 0.0 if i % 10 == 0 else rng.choice([0.1, 0.3, 0.5])
        p = random_path(rng, max_dim=3, max_points=100, dwell_prob=dwell)
        q, phi = regularize(p)
        ok = is_regular(q) and paths_equal(compose(q, phi), p)
        if not p.is_constant():
            ok = ok and stop_data_of_reparam(phi).family == stop_intervals_of_path(p)
        if is_regular(p):
            regular_inputs += 1
            ok = ok and q == p and phi == PLReparam.identity()
        failures += not ok
    elapsed = time.perf_counter() - start
    record(5, "regularization", failures == 0,
           f"{count} paths ({regular_inputs} regular), {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert regular_inputs > 0


GOLDEN_CASES = [
    (["validate", "stopmap_valid.json"], "validate_valid.txt", 0),
    (["validate", "stopmap_bad.json"], "validate_bad.txt", 1),
    (["build", "stopmap_valid.json"], "build_valid.json", 0),
    (["eval", "build_valid.json", "3/8", "1/8", "1/2"], "eval_valid.txt", 0),
    (["regularize", "path_dwell.json"], None, 0),
    (["check-convergence", "family_two.json", "--max-k", "3"], "convergence_two.csv", 0),
    (["validate", "--catalog", "grandis", "--depth", "20"], "validate_grandis.txt", 1),
    (["validate", "missing.json"], None, 2),
]


def test_criterion_6_cli_golden(run_cli, tmp_path):
    failures = []
    for args, expected, code in GOLDEN_CASES:
        result = run_cli(args, cwd=GOLDEN)
        if result.returncode != code:
            failures.append(f"{args}: exit {result.returncode}, expected {code}")
        if expected is not None and result.stdout != (GOLDEN / expected).read_text():
            failures.append(f"{args}: output differs from {expected}")
    q, phi = tmp_path / "q.json", tmp_path / "phi.json"
    result = run_cli(["regularize", "path_dwell.json", "--q-out", str(q), "--phi-out", str(phi)],
                     cwd=GOLDEN)
    if result.returncode != 0 or q.read_text() != (GOLDEN / "regularize_q.json").read_text() \
            or phi.read_text() != (GOLDEN / "regularize_phi.json").read_text():
        failures.append("regularize file outputs differ")
    record(6, "CLI golden files", not failures,
           f"{len(GOLDEN_CASES) + 1} invocations, {len(failures)} mismatches")
    assert not failures, failures
