"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""

import itertools
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from capbound.asymptotics import clp_constant, convergence_report, rate_function  # noqa: E402
from capbound.capsearch import (  # noqa: E402
    PointSet,
    exhaustive_max,
    greedy_random,
    is_progression_free,
    progression_free_by_sigma,
)
from capbound.cli import main  # noqa: E402
from capbound.ffield import CoefficientTriple  # noqa: E402
from capbound.monomials import count_above, count_below, count_monomials  # noqa: E402
from capbound.polymethod import (  # noqa: E402
    max_support_element,
    proposition_trial,
    theorem_bound,
    vanishing_space,
)
from capbound.polynomial import all_points, interpolate, support, value_table  # noqa: E402
from conftest import brute_degree_histogram, brute_progression_free  # noqa: E402

U_STAR = (math.sqrt(33) - 1) / 8


def report(num, ok, detail, started):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail}; {time.perf_counter() - started:.2f}s)"
    print(line, file=sys.__stdout__, flush=True)
    return ok


def criterion_1():
    import io
    import json
    from contextlib import redirect_stdout

    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["rate", "--q", "3", "--constant"])
    out = json.loads(buf.getvalue())["output"]
    c, theta = out["c"], out["thetaStar"]
    direct = clp_constant(3).c
    elapsed = time.perf_counter() - t0
    ok = code == 0 and 2.7550 < c < 2.756 and abs(math.exp(theta) - U_STAR) <= 1e-9 and c == direct
    ok = ok and elapsed < 1
    return report(1, ok, f"c={c:.6f}, |e^theta - (sqrt33-1)/8|={abs(math.exp(theta) - U_STAR):.1e}", t0)


def criterion_2():
    t0 = time.perf_counter()
    cases = bad = 0
    for q in (2, 3, 5, 7):
        for n in range(0, 7):
            hist = brute_degree_histogram(q, n)
            running = 0
            for d in range(-1, (q - 1) * n + 2):
                if 0 <= d < len(hist):
                    running += hist[d]
                cases += 1
                bad += count_monomials(q, n, d) != (running if d >= 0 else 0)
    ok = bad == 0 and time.perf_counter() - t0 < 60
    return report(2, ok, f"{cases} (q, n, d) cases, {bad} mismatches", t0)


def criterion_3():
    t0 = time.perf_counter()
    cases = bad = 0
    for q in (2, 3, 5):
        for n in range(0, 9):
            top = (q - 1) * n
            for d in range(-1, top + 2):
                cases += 1
                bad += count_above(q, n, d) != count_below(q, n, top - d)
    return report(3, bad == 0, f"{cases} cases, {bad} mismatches", t0)


def criterion_4():
    t0 = time.perf_counter()
    t = CoefficientTriple.of(1, 1, 1, 3)
    expected, bounds = [2, 4, 9, 20], [3, 9, 30, 45]
    got, ok = [], True
    for n in range(1, 5):
        start = time.perf_counter()
        res = exhaustive_max(3, n, t)
        got.append(res.best_size)
        ok &= res.optimal and is_progression_free(res.witness, t)[0] and len(res.witness) == res.best_size
        ok &= theorem_bound(3, n) == bounds[n - 1] and res.best_size <= bounds[n - 1]
        if n == 4:
            ok &= time.perf_counter() - start < 600
    ok &= got == expected
    return report(4, ok, f"sizes {got} vs bounds {bounds}", t0)


def criterion_5():
    t0 = time.perf_counter()
    rng = random.Random(5)
    trials = passed = 0
    for i in range(240):
        q = (3, 5)[i % 2]
        n = 1 + (i // 2) % 3
        rep = proposition_trial(q, n, rng)
        trials += 1
        passed += rep.is_diagonal and rep.rank <= rep.bound and rep.nonzero_diagonal <= rep.bound
    ok = passed == trials and time.perf_counter() - t0 < 120
    return report(5, ok, f"{passed}/{trials} trials", t0)


def criterion_6():
    t0 = time.perf_counter()
    rng = random.Random(6)
    targets = passed = 0
    while targets < 120:
        q = rng.choice([3, 5])
        n = rng.randint(1, 3)
        pts = all_points(q, n)
        target = PointSet.of(q, n, [p for p in pts if rng.random() < rng.random()])
        d = rng.randint(0, (q - 1) * n)
        V = vanishing_space(q, n, d, target)
        targets += 1
        ok = V.dim >= count_monomials(q, n, d) - q**n + len(target)
        if V.dim:
            ok &= len(support(max_support_element(V))) >= V.dim
        passed += ok
    ok = passed == targets and time.perf_counter() - t0 < 120
    return report(6, ok, f"{passed}/{targets} targets", t0)


def criterion_7():
    t0 = time.perf_counter()
    rows = convergence_report(3, [9, 99, 999])
    gaps = [abs(r.gap) for r in rows]
    limit = -rate_function(3, Fraction(2, 3)).rate
    ok = gaps[2] <= 0.01 and gaps[0] > gaps[1] > gaps[2] and all(r.limit == limit for r in rows)
    ok = ok and time.perf_counter() - t0 < 60
    return report(7, ok, "gaps " + ", ".join(f"{g:.5f}" for g in gaps), t0)


def criterion_8():
    t0 = time.perf_counter()
    tables = bad = 0
    pts = all_points(3, 1)
    for vals in itertools.product(range(3), repeat=3):
        f = dict(zip(pts, vals))
        P = interpolate(f, 3, 1)
        tables += 1
        bad += value_table(P) != f or interpolate(value_table(P), 3, 1) != P
    rng = random.Random(8)
    for _ in range(100):
        q = rng.choice([3, 5])
        n = rng.randint(1, 3)
        pts = all_points(q, n)
        f = {p: rng.randrange(q) for p in pts}
        P = interpolate(f, q, n)
        tables += 1
        bad += value_table(P) != f or interpolate(value_table(P), q, n) != P
    ok = bad == 0 and time.perf_counter() - t0 < 60
    return report(8, ok, f"{tables} tables, {bad} mismatches", t0)


def criterion_9():
    t0 = time.perf_counter()
    rng = random.Random(9)
    sets = agree = free = 0
    for _ in range(500):
        q = rng.choice([3, 5])
        n = rng.randint(1, 3)
        t = None
        while t is None or t.gamma.value == 0:
            a, b = rng.randrange(q), rng.randrange(q)
            t = CoefficientTriple.of(a, b, -(a + b), q)
        pts = all_points(q, n)
        if rng.random() < 0.5:
            # a maximal set, sometimes with one extra point, so both outcomes occur
            base = greedy_random(q, n, t, seed=rng.randrange(10**6)).witness.coords()
            A = PointSet.of(q, n, base + ([rng.choice(pts)] if rng.random() < 0.5 else []))
        else:
            A = PointSet.of(q, n, rng.sample(pts, rng.randint(0, min(len(pts), 30))))
        sets += 1
        by_sigma = progression_free_by_sigma(A, t)
        free += by_sigma
        agree += by_sigma == brute_progression_free(A.coords(), *t.values(), q) == is_progression_free(A, t)[0]
    return report(9, agree == sets, f"{agree}/{sets} sets agree, {free} progression-free", t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize(
    "criterion",
    [pytest.param(c, marks=pytest.mark.slow) if c is criterion_4 else c for c in CRITERIA],
    ids=lambda f: f.__name__,
)
def test_acceptance(criterion, capsys):
    with capsys.disabled():
        assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
