import itertools
import math
from fractions import Fraction

import pytest


def brute_degree_histogram(q, n):
    """Number of exponent vectors in {0..q-1}^n of each total degree, by enumeration."""
    hist = [0] * ((q - 1) * n + 1)
    for exps in itertools.product(range(q), repeat=n):
        hist[sum(exps)] += 1
    return hist


def brute_count(q, n, d):
    d = Fraction(d)
    return sum(1 for exps in itertools.product(range(q), repeat=n) if sum(exps) <= d)


def brute_progression_free(points, alpha, beta, gamma, q):
    """Triple enumeration over A^3: no solution except a1 == a2 == a3."""
    pts = [tuple(p) for p in points]
    for a1, a2, a3 in itertools.product(pts, repeat=3):
        if a1 == a2 == a3:
            continue
        if all((alpha * x + beta * y + gamma * z) % q == 0 for x, y, z in zip(a1, a2, a3)):
            return False
    return True


def brute_max_progression_free(q, n, alpha, beta, gamma):
    """Largest progression-free subset by checking every subset, largest first."""
    pts = list(itertools.product(range(q), repeat=n))
    for k in range(len(pts), 0, -1):
        for sub in itertools.combinations(pts, k):
            if brute_progression_free(sub, alpha, beta, gamma, q):
                return k
    return 0


def binary_entropy_rate(x):
    """log 2 - H(x): rate of the mean of fair coin flips, from the entropy formula."""
    if x in (0, 1):
        return math.log(2)
    return math.log(2) + x * math.log(x) + (1 - x) * math.log(1 - x)


@pytest.fixture
def rng():
    import random

    return random.Random(20161)
