"""Counting q-power-free monomials by total degree.

A monomial in n variables is *q-power-free* when every exponent lies in
``[0, q-1]``.  ``count_monomials(q, n, d)`` is the number of such monomials of
total degree at most ``d``; ``d`` is an exact rational so thresholds such as
``(q-1)n/3`` never go through floating point.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterator, Union

DEFAULT_MAX_CUBE = 10**7

DegreeLike = Union[Fraction, int, str]


class CubeTooLarge(ValueError):
    """Raised when an operation would enumerate more than the cube cap."""


def cube_cap() -> int:
    """Enumeration cap on q**n, overridable with ``CAPBOUND_MAX_CUBE``."""
    raw = os.environ.get("CAPBOUND_MAX_CUBE")
    if raw is None:
        return DEFAULT_MAX_CUBE
    return int(raw)


def check_cube(q: int, n: int, cap: int | None = None) -> int:
    cap = cube_cap() if cap is None else cap
    size = q**n
    if size > cap:
        raise CubeTooLarge(f"q^n = {q}^{n} = {size} exceeds enumeration cap {cap}")
    return size


def to_degree(d: DegreeLike) -> Fraction:
    """Parse a degree threshold: an int, a Fraction, or a string ``"p/r"``."""
    if isinstance(d, Fraction):
        return d
    if isinstance(d, bool):
        raise TypeError("degree cannot be a bool")
    if isinstance(d, int):
        return Fraction(d)
    if isinstance(d, str):
        text = d.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational degree {d!r}") from exc
    raise TypeError(f"unsupported degree type {type(d).__name__}")


def format_degree(d: Fraction) -> str:
    return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"


def degree_floor(d: DegreeLike) -> int:
    """Largest integer total degree that is ``<= d``."""
    return math.floor(to_degree(d))


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 or e > self.q - 1 for e in exps):
            raise ValueError(f"exponents {exps} not in [0, {self.q - 1}]")
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __repr__(self) -> str:
        if not any(self.exponents):
            return "1"
        return "*".join(
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
            for i, e in enumerate(self.exponents)
            if e
        )


def reflect(m: Monomial) -> Monomial:
    """Send each exponent e to (q-1) - e; an involution on the monomials."""
    top = m.q - 1
    return Monomial(tuple(top - e for e in m.exponents), m.q)


def degree_distribution(q: int, n: int, max_degree: int | None = None) -> list[int]:
    """Coefficients of ``(1 + x + ... + x^(q-1))^n`` up to ``max_degree``.

    Entry ``k`` is the number of monomials of total degree exactly ``k``.
    """
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2 and n >= 0, got q={q}, n={n}")
    top = (q - 1) * n
    cut = top if max_degree is None else min(max_degree, top)
    if cut < 0:
        return []
    row = [1]
    for i in range(1, n + 1):
        width = min(cut, (q - 1) * i) + 1
        pre = [0, *accumulate(row)]
        last = len(row)
        # new[k] = row[k-q+1] + ... + row[k]
        row = [pre[min(k + 1, last)] - pre[max(k - q + 1, 0)] for k in range(width)]
    return row


def count_monomials(q: int, n: int, d: DegreeLike) -> int:
    """Exact number of q-power-free monomials of total degree <= d."""
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2 and n >= 0, got q={q}, n={n}")
    k = degree_floor(d)
    if k < 0:
        return 0
    if k >= (q - 1) * n:
        return q**n
    return sum(degree_distribution(q, n, k))


def count_above(q: int, n: int, d: DegreeLike) -> int:
    """Number of q-power-free monomials of total degree > d."""
    return q**n - count_monomials(q, n, d)


def count_below(q: int, n: int, d: DegreeLike) -> int:
    """Number of q-power-free monomials of total degree strictly < d."""
    d = to_degree(d)
    k = math.ceil(d) - 1
    return count_monomials(q, n, k)


def iter_monomials(q: int, n: int, d: DegreeLike) -> Iterator[Monomial]:
    k = degree_floor(d)
    if k < 0:
        return
    stack: list[int] = []

    def rec(budget: int) -> Iterator[tuple[int, ...]]:
        if len(stack) == n:
            yield tuple(stack)
            return
        for e in range(min(q - 1, budget) + 1):
            stack.append(e)
            yield from rec(budget - e)
            stack.pop()

    for exps in rec(k):
        yield Monomial(exps, q)


def enumerate_monomials(
    q: int, n: int, d: DegreeLike, cap: int | None = None
) -> list[Monomial]:
    """All q-power-free monomials of degree <= d, in lexicographic order."""
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2 and n >= 0, got q={q}, n={n}")
    check_cube(q, n, cap)
    return list(iter_monomials(q, n, d))
