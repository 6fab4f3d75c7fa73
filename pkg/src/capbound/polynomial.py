"""Reduced polynomials over F_q as functions on F_q^n.

A :class:`Polynomial` is a sparse map from exponent tuples (each exponent at
most ``q-1``) to nonzero residues.  Because ``a**q == a`` on F_q, such reduced
polynomials and functions ``F_q^n -> F_q`` are in bijection; ``evaluate`` and
``interpolate`` realise the two directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .ffield import FieldElement, FieldError, Point, check_prime
from .monomials import Monomial, check_cube

Exponents = tuple[int, ...]


def _reduce_exponent(e: int, q: int) -> int:
    # x^e with e >= q agrees with x^(e-(q-1)) at every point of F_q
    while e >= q:
        e -= q - 1
    return e


@dataclass(frozen=True)
class Polynomial:
    q: int
    n: int
    coeffs: Mapping[Exponents, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        check_prime(self.q)
        clean: dict[Exponents, int] = {}
        for exps, c in self.coeffs.items():
            exps = tuple(exps)
            if len(exps) != self.n:
                raise FieldError(f"monomial {exps} has wrong arity for n={self.n}")
            if any(e < 0 or e >= self.q for e in exps):
                raise ValueError(f"monomial {exps} is not {self.q}-power-free")
            c = int(c) % self.q
            if c:
                clean[exps] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.q, self.n, tuple(self.coeffs.items())))

    # construction helpers

    @classmethod
    def zero(cls, q: int, n: int) -> Polynomial:
        return cls(q, n, {})

    @classmethod
    def constant(cls, c: int, q: int, n: int) -> Polynomial:
        return cls(q, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, m: Monomial | Exponents, q: int, c: int = 1) -> Polynomial:
        exps = m.exponents if isinstance(m, Monomial) else tuple(m)
        return cls(q, len(exps), {exps: c})

    @classmethod
    def variable(cls, i: int, q: int, n: int) -> Polynomial:
        exps = tuple(1 if j == i else 0 for j in range(n))
        return cls(q, n, {exps: 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Exponents, int]], q: int, n: int) -> Polynomial:
        acc: dict[Exponents, int] = {}
        for exps, c in terms:
            exps = tuple(exps)
            acc[exps] = (acc.get(exps, 0) + c) % q
        return cls(q, n, acc)

    # queries

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> float | int:
        """Largest total degree; ``-inf`` for the zero polynomial."""
        if not self.coeffs:
            return float("-inf")
        return max(sum(e) for e in self.coeffs)

    def terms(self) -> Iterator[tuple[Monomial, FieldElement]]:
        for exps, c in self.coeffs.items():
            yield Monomial(exps, self.q), FieldElement(c, self.q)

    def _check(self, other: Polynomial) -> None:
        if other.q != self.q or other.n != self.n:
            raise FieldError(
                f"ambient mismatch: (q={self.q}, n={self.n}) vs (q={other.q}, n={other.n})"
            )

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        acc = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            acc[exps] = (acc.get(exps, 0) + c) % self.q
        return Polynomial(self.q, self.n, acc)

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def scale(self, c: int | FieldElement) -> Polynomial:
        c = int(c) % self.q
        return Polynomial(self.q, self.n, {e: v * c for e, v in self.coeffs.items()})

    def __call__(self, a: Point | Sequence[int]) -> int:
        return evaluate(self, a).value

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Polynomial(q={self.q}, n={self.n}, 0)"
        body = " + ".join(f"{c}*{Monomial(e, self.q)!r}" for e, c in self.coeffs.items())
        return f"Polynomial(q={self.q}, n={self.n}, {body})"

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": c} for e, c in self.coeffs.items()]

    @classmethod
    def from_json(cls, data: list[dict], q: int, n: int) -> Polynomial:
        return cls.from_terms(((tuple(t["exponents"]), int(t["coeff"])) for t in data), q, n)


def _coords(a: Point | Sequence[int], q: int, n: int) -> tuple[int, ...]:
    if isinstance(a, Point):
        if a.q != q:
            raise FieldError(f"modulus mismatch: {a.q} vs {q}")
        coords = a.coords
    else:
        coords = tuple(int(x) % q for x in a)
    if len(coords) != n:
        raise FieldError(f"dimension mismatch: point has {len(coords)} coords, n={n}")
    return coords


def eval_coords(P: Polynomial, coords: Sequence[int]) -> int:
    """Evaluate at a tuple of canonical residues; returns an int residue."""
    q = P.q
    powers = [[pow(x, e, q) for e in range(q)] for x in coords]  # 0**0 == 1
    total = 0
    for exps, c in P.coeffs.items():
        term = c
        for pw, e in zip(powers, exps):
            if e:
                term = term * pw[e] % q
                if not term:
                    break
        total += term
    return total % q


def evaluate(P: Polynomial, a: Point | Sequence[int]) -> FieldElement:
    return FieldElement(eval_coords(P, _coords(a, P.q, P.n)), P.q)


def multiply(P: Polynomial, Q: Polynomial) -> Polynomial:
    """Product of P and Q, reduced back to exponents <= q-1 via x^q = x."""
    P._check(Q)
    q = P.q
    acc: dict[Exponents, int] = {}
    for e1, c1 in P.coeffs.items():
        for e2, c2 in Q.coeffs.items():
            exps = tuple(_reduce_exponent(a + b, q) for a, b in zip(e1, e2))
            acc[exps] = (acc.get(exps, 0) + c1 * c2) % q
    return Polynomial(q, P.n, acc)


def _binomial_row(e: int, q: int) -> list[int]:
    # coefficients of (1 + x)^e mod q, e <= q-1
    row = [1]
    for _ in range(e):
        row = [((row[i] if i < len(row) else 0) + (row[i - 1] if i else 0)) % q
               for i in range(len(row) + 1)]
    return row


def indicator(a: Point) -> Polynomial:
    """prod_i (1 - (x_i - a_i)^(q-1)): equals 1 at ``a`` and 0 elsewhere."""
    q, n = a.q, a.n
    binom = _binomial_row(q - 1, q)
    factors: list[dict[int, int]] = []
    for ai in a.coords:
        # (x - ai)^(q-1) = sum_j C(q-1, j) x^j (-ai)^(q-1-j)
        f: dict[int, int] = {}
        for j in range(q):
            c = binom[j] * pow(-ai % q, q - 1 - j, q) % q
            f[j] = -c % q
        f[0] = (f[0] + 1) % q
        factors.append({j: c for j, c in f.items() if c})
    acc: dict[Exponents, int] = {}
    for combo in itertools.product(*(f.items() for f in factors)):
        c = 1
        for _, cj in combo:
            c = c * cj % q
        exps = tuple(j for j, _ in combo)
        acc[exps] = (acc.get(exps, 0) + c) % q
    return Polynomial(q, n, acc)


def all_points(q: int, n: int, cap: int | None = None) -> list[Point]:
    """Every point of F_q^n in lexicographic order."""
    check_cube(q, n, cap)
    return [Point(c, q) for c in itertools.product(range(q), repeat=n)]


def interpolate(
    values: Mapping[Point, int | FieldElement], q: int, n: int, cap: int | None = None
) -> Polynomial:
    """The unique reduced polynomial with the given value at every point."""
    check_prime(q)
    pts = all_points(q, n, cap)
    missing = [p for p in pts if p not in values]
    if missing:
        raise ValueError(f"value table incomplete: {len(missing)} points missing, e.g. {missing[0]}")
    acc: dict[Exponents, int] = {}
    for p in pts:
        v = int(values[p]) % q
        if not v:
            continue
        for exps, c in indicator(p).coeffs.items():
            acc[exps] = (acc.get(exps, 0) + v * c) % q
    return Polynomial(q, n, acc)


def value_table(P: Polynomial, cap: int | None = None) -> dict[Point, int]:
    return {p: eval_coords(P, p.coords) for p in all_points(P.q, P.n, cap)}


def support(P: Polynomial, points: Iterable[Point] | None = None) -> list[Point]:
    """Points where P is nonzero (over all of F_q^n unless ``points`` given)."""
    pts = all_points(P.q, P.n) if points is None else points
    return [p for p in pts if eval_coords(P, p.coords)]
