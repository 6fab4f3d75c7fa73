"""Prime-field arithmetic and vectors in F_q^n.

Residues are plain ints held in canonical form ``0 <= v < q``.  The hot loops
elsewhere in the package work on raw ints and tuples; the classes here are the
validated public surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Modulus mismatch, non-prime modulus, or division by zero."""


@lru_cache(maxsize=None)
def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def check_prime(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q):
        raise FieldError(f"modulus must be a prime, got {q!r}")
    return q


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise FieldError("inversion of zero")
    return pow(a, q - 2, q)


@dataclass(frozen=True, order=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self) -> None:
        check_prime(self.q)
        object.__setattr__(self, "value", int(self.value) % self.q)

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.q != self.q:
                raise FieldError(f"modulus mismatch: {self.q} vs {other.q}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value + self._coerce(other), self.q)

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value - self._coerce(other), self.q)

    def __rsub__(self, other: int) -> FieldElement:
        return FieldElement(self._coerce(other) - self.value, self.q)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value * self._coerce(other), self.q)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value, self.q)

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(pow(self.value, e, self.q), self.q)

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self * FieldElement(inv_mod(self._coerce(other), self.q), self.q)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inv(self) -> FieldElement:
        return FieldElement(inv_mod(self.value, self.q), self.q)

    def __repr__(self) -> str:
        return f"F{self.q}({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


@dataclass(frozen=True, order=True)
class Point:
    """A vector in F_q^n; ``coords`` are canonical residues."""

    coords: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        check_prime(self.q)
        object.__setattr__(self, "coords", tuple(int(c) % self.q for c in self.coords))

    @classmethod
    def of(cls, coords: Iterable[int], q: int) -> Point:
        return cls(tuple(coords), q)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(c, self.q) for c in self.coords)

    def _check(self, other: Point) -> None:
        if other.q != self.q:
            raise FieldError(f"modulus mismatch: {self.q} vs {other.q}")
        if other.n != self.n:
            raise FieldError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: Point) -> Point:
        self._check(other)
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)), self.q)

    def __sub__(self, other: Point) -> Point:
        self._check(other)
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)), self.q)

    def scale(self, c: FieldElement | int) -> Point:
        c = int(c)
        return Point(tuple(c * a for a in self.coords), self.q)

    def to_list(self) -> list[int]:
        return list(self.coords)

    def __repr__(self) -> str:
        return f"Point{self.coords}"


@dataclass(frozen=True)
class CoefficientTriple:
    """Coefficients of the equation alpha*a1 + beta*a2 + gamma*a3 = 0.

    The three coefficients must sum to zero.  ``gamma == 0`` is allowed here;
    callers that need to solve for ``a3`` check it themselves.
    """

    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement

    def __post_init__(self) -> None:
        q = self.alpha.q
        if self.beta.q != q or self.gamma.q != q:
            raise FieldError("coefficients live in different fields")
        if (self.alpha + self.beta + self.gamma).value != 0:
            raise FieldError(
                f"coefficients must sum to 0 mod {q}: "
                f"{self.alpha.value}+{self.beta.value}+{self.gamma.value}"
            )

    @classmethod
    def of(cls, alpha: int, beta: int, gamma: int, q: int) -> CoefficientTriple:
        return cls(FieldElement(alpha, q), FieldElement(beta, q), FieldElement(gamma, q))

    @classmethod
    def parse(cls, text: str, q: int) -> CoefficientTriple:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise FieldError(f"expected three comma-separated coefficients, got {text!r}")
        try:
            a, b, c = (int(p) for p in parts)
        except ValueError as exc:
            raise FieldError(f"malformed coefficients {text!r}") from exc
        return cls.of(a, b, c, q)

    @property
    def q(self) -> int:
        return self.alpha.q

    def values(self) -> tuple[int, int, int]:
        return self.alpha.value, self.beta.value, self.gamma.value


def combine(t: CoefficientTriple, a: Point, b: Point) -> Point:
    """Return alpha*a + beta*b."""
    a._check(b)
    if a.q != t.q:
        raise FieldError(f"modulus mismatch: {a.q} vs {t.q}")
    al, be = t.alpha.value, t.beta.value
    return Point(tuple(al * x + be * y for x, y in zip(a.coords, b.coords)), a.q)


def as_point(coords: Sequence[int] | Point, q: int) -> Point:
    if isinstance(coords, Point):
        if coords.q != q:
            raise FieldError(f"modulus mismatch: {coords.q} vs {q}")
        return coords
    return Point(tuple(coords), q)
