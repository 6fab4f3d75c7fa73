import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capbound.ffield import (
    CoefficientTriple,
    FieldElement,
    FieldError,
    Point,
    add,
    combine,
    inv,
    is_prime,
    mul,
    sub,
)

SMALL_PRIMES = [2, 3, 5, 7]


def F(v, q):
    return FieldElement(v, q)


def test_add_wraps():
    assert add(F(2, 3), F(2, 3)) == F(1, 3)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_mul_zero_absorbs(q):
    for x in range(q):
        assert mul(F(0, q), F(x, q)) == F(0, q)


def test_mul_example():
    # 15 = 2*7 + 1
    assert mul(F(3, 7), F(5, 7)).value == 1


def test_sub_and_negative_normalisation():
    assert sub(F(1, 5), F(3, 5)) == F(3, 5)
    assert F(-1, 5).value == 4
    assert F(12, 5) == F(2, 5)


@pytest.mark.parametrize(
    "a,q,expected",
    [(1, 3, 1), (2, 3, 2), (3, 7, 5)],
)
def test_inverse_examples(a, q, expected):
    assert inv(F(a, q)).value == expected


def test_inverse_by_exhaustion():
    # the unique residue r in 1..6 with 3r = 1 mod 7
    (r,) = [r for r in range(1, 7) if 3 * r % 7 == 1]
    assert inv(F(3, 7)).value == r


def test_inverse_of_zero_raises():
    with pytest.raises(FieldError):
        inv(F(0, 5))


def test_modulus_mismatch():
    with pytest.raises(FieldError):
        F(1, 3) + F(1, 5)


@pytest.mark.parametrize("q", [0, 1, 4, 9, 15])
def test_non_prime_modulus_rejected(q):
    with pytest.raises(FieldError):
        F(1, q)


def test_is_prime_small():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_field_axioms_exhaustive(q):
    els = [F(v, q) for v in range(q)]
    zero, one = F(0, q), F(1, q)
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert a + (-a) == zero
        for c in els:
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
    for a in els[1:]:
        assert a * a.inv() == one


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_fermat(q):
    for a in range(q):
        assert F(a, q) ** q == F(a, q)


def test_combine_examples():
    t = CoefficientTriple.of(1, 2, 0, 3)
    a = Point((1, 2), 3)
    assert combine(t, a, a) == Point((0, 0), 3)
    t = CoefficientTriple.of(1, 1, 1, 3)
    assert combine(t, Point((1, 2), 3), Point((2, 2), 3)) == Point((0, 1), 3)
    t = CoefficientTriple.of(2, 2, 1, 5)
    assert combine(t, Point((1,), 5), Point((3,), 5)) == Point((3,), 5)


def test_combine_dimension_mismatch():
    t = CoefficientTriple.of(1, 1, 1, 3)
    with pytest.raises(FieldError):
        combine(t, Point((1, 2), 3), Point((1,), 3))


def test_triple_must_sum_to_zero():
    with pytest.raises(FieldError):
        CoefficientTriple.of(1, 1, 2, 3)
    # gamma = 0 is representable
    t = CoefficientTriple.of(1, 2, 0, 3)
    assert t.gamma.value == 0


def test_triple_parse():
    assert CoefficientTriple.parse("1, 1, 1", 3).values() == (1, 1, 1)
    assert CoefficientTriple.parse("1,-1,0", 5).values() == (1, 4, 0)
    with pytest.raises(FieldError):
        CoefficientTriple.parse("1,1", 3)
    with pytest.raises(FieldError):
        CoefficientTriple.parse("a,b,c", 3)


@given(st.sampled_from(SMALL_PRIMES), st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_point_coords_canonical(q, coords):
    p = Point(tuple(coords), q)
    assert all(0 <= c < q for c in p.coords)
    assert p + p.scale(-1) == Point((0,) * len(coords), q)
