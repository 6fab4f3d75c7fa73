import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capbound.ffield import FieldError, Point
from capbound.linalg import matmul, nullspace, rank, rref
from capbound.polynomial import (
    Polynomial,
    all_points,
    evaluate,
    indicator,
    interpolate,
    multiply,
    value_table,
)


def x(i, q, n):
    return Polynomial.variable(i, q, n)


@st.composite
def polynomials(draw, q=None, n=None, max_terms=6):
    q = draw(st.sampled_from([2, 3, 5])) if q is None else q
    n = draw(st.integers(1, 3)) if n is None else n
    terms = draw(
        st.lists(
            st.tuples(st.tuples(*[st.integers(0, q - 1)] * n), st.integers(0, q - 1)),
            max_size=max_terms,
        )
    )
    return Polynomial.from_terms(terms, q, n)


def test_evaluate_examples():
    one = Polynomial.constant(1, 3, 2)
    for p in all_points(3, 2):
        assert evaluate(one, p).value == 1
    x2 = multiply(x(0, 3, 1), x(0, 3, 1))
    assert evaluate(x2, Point((2,), 3)).value == 1
    P = multiply(x(0, 3, 2), x(1, 3, 2)) + x(0, 3, 2).scale(2)
    # 1*2 + 2*1 = 4 = 1 mod 3
    assert evaluate(P, Point((1, 2), 3)).value == 1


def test_evaluate_dimension_mismatch():
    with pytest.raises(FieldError):
        evaluate(x(0, 3, 2), Point((1,), 3))
    with pytest.raises(FieldError):
        evaluate(x(0, 3, 1), Point((1,), 5))


def test_zero_polynomial_degree_and_coefficients():
    z = Polynomial(3, 2, {(1, 0): 3, (0, 1): 0})
    assert z.is_zero()
    assert z.degree == float("-inf")


def test_multiply_examples():
    P = x(0, 3, 2) + Polynomial.constant(2, 3, 2)
    assert multiply(P, Polynomial.constant(1, 3, 2)) == P
    assert multiply(P, Polynomial.zero(3, 2)).is_zero()
    x2 = Polynomial(3, 1, {(2,): 1})
    prod = multiply(x2, x2)
    assert prod == x2
    for a in range(3):
        assert evaluate(prod, (a,)) == evaluate(x2, (a,))


@settings(max_examples=60)
@given(st.data())
def test_multiply_is_pointwise_product(data):
    q = data.draw(st.sampled_from([2, 3, 5]))
    n = data.draw(st.integers(1, 2))
    P = data.draw(polynomials(q=q, n=n))
    Q = data.draw(polynomials(q=q, n=n))
    R = multiply(P, Q)
    assert all(e <= q - 1 for exps in R.coeffs for e in exps)
    for p in all_points(q, n):
        assert R(p) == P(p) * Q(p) % q


def test_indicator_univariate():
    I0 = indicator(Point((0,), 3))
    assert I0 == Polynomial(3, 1, {(0,): 1, (2,): 2})  # 1 - x^2
    assert [I0((a,)) for a in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("q,n", [(2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)])
def test_indicator_is_delta(q, n):
    pts = all_points(q, n)
    for a in pts:
        I = indicator(a)
        assert I.degree == (q - 1) * n
        for b in pts:
            assert I(b) == int(a == b)


def test_indicators_sum_to_one():
    pts = all_points(3, 2)
    total = Polynomial.zero(3, 2)
    for a in pts:
        total = total + indicator(a)
    for b in pts:
        assert total(b) == 1
    assert total == Polynomial.constant(1, 3, 2)


def test_interpolate_zero_and_indicator():
    pts = all_points(3, 2)
    assert interpolate({p: 0 for p in pts}, 3, 2).is_zero()
    a = pts[4]
    assert interpolate({p: int(p == a) for p in pts}, 3, 2) == indicator(a)


def test_interpolate_incomplete_table():
    pts = all_points(3, 2)
    with pytest.raises(ValueError):
        interpolate({p: 1 for p in pts[:-1]}, 3, 2)


def test_interpolate_random_table_round_trip(rng):
    pts = all_points(3, 2)
    for _ in range(20):
        f = {p: rng.randrange(3) for p in pts}
        P = interpolate(f, 3, 2)
        assert all(P(p) == f[p] for p in pts)


@settings(max_examples=40)
@given(polynomials())
def test_interpolate_of_value_table_is_identity(P):
    assert interpolate(value_table(P), P.q, P.n) == P


def test_json_round_trip():
    P = Polynomial(5, 2, {(1, 2): 3, (0, 0): 4})
    data = P.to_json()
    assert data == [{"exponents": [0, 0], "coeff": 4}, {"exponents": [1, 2], "coeff": 3}]
    assert Polynomial.from_json(data, 5, 2) == P


def test_coefficient_order_is_canonical():
    P = Polynomial(3, 2, {(2, 0): 1, (0, 1): 1, (1, 1): 2})
    assert list(P.coeffs) == [(0, 1), (1, 1), (2, 0)]
    assert hash(P) == hash(Polynomial(3, 2, {(1, 1): 2, (0, 1): 1, (2, 0): 1}))


# -- linear algebra mod q -------------------------------------------------------


def test_rank_examples():
    assert rank([[0, 0], [0, 0]], 3) == 0
    for k in range(1, 6):
        assert rank([[int(i == j) for j in range(k)] for i in range(k)], 5) == k
    # row2 - 2*row1 = (0, -3) = 0 mod 3
    assert rank([[1, 2], [2, 1]], 3) == 1
    assert rank([[1, 2], [2, 1]], 5) == 2


def brute_rank(M, q):
    """Rank as the largest k with a nonzero k x k minor (determinant by permutations)."""
    rows, cols = len(M), len(M[0])

    def det(sub):
        k = len(sub)
        total = 0
        for perm in itertools.permutations(range(k)):
            sign = 1
            for i in range(k):
                for j in range(i + 1, k):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = sign
            for i in range(k):
                prod *= sub[i][perm[i]]
            total += prod
        return total % q

    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                if det([[M[r][c] for c in cs] for r in rs]):
                    return k
    return 0


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_rank_matches_minors(q, data):
    r = data.draw(st.integers(1, 4))
    c = data.draw(st.integers(1, 4))
    M = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    assert rank(M, q) == brute_rank(M, q)


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_nullspace_dimension_and_kernel(q, data):
    r = data.draw(st.integers(1, 5))
    c = data.draw(st.integers(1, 5))
    M = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    N = nullspace(M, q)
    assert len(N) == c - rank(M, q)
    for v in N:
        assert all(x == 0 for x, in matmul(M, [[y] for y in v], q))
    if N:
        assert rank(N, q) == len(N)


def test_nullspace_empty_matrix():
    assert nullspace([], 3, ncols=2) == [[1, 0], [0, 1]]


def test_rref_does_not_mutate():
    M = [[2, 1], [1, 2]]
    rref(M, 3)
    assert M == [[2, 1], [1, 2]]
