"""Rank argument for progression-free sets, executed on concrete instances.

For P of degree at most d, ``P(alpha*x + beta*y)`` expands into monomial pairs
``m(x) m'(y)`` with ``deg m + deg m' <= d``.  Every pair has one side of
degree at most d/2, so the matrix ``B[a, b] = P(alpha*a + beta*b)`` over a set
A is a sum of at most ``2 * m_{d/2}`` rank-one matrices.  When P vanishes on
``alpha*a + beta*b`` for distinct a, b the matrix is diagonal, which bounds
the number of a with ``P(-gamma*a) != 0``.  Choosing P of maximal support in
the space of degree-d polynomials vanishing off ``-gamma*A`` turns this into
``|A| <= 2*m_{d/2} + (q^n - m_d) <= 3*m_{(q-1)n/3}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .capsearch import PointSet, is_progression_free, sigma_set
from .ffield import CoefficientTriple, FieldElement, FieldError, Point
from .linalg import Matrix, nullspace, rank
from .monomials import (
    DegreeLike,
    count_monomials,
    enumerate_monomials,
    format_degree,
    to_degree,
)
from .polynomial import Exponents, Polynomial, _binomial_row, all_points, eval_coords


class HypothesisError(ValueError):
    """An input violates the hypothesis of the statement being checked."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


# -- bilinear expansion --------------------------------------------------------


@dataclass(frozen=True)
class BilinearExpansion:
    """Terms (m, m', c) of ``sum c * m(x) * m'(y)``."""

    q: int
    n: int
    d: Fraction
    terms: tuple[tuple[Exponents, Exponents, int], ...]

    def evaluate(self, a: Sequence[int], b: Sequence[int]) -> int:
        q = self.q
        total = 0
        for m, mp, c in self.terms:
            v = c
            for x, e in zip(a, m):
                v = v * pow(x, e, q)
            for y, e in zip(b, mp):
                v = v * pow(y, e, q)
            total += v
        return total % q

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": format_degree(self.d),
            "terms": [{"x": list(m), "y": list(mp), "coeff": c} for m, mp, c in self.terms],
        }


def compose_affine_pair(
    P: Polynomial, alpha: FieldElement | int, beta: FieldElement | int, d: DegreeLike | None = None
) -> BilinearExpansion:
    """Expand ``P(alpha*x + beta*y)`` as a sum over monomial pairs.

    Each factor ``(alpha*x_i + beta*y_i)^e`` with ``e <= q-1`` expands by the
    binomial theorem without exceeding exponent q-1 on either side, so no
    reduction is needed and every term keeps ``deg m + deg m' <= deg P``.
    """
    q, n = P.q, P.n
    al, be = int(alpha) % q, int(beta) % q
    if d is None:
        dd = Fraction(0 if P.is_zero() else P.degree)
    else:
        dd = to_degree(d)
    if not P.is_zero() and P.degree > dd:
        raise ValueError(f"degree {P.degree} exceeds d={format_degree(dd)}")
    rows = [_binomial_row(e, q) for e in range(q)]
    acc: dict[tuple[Exponents, Exponents], int] = {}
    for exps, c in P.coeffs.items():
        per_var = []
        for e in exps:
            per_var.append(
                [(j, e - j, rows[e][j] * pow(al, j, q) * pow(be, e - j, q) % q) for j in range(e + 1)]
            )
        for combo in itertools.product(*per_var):
            coef = c
            for _, _, f in combo:
                coef = coef * f % q
                if not coef:
                    break
            if not coef:
                continue
            key = (tuple(j for j, _, _ in combo), tuple(k for _, k, _ in combo))
            acc[key] = (acc.get(key, 0) + coef) % q
    terms = tuple((m, mp, c) for (m, mp), c in sorted(acc.items()) if c)
    return BilinearExpansion(q, n, dd, terms)


# -- split into rank-one pieces ------------------------------------------------


@dataclass(frozen=True)
class SplitDecomposition:
    """``sum_m m(x) F_m(y) + sum_m m(y) G_m(x)`` with every index of degree <= d/2."""

    q: int
    n: int
    d: Fraction
    x_side: dict[Exponents, Polynomial] = field(default_factory=dict)
    y_side: dict[Exponents, Polynomial] = field(default_factory=dict)

    @property
    def num_indices(self) -> int:
        return len(self.x_side) + len(self.y_side)

    def evaluate(self, a: Sequence[int], b: Sequence[int]) -> int:
        q = self.q
        total = 0
        for m, F in self.x_side.items():
            total += _mono_eval(m, a, q) * eval_coords(F, b)
        for m, G in self.y_side.items():
            total += _mono_eval(m, b, q) * eval_coords(G, a)
        return total % q

    def to_terms(self) -> list[tuple[Exponents, Exponents, int]]:
        out = []
        for m, F in self.x_side.items():
            out += [(m, mp, c) for mp, c in F.coeffs.items()]
        for mp, G in self.y_side.items():
            out += [(m, mp, c) for m, c in G.coeffs.items()]
        return sorted(out)


def _mono_eval(m: Exponents, a: Sequence[int], q: int) -> int:
    v = 1
    for x, e in zip(a, m):
        if e:
            v = v * pow(x, e, q) % q
    return v


def split_decomposition(exp: BilinearExpansion, d: DegreeLike | None = None) -> SplitDecomposition:
    """Route each term to the side whose monomial has degree <= d/2.

    A term whose x-monomial has degree <= d/2 always goes to the x side, even
    when its y-monomial qualifies too.
    """
    dd = exp.d if d is None else to_degree(d)
    half = dd / 2
    q, n = exp.q, exp.n
    xs: dict[Exponents, dict[Exponents, int]] = {}
    ys: dict[Exponents, dict[Exponents, int]] = {}
    for m, mp, c in exp.terms:
        if sum(m) <= half:
            xs.setdefault(m, {})[mp] = c
        elif sum(mp) <= half:
            ys.setdefault(mp, {})[m] = c
        else:
            raise ValueError(f"term {m} x {mp} has both degrees above d/2 = {half}")
    return SplitDecomposition(
        q,
        n,
        dd,
        {m: Polynomial(q, n, f) for m, f in sorted(xs.items())},
        {m: Polynomial(q, n, g) for m, g in sorted(ys.items())},
    )


def rank_one_sum(dec: SplitDecomposition, A: Sequence[Point]) -> Matrix:
    """Rebuild the A x A matrix from the rank-one pieces of ``dec``."""
    q = dec.q
    k = len(A)
    M = [[0] * k for _ in range(k)]
    coords = [a.coords for a in A]
    pieces = [
        ([_mono_eval(m, a, q) for a in coords], [eval_coords(F, b) for b in coords])
        for m, F in dec.x_side.items()
    ] + [
        ([eval_coords(G, a) for a in coords], [_mono_eval(m, b, q) for b in coords])
        for m, G in dec.y_side.items()
    ]
    for col, row in pieces:
        for i in range(k):
            if col[i]:
                Mi = M[i]
                for j in range(k):
                    Mi[j] += col[i] * row[j]
    return [[x % q for x in r] for r in M]


# -- the matrix B --------------------------------------------------------------


def _ordered_points(A: PointSet | Sequence[Point]) -> list[Point]:
    pts = list(A.points) if isinstance(A, PointSet) else list(A)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points in A")
    return sorted(pts)


def build_matrix(
    P: Polynomial, A: PointSet | Sequence[Point], alpha: FieldElement | int, beta: FieldElement | int
) -> Matrix:
    """``B[i][j] = P(alpha*a_i + beta*a_j)`` with A in lexicographic order."""
    q = P.q
    al, be = int(alpha) % q, int(beta) % q
    pts = _ordered_points(A)
    cache: dict[tuple[int, ...], int] = {}
    B = []
    for a in pts:
        row = []
        for b in pts:
            c = tuple((al * x + be * y) % q for x, y in zip(a.coords, b.coords))
            v = cache.get(c)
            if v is None:
                v = cache[c] = eval_coords(P, c)
            row.append(v)
        B.append(row)
    return B


# -- Proposition: diagonal matrix, small rank ----------------------------------


@dataclass(frozen=True)
class PropositionReport:
    is_diagonal: bool
    rank: int
    nonzero_diagonal: int
    bound: int
    set_size: int
    n: int
    d: Fraction
    gamma_zero: bool = False
    value_at_zero: int | None = None

    @property
    def passed(self) -> bool:
        return self.nonzero_diagonal <= self.bound and self.rank <= self.bound

    @property
    def remark_holds(self) -> bool | None:
        """For gamma = 0 and |A| > bound: does P vanish at the origin?"""
        if not self.gamma_zero or self.set_size <= self.bound:
            return None
        return self.value_at_zero == 0

    def to_json(self) -> dict:
        return {
            "kind": "proposition",
            "isDiagonal": self.is_diagonal,
            "rank": self.rank,
            "nonzeroDiagonal": self.nonzero_diagonal,
            "bound": str(self.bound),
            "setSize": self.set_size,
            "n": self.n,
            "d": format_degree(self.d),
            "gammaZero": self.gamma_zero,
            "valueAtZero": self.value_at_zero,
            "remarkHolds": self.remark_holds,
            "pass": self.passed,
        }


def check_proposition(
    P: Polynomial, A: PointSet | Sequence[Point], t: CoefficientTriple, d: DegreeLike
) -> PropositionReport:
    """Run the rank argument for P on A and report every quantity it bounds.

    P must have degree at most d and vanish at ``alpha*a + beta*b`` for all
    distinct a, b in A; a violation raises :class:`HypothesisError` carrying
    the offending pair.
    """
    dd = to_degree(d)
    q, n = P.q, P.n
    if t.q != q:
        raise FieldError(f"modulus mismatch: {t.q} vs {q}")
    if not P.is_zero() and P.degree > dd:
        raise HypothesisError(f"deg P = {P.degree} exceeds d = {format_degree(dd)}")
    pts = _ordered_points(A)
    al, be, ga = t.values()
    B = build_matrix(P, pts, al, be)
    for i, j in itertools.product(range(len(pts)), repeat=2):
        if i != j and B[i][j]:
            raise HypothesisError(
                f"P(alpha*a + beta*b) = {B[i][j]} != 0 for a={pts[i]}, b={pts[j]}",
                (pts[i], pts[j]),
            )
    nonzero = sum(1 for a in pts if eval_coords(P, [(-ga * x) % q for x in a.coords]))
    bound = 2 * count_monomials(q, n, dd / 2)
    return PropositionReport(
        is_diagonal=True,
        rank=rank(B, q),
        nonzero_diagonal=nonzero,
        bound=bound,
        set_size=len(pts),
        n=n,
        d=dd,
        gamma_zero=ga == 0,
        value_at_zero=eval_coords(P, [0] * n) if ga == 0 else None,
    )


# -- vanishing space and maximal support ---------------------------------------


@dataclass(frozen=True)
class VanishingSpace:
    """Basis of the degree-<=d polynomials that vanish outside ``target``."""

    q: int
    n: int
    d: Fraction
    monomials: tuple[Exponents, ...]
    basis: tuple[Polynomial, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i: int) -> Polynomial:
        return self.basis[i]


def vanishing_space(
    q: int, n: int, d: DegreeLike, target: PointSet, cap: int | None = None
) -> VanishingSpace:
    """Null space of the evaluation matrix of degree-<=d monomials on the complement of ``target``."""
    dd = to_degree(d)
    monos = tuple(m.exponents for m in enumerate_monomials(q, n, dd, cap))
    outside = [p.coords for p in all_points(q, n, cap) if p not in target]
    E = [[_mono_eval(m, a, q) for m in monos] for a in outside]
    null = nullspace(E, q, ncols=len(monos))
    basis = tuple(Polynomial(q, n, dict(zip(monos, v))) for v in null)
    return VanishingSpace(q, n, dd, monos, basis)


def max_support_element(V: VanishingSpace | Sequence[Polynomial], cap: int | None = None) -> Polynomial:
    """An element of V whose support no nonzero element of V avoids.

    Starting from the first basis vector, repeatedly find the elements of V
    vanishing on the current support; if there are any, add the first such
    element (which enlarges the support) and repeat.  The result has support
    of size at least dim V.
    """
    basis = list(V.basis if isinstance(V, VanishingSpace) else V)
    if not basis:
        raise ValueError("zero-dimensional space has no nonzero element")
    q, n = basis[0].q, basis[0].n
    pts = [p.coords for p in all_points(q, n, cap)]
    table = [[eval_coords(b, a) for b in basis] for a in pts]  # point -> basis values
    lam = [0] * len(basis)
    lam[0] = 1
    values = [row[0] for row in table]
    for _ in range(len(pts) + 1):
        supp = [i for i, v in enumerate(values) if v]
        W = nullspace([table[i] for i in supp], q, ncols=len(basis))
        if not W:
            break
        w = W[0]
        lam = [(x + y) % q for x, y in zip(lam, w)]
        values = [sum(c * v for c, v in zip(lam, row)) % q for row in table]
    else:  # pragma: no cover - support grows every round
        raise RuntimeError("support failed to stabilise")
    acc: dict[Exponents, int] = {}
    for c, b in zip(lam, basis):
        if c:
            for e, v in b.coeffs.items():
                acc[e] = (acc.get(e, 0) + c * v) % q
    return Polynomial(q, n, acc)


# -- the theorem ---------------------------------------------------------------


def theorem_bound(q: int, n: int) -> int:
    """3 * m_{(q-1)n/3}."""
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2 and n >= 0, got q={q}, n={n}")
    return 3 * count_monomials(q, n, Fraction((q - 1) * n, 3))


@dataclass(frozen=True)
class TheoremReport:
    set_size: int
    d_used: Fraction
    dim_lower_bound: int
    dim_v: int
    support_size: int
    half_bound: int
    rhs: int
    final_bound: int
    support_in_target: bool
    proposition: PropositionReport

    @property
    def passed(self) -> bool:
        return self.set_size <= self.rhs <= self.final_bound

    @property
    def chain_holds(self) -> bool:
        """Every intermediate inequality of the argument, not just the conclusion."""
        return (
            self.support_in_target
            and self.dim_lower_bound <= self.dim_v <= self.support_size <= self.half_bound
            and self.proposition.passed
            and self.proposition.nonzero_diagonal == self.support_size
            and self.passed
        )

    def to_json(self) -> dict:
        return {
            "kind": "theorem",
            "setSize": self.set_size,
            "dUsed": format_degree(self.d_used),
            "dimLowerBound": str(self.dim_lower_bound),
            "dimV": self.dim_v,
            "supportSize": self.support_size,
            "halfBound": str(self.half_bound),
            "rhs": str(self.rhs),
            "finalBound": str(self.final_bound),
            "supportInTarget": self.support_in_target,
            "chainHolds": self.chain_holds,
            "pass": self.passed,
        }


def verify_theorem_pipeline(A: PointSet, t: CoefficientTriple, cap: int | None = None) -> TheoremReport:
    """Execute the bound on a concrete progression-free set A.

    Uses d = 2(q-1)n/3, builds the space V of degree-<=d polynomials vanishing
    off ``-gamma*A``, takes a maximal-support element and checks every link
    ``dim V <= |support| <= 2 m_{d/2}`` and
    ``|A| <= 2 m_{d/2} + (q^n - m_d) <= 3 m_{(q-1)n/3}``.
    """
    q, n = A.q, A.n
    if t.gamma.value == 0:
        raise HypothesisError("gamma must be nonzero")
    ok, witness = is_progression_free(A, t)
    if not ok:
        raise HypothesisError(f"A is not progression-free: {witness}", witness)
    d = Fraction(2 * (q - 1) * n, 3)
    m_d = count_monomials(q, n, d)
    half = count_monomials(q, n, d / 2)
    target = A.scale(-t.gamma.value)
    V = vanishing_space(q, n, d, target, cap)
    if V.dim:
        P = max_support_element(V, cap)
    else:
        P = Polynomial.zero(q, n)
    supp = [p for p in all_points(q, n, cap) if eval_coords(P, p.coords)]
    prop = check_proposition(P, A, t, d)
    rhs = 2 * half + (q**n - m_d)
    return TheoremReport(
        set_size=len(A),
        d_used=d,
        dim_lower_bound=max(m_d - q**n + len(A), 0),
        dim_v=V.dim,
        support_size=len(supp),
        half_bound=2 * half,
        rhs=rhs,
        final_bound=theorem_bound(q, n),
        support_in_target=all(p in target for p in supp),
        proposition=prop,
    )


def proposition_polynomial(
    A: PointSet, t: CoefficientTriple, d: DegreeLike, rng, cap: int | None = None
) -> Polynomial:
    """A random degree-<=d polynomial vanishing on sigma_set(A); zero if none exists."""
    q, n = A.q, A.n
    S = sigma_set(A, t.alpha.value, t.beta.value)
    keep = PointSet.of(q, n, (p for p in all_points(q, n, cap) if p not in S))
    V = vanishing_space(q, n, d, keep, cap)
    acc = Polynomial.zero(q, n)
    for b in V.basis:
        acc = acc + b.scale(rng.randrange(q))
    return acc


def random_triple(q: int, rng, allow_gamma_zero: bool = False) -> CoefficientTriple:
    while True:
        a, b = rng.randrange(q), rng.randrange(q)
        c = (-a - b) % q
        if c or allow_gamma_zero:
            return CoefficientTriple.of(a, b, c, q)


def proposition_trial(
    q: int,
    n: int,
    rng,
    d: DegreeLike | None = None,
    t: CoefficientTriple | None = None,
    cap: int | None = None,
) -> PropositionReport:
    """One randomized run of the rank argument.

    Picks (unless given) a triple with gamma != 0 and an integer d, grows a
    random maximal progression-free set greedily, keeps a random nonempty
    subset of it as A, and samples P uniformly from the degree-<=d
    polynomials vanishing on sigma_set(A).
    """
    from .capsearch import greedy_random

    t = random_triple(q, rng) if t is None else t
    dd = Fraction(rng.randint(0, (q - 1) * n)) if d is None else to_degree(d)
    base = greedy_random(q, n, t, seed=rng.randrange(2**31)).witness
    pts = [p for p in base if rng.random() < 0.7] or [base.points[0]]
    A = PointSet(q, n, tuple(pts))
    P = proposition_polynomial(A, t, dd, rng, cap)
    return check_proposition(P, A, t, dd)
