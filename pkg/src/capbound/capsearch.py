"""Progression-free sets in F_q^n: verification and search.

A set A is progression-free for a coefficient triple (alpha, beta, gamma) when
``alpha*a1 + beta*a2 + gamma*a3 = 0`` has no solution in A^3 other than
``a1 == a2 == a3``.  With alpha + beta + gamma = 0 the condition is invariant
under translations and invertible linear maps of F_q^n.

The searches index the cube F_q^n lexicographically and keep sets as int
bitmasks.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .ffield import CoefficientTriple, FieldError, Point, check_prime, inv_mod
from .monomials import check_cube

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9


@dataclass(frozen=True)
class PointSet:
    """Duplicate-free, lexicographically sorted set of points of F_q^n."""

    q: int
    n: int
    points: tuple[Point, ...] = ()
    _index: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        check_prime(self.q)
        pts = []
        for p in self.points:
            p = p if isinstance(p, Point) else Point(tuple(p), self.q)
            if p.q != self.q or p.n != self.n:
                raise FieldError(f"point {p} does not live in F_{self.q}^{self.n}")
            pts.append(p)
        pts = sorted(set(pts))
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "_index", frozenset(p.coords for p in pts))

    @classmethod
    def of(cls, q: int, n: int, points: Iterable[Sequence[int] | Point]) -> PointSet:
        return cls(q, n, tuple(points))  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        if isinstance(p, Point):
            return p.q == self.q and p.coords in self._index
        return tuple(p) in self._index  # type: ignore[arg-type]

    def coords(self) -> list[tuple[int, ...]]:
        return [p.coords for p in self.points]

    def scale(self, c: int) -> PointSet:
        return PointSet(self.q, self.n, tuple(p.scale(c) for p in self.points))

    def translate(self, v: Point | Sequence[int]) -> PointSet:
        v = v if isinstance(v, Point) else Point(tuple(v), self.q)
        return PointSet(self.q, self.n, tuple(p + v for p in self.points))

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "points": [list(p.coords) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> PointSet:
        try:
            q, n, pts = int(data["q"]), int(data["n"]), data["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed set document: {exc}") from exc
        for p in pts:
            if len(p) != n or any(not isinstance(x, int) or not 0 <= x < q for x in p):
                raise ValueError(f"point {p!r} is not in F_{q}^{n}")
        return cls.of(q, n, pts)


def _require_gamma(t: CoefficientTriple) -> None:
    if t.gamma.value == 0:
        raise FieldError("gamma must be nonzero to solve for a3")


def third_point(t: CoefficientTriple, a1: Sequence[int], a2: Sequence[int]) -> tuple[int, ...]:
    """The unique a3 with alpha*a1 + beta*a2 + gamma*a3 = 0."""
    _require_gamma(t)
    q = t.q
    al, be, ga = t.values()
    g = -inv_mod(ga, q) % q
    return tuple(g * (al * x + be * y) % q for x, y in zip(a1, a2))


def is_progression_free(
    A: PointSet, t: CoefficientTriple
) -> tuple[bool, tuple[Point, Point, Point] | None]:
    """Check A against t; returns ``(ok, witness)`` with witness ``(a1, a2, a3)``."""
    _require_gamma(t)
    if t.q != A.q:
        raise FieldError(f"modulus mismatch: {t.q} vs {A.q}")
    coords = A.coords()
    for a1 in coords:
        for a2 in coords:
            if a1 == a2:
                continue
            a3 = third_point(t, a1, a2)
            if a3 in A._index:
                q = A.q
                return False, (Point(a1, q), Point(a2, q), Point(a3, q))
    return True, None


def sigma_set(A: PointSet, alpha: int, beta: int) -> PointSet:
    """{alpha*a1 + beta*a2 : a1 != a2 in A}."""
    q = A.q
    alpha, beta = int(alpha) % q, int(beta) % q
    coords = A.coords()
    out = {
        tuple((alpha * x + beta * y) % q for x, y in zip(a1, a2))
        for a1 in coords
        for a2 in coords
        if a1 != a2
    }
    return PointSet.of(q, A.n, out)


def progression_free_by_sigma(A: PointSet, t: CoefficientTriple) -> bool:
    """Equivalent criterion: sigma_set(A) is disjoint from -gamma*A."""
    S = sigma_set(A, t.alpha.value, t.beta.value)
    target = A.scale(-t.gamma.value)
    return not (S._index & target._index)


# -- search engine -----------------------------------------------------------


@dataclass
class SearchResult:
    best_size: int
    witness: PointSet
    optimal: bool
    nodes_explored: int
    seed_used: int | None = None

    def to_json(self) -> dict:
        return {
            "bestSize": self.best_size,
            "witness": self.witness.to_json(),
            "optimal": self.optimal,
            "nodesExplored": self.nodes_explored,
            "seedUsed": self.seed_used,
        }


class _Cube:
    """Lexicographic indexing of F_q^n with forbidden-point masks for a triple."""

    def __init__(self, q: int, n: int, t: CoefficientTriple):
        self.q, self.n, self.t = q, n, t
        self.size = check_cube(q, n)
        self.coords = list(itertools.product(range(q), repeat=n))
        self.weights = [q ** (n - 1 - i) for i in range(n)]
        self.full = (1 << self.size) - 1
        self._pair_cache: dict[tuple[int, int], int] = {}
        c = t.values()
        # (known position i, known position j, unknown k) placements
        self._solvers = []
        self._degenerate = []
        for i, j in itertools.permutations(range(3), 2):
            k = 3 - i - j
            if c[k]:
                ik = inv_mod(c[k], q)
                self._solvers.append(((-c[i] * ik) % q, (-c[j] * ik) % q))
            else:
                self._degenerate.append((c[i], c[j]))

    def index(self, coords: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, coords))

    def _lin(self, cu: int, u: int, cv: int, v: int) -> int:
        q = self.q
        return self.index(
            [(cu * x + cv * y) % q for x, y in zip(self.coords[u], self.coords[v])]
        )

    def pair_mask(self, p: int, s: int) -> int:
        """Points that cannot join a set already containing p and s."""
        key = (p, s) if p <= s else (s, p)
        mask = self._pair_cache.get(key)
        if mask is not None:
            return mask
        mask = 0
        for u, v in ((p, s), (s, p)):
            for cu, cv in self._solvers:
                mask |= 1 << self._lin(cu, u, cv, v)
            for ci, cj in self._degenerate:
                # a zero coefficient on the unknown: if the known part vanishes
                # every point completes a nontrivial solution
                if self._lin(ci, u, cj, v) == 0:
                    mask = self.full
        self._pair_cache[key] = mask
        return mask

    def add_point(self, chosen: Sequence[int], forbid: int, x: int) -> int:
        forbid |= 1 << x
        forbid |= self.pair_mask(x, x)
        for s in chosen:
            forbid |= self.pair_mask(x, s)
        return forbid

    def hyperplane_cosets(self) -> list[list[int]]:
        """For each hyperplane direction, the q coset masks it partitions F_q^n into."""
        q, n = self.q, self.n
        out = []
        for f in itertools.product(range(q), repeat=n):
            # normalise each functional so its first nonzero entry is 1
            lead = next((x for x in f if x), 0)
            if lead != 1:
                continue
            cosets = [0] * q
            for idx, c in enumerate(self.coords):
                cosets[sum(a * b for a, b in zip(f, c)) % q] |= 1 << idx
            out.append(cosets)
        return out

    def to_pointset(self, indices: Iterable[int]) -> PointSet:
        return PointSet.of(self.q, self.n, (self.coords[i] for i in indices))


@lru_cache(maxsize=64)
def _exact_cached(
    q: int, n: int, t: CoefficientTriple, budget: int, prune: bool, symmetry: str
) -> SearchResult:
    return _exhaustive(q, n, t, budget, prune, symmetry)


SYMMETRIES = ("translation", "affine")


def exhaustive_max(
    q: int,
    n: int,
    t: CoefficientTriple,
    node_budget: int = DEFAULT_NODE_BUDGET,
    *,
    prune: bool = True,
    symmetry: str = "affine",
) -> SearchResult:
    """Largest progression-free subset of F_q^n by depth-first search.

    Points are added in increasing lexicographic order and the zero vector is
    always present (translation invariance).  ``symmetry="translation"`` uses
    nothing else.  ``symmetry="affine"`` also uses invariance under invertible
    linear maps, in three stages:

    1. A set that does not affinely span F_q^n lies in a hyperplane, so r(n-1)
       (computed recursively, embedded in ``x_1 = 0``) is the starting
       incumbent.
    2. A spanning set can be moved so that ``H0 = {x_1 = 0}`` is a hyperplane
       meeting it in the most points, and it contains 0 and every unit vector,
       provided its section by H0 spans H0.  In lexicographic order H0 is
       decided first, after which ``|A & H0|`` caps every hyperplane section.
    3. If the section spans only a codimension-2 flat, every section has at
       most r(n-2) points; when ``q * r(n-2)`` still exceeds the incumbent the
       frame-only search (0 and unit vectors forced) settles it.

    With ``prune`` a branch is cut when even the most optimistic completion
    cannot beat the incumbent: the plain count ``|chosen| + |candidates|`` and,
    for n >= 2, the sum over the q parallel cosets of any hyperplane of
    ``min(slice cap, available)``.  ``optimal`` is false when the node budget
    runs out first; ``nodes_explored`` includes the recursive sub-searches.
    """
    _require_gamma(t)
    if t.q != q:
        raise FieldError(f"modulus mismatch: {t.q} vs {q}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if symmetry not in SYMMETRIES:
        raise ValueError(f"symmetry must be one of {SYMMETRIES}, got {symmetry!r}")
    check_cube(q, n)  # before the cache, so the cap applies to repeat calls
    return _exact_cached(q, n, t, node_budget, prune, symmetry)


class _Dfs:
    """Lexicographic include-only DFS with an incumbent shared across stages."""

    def __init__(self, cube: _Cube, budget: int, prune: bool, slice_cap: int | None):
        self.cube = cube
        self.budget = budget
        self.prune = prune
        self.slice_cap = slice_cap
        self.cosets = cube.hyperplane_cosets() if slice_cap is not None else []
        self.h0 = (1 << (cube.size // cube.q)) - 1 if cube.n else 0
        self.best: list[int] = []
        self.nodes = 0
        self.exhausted = False

    def _bound(self, chosen_mask: int, cand: int, size: int, cap: int | None) -> int:
        b = size + cand.bit_count()
        if cap is None:
            return b
        b = min(b, self.cube.q * cap)
        for cs in self.cosets:
            s = 0
            for h in cs:
                s += min(cap, (chosen_mask & h).bit_count() + (cand & h).bit_count())
                if s >= b:
                    break
            else:
                b = s
        return b

    def run(self, start: list[int], section: bool) -> bool:
        """Search supersets of ``start``; False if ``start`` is not progression-free."""
        cube = self.cube
        forbid = 0
        chosen: list[int] = []
        for x in sorted(start):
            if forbid >> x & 1:
                return False
            forbid = cube.add_point(chosen, forbid, x)
            chosen.append(x)
        mask = sum(1 << x for x in chosen)
        self._dfs(chosen, mask, forbid, cube.full & ~forbid, section)
        return True

    def _dfs(self, chosen: list[int], chosen_mask: int, forbid: int, cand: int, section: bool) -> None:
        self.nodes += 1
        best = self.best
        if len(chosen) > len(best):
            best[:] = sorted(chosen)
        if self.nodes >= self.budget:
            self.exhausted = True
            return
        size = len(chosen)
        cube = self.cube
        while cand:
            if self.prune:
                cap = self.slice_cap
                if section and cap is not None:
                    # |A & H0| bounds every hyperplane section
                    h0 = self.h0
                    cap = min(cap, (chosen_mask & h0).bit_count() + (cand & h0).bit_count())
                if self._bound(chosen_mask, cand, size, cap) <= len(best):
                    return
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            f = cube.add_point(chosen, forbid, x)
            chosen.append(x)
            self._dfs(chosen, chosen_mask | low, f, cand & ~f, section)
            chosen.pop()
            if self.exhausted:
                return


def _exhaustive(
    q: int, n: int, t: CoefficientTriple, budget: int, prune: bool, symmetry: str
) -> SearchResult:
    cube = _Cube(q, n, t)
    if n == 0:
        return SearchResult(1, cube.to_pointset([0]), True, 1)
    sub = sub2 = None
    if n >= 2 and (prune or symmetry == "affine"):
        sub = _exact_cached(q, n - 1, t, budget, prune, symmetry)
    if n >= 2 and symmetry == "affine":
        sub2 = _exact_cached(q, n - 2, t, budget, prune, symmetry)
    exact_subs = all(s is None or s.optimal for s in (sub, sub2))

    slice_cap = sub.best_size if (prune and sub is not None and sub.optimal) else None
    search = _Dfs(cube, budget, prune, slice_cap)

    if symmetry == "translation":
        search.best = [0]
        search.run([0], section=False)
    else:
        if sub is not None:
            # a set inside the hyperplane x_1 = 0 keeps its index when embedded
            search.best = sorted(cube.index((0, *c)) for c in sub.witness.coords())
        else:
            search.best = [0]
        frame = [0, *(q**i for i in range(n))]
        if search.run(frame, section=n >= 2) and n >= 2 and not search.exhausted:
            if sub2 is None or q * sub2.best_size > len(search.best):
                search.run(frame, section=False)

    optimal = not search.exhausted and exact_subs
    total = search.nodes + sum(s.nodes_explored for s in (sub, sub2) if s is not None)
    log.debug("exhaustive q=%d n=%d (%s): best %d, %d nodes", q, n, symmetry, len(search.best), total)
    return SearchResult(len(search.best), cube.to_pointset(search.best), optimal, total)


def greedy_random(
    q: int, n: int, t: CoefficientTriple, seed: int, restarts: int = 1
) -> SearchResult:
    """Best of ``restarts`` randomized greedy passes over a shuffled cube.

    Each pass adds every point that keeps the set progression-free, so each
    pass ends at a maximal (not necessarily maximum) set.  Ties on size go to
    the lexicographically least witness.
    """
    _require_gamma(t)
    if t.q != q:
        raise FieldError(f"modulus mismatch: {t.q} vs {q}")
    cube = _Cube(q, n, t)
    rng = random.Random(seed)
    best: list[int] | None = None
    nodes = 0
    order = list(range(cube.size))
    for _ in range(max(restarts, 1)):
        rng.shuffle(order)
        chosen: list[int] = []
        forbid = 0
        for x in order:
            nodes += 1
            if forbid >> x & 1:
                continue
            forbid = cube.add_point(chosen, forbid, x)
            chosen.append(x)
        chosen.sort()
        if best is None or (len(chosen), [-i for i in chosen]) > (len(best), [-i for i in best]):
            best = chosen
    assert best is not None
    return SearchResult(len(best), cube.to_pointset(best), False, nodes, seed)


def subset_enumeration_max(q: int, n: int, t: CoefficientTriple) -> int:
    """Brute force over every subset of F_q^n; only for tiny cubes."""
    size = q**n
    if size > 16:
        raise ValueError("subset enumeration limited to q^n <= 16")
    pts = list(itertools.product(range(q), repeat=n))
    best = 0
    for mask in range(1 << size):
        sub = [pts[i] for i in range(size) if mask >> i & 1]
        if len(sub) <= best:
            continue
        if is_progression_free(PointSet.of(q, n, sub), t)[0]:
            best = len(sub)
    return best
