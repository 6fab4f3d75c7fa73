"""Large-deviation rate for the uniform variable on {0, ..., q-1}.

For X uniform on {0, ..., q-1}, ``m_{xn} / q^n`` is the probability that the
mean of n independent copies is at most x, so it decays like
``exp(-n * I(x))`` where

    I(x) = sup_theta  theta*x - log((1 + e^theta + ... + e^((q-1)theta)) / q).

The supremum is found by solving ``mean(theta) = x`` for the tilted mean,
which is strictly increasing in theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .monomials import count_monomials

THETA_BRACKET = 60.0
MEAN_TOL = 1e-12


@dataclass(frozen=True)
class RateResult:
    q: int
    x: float
    theta_star: float
    rate: float
    c: float | None = None

    def to_json(self) -> dict:
        def enc(v: float) -> float | str:
            return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")

        return {
            "q": self.q,
            "x": self.x,
            "thetaStar": enc(round_sig(self.theta_star)),
            "rate": self.rate,
            "c": self.c,
        }


def round_sig(v: float, digits: int = 12) -> float:
    if not math.isfinite(v) or v == 0:
        return v
    return float(f"{v:.{digits}g}")


def _log_partition(q: int, theta: float) -> float:
    """log(sum_{k<q} e^(k*theta) / q), shifted by the largest exponent."""
    top = max(0.0, (q - 1) * theta)
    s = math.fsum(math.exp(k * theta - top) for k in range(q))
    return top + math.log(s) - math.log(q)


def cramer_objective(q: int, x: float, theta: float) -> float:
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return theta * x - _log_partition(q, theta)


def tilted_mean(q: int, theta: float) -> float:
    """Mean of k under weights proportional to e^(k*theta); derivative of the log-partition."""
    top = max(0.0, (q - 1) * theta)
    w = [math.exp(k * theta - top) for k in range(q)]
    return math.fsum(k * wk for k, wk in enumerate(w)) / math.fsum(w)


def tilted_variance(q: int, theta: float) -> float:
    top = max(0.0, (q - 1) * theta)
    w = [math.exp(k * theta - top) for k in range(q)]
    z = math.fsum(w)
    mu = math.fsum(k * wk for k, wk in enumerate(w)) / z
    return math.fsum((k - mu) ** 2 * wk for k, wk in enumerate(w)) / z


def solve_theta(q: int, x: float, tol: float = MEAN_TOL) -> float:
    """Root of tilted_mean(theta) = x for x strictly inside (0, q-1).

    Newton steps from the bracket midpoint; a step leaving the current
    bracket, or failing to shrink the residual, falls back to bisection.
    """
    lo, hi = -THETA_BRACKET, THETA_BRACKET
    if not tilted_mean(q, lo) < x < tilted_mean(q, hi):
        raise ValueError(f"x={x} not bracketed by theta in [{lo}, {hi}]")
    theta = 0.0
    for _ in range(400):
        f = tilted_mean(q, theta) - x
        if abs(f) <= tol:
            return theta
        if f > 0:
            hi = theta
        else:
            lo = theta
        var = tilted_variance(q, theta)
        step = theta - f / var if var > 0 else None
        if step is not None and lo < step < hi:
            theta = step
        else:
            theta = 0.5 * (lo + hi)
        if hi - lo < 1e-15 * max(1.0, abs(theta)):
            return theta
    return theta


def rate_function(q: int, x: float | Fraction) -> RateResult:
    """I(x) with the maximising theta; the endpoints give I = log q, theta = -/+ inf."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    xf = float(x)
    if not 0 <= xf <= q - 1:
        raise ValueError(f"x={x} outside [0, {q - 1}]")
    if xf == 0:
        return RateResult(q, xf, -math.inf, math.log(q))
    if xf == q - 1:
        return RateResult(q, xf, math.inf, math.log(q))
    if 2 * Fraction(x) == q - 1:
        return RateResult(q, xf, 0.0, 0.0)
    theta = solve_theta(q, xf)
    return RateResult(q, xf, theta, max(cramer_objective(q, xf, theta), 0.0))


def clp_constant(q: int) -> RateResult:
    """c(q) = q * exp(-I((q-1)/3)), the base of the exponential bound on 3*m_{(q-1)n/3}."""
    r = rate_function(q, Fraction(q - 1, 3))
    return RateResult(q, r.x, r.theta_star, r.rate, q * math.exp(-r.rate))


def log_bigint(m: int) -> float:
    """Natural log of a positive integer of any size.

    Uses the bit length and the top 64 bits as mantissa, so no float
    conversion of the full integer happens.
    """
    if m <= 0:
        raise ValueError("log of a non-positive integer")
    bits = m.bit_length()
    if bits <= 64:
        return math.log(m)
    shift = bits - 64
    return math.log(m >> shift) + shift * math.log(2)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    count: int
    exact_log: float
    limit: float
    gap: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": str(self.count),
            "exactLog": self.exact_log,
            "limit": self.limit,
            "gap": self.gap,
        }


def convergence_report(q: int, n_values: Iterable[int], max_n: int = 20000) -> list[ConvergenceRow]:
    """Compare (1/n) log(m_{(q-1)n/3} / q^n) with its limit -I((q-1)/3)."""
    rate = rate_function(q, Fraction(q - 1, 3)).rate
    rows = []
    for n in n_values:
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        if n > max_n:
            raise ValueError(f"n={n} exceeds counting budget {max_n}")
        m = count_monomials(q, n, Fraction((q - 1) * n, 3))
        exact = (log_bigint(m) - n * math.log(q)) / n
        rows.append(ConvergenceRow(n, m, exact, -rate, exact + rate))
    return rows


def report_csv(rows: Sequence[ConvergenceRow]) -> str:
    lines = ["n,exactLog,limit,gap"]
    lines += [f"{r.n},{r.exact_log!r},{r.limit!r},{r.gap!r}" for r in rows]
    return "\n".join(lines) + "\n"
